#include "linfty/graded_poly.hpp"

#include <sstream>

#include "linfty/errors.hpp"

namespace linfty {

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exponents_) d += e;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Parity monomial_parity(const Chart& chart, const Monomial& m) {
  Parity p = Parity::even;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (chart[i].parity == Parity::odd && (m[i] & 1)) p = flip(p);
  return p;
}

MultiWeight monomial_weight(const Chart& chart, const Monomial& m) {
  MultiWeight w;
  for (std::size_t i = 0; i < m.size(); ++i) {
    w.first += chart[i].weight.first * m[i];
    w.second += chart[i].weight.second * m[i];
  }
  return w;
}

namespace {

void require_same_chart(const GradedPoly& f, const GradedPoly& g, std::string_view op) {
  if (!same_chart(f.chart(), g.chart()))
    throw ChartMismatch(std::string(op) + ": operands live on charts '" + f.chart()->label() +
                        "' and '" + g.chart()->label() + "'");
}

/// Product of normal-form monomials; returns the sign (0 when an odd generator repeats).
int multiply_monomials(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out) {
  const std::size_t n = chart.size();
  out = Monomial(n);
  int sign = 1;
  unsigned odd_a_above = 0;  // odd generators of a with index above the current one
  for (std::size_t j = n; j-- > 0;) {
    const bool odd = chart[j].parity == Parity::odd;
    if (odd) {
      if (a[j] && b[j]) return 0;
      if (b[j] && (odd_a_above & 1)) sign = -sign;
      if (a[j]) ++odd_a_above;
    }
    out.set(j, static_cast<std::uint16_t>(a[j] + b[j]));
  }
  return sign;
}

}  // namespace

GradedPoly::GradedPoly(ChartPtr chart) : chart_(std::move(chart)) {
  if (!chart_) throw Error("GradedPoly needs a chart");
}

GradedPoly GradedPoly::constant(ChartPtr chart, const Rational& c) {
  GradedPoly f(std::move(chart));
  f.add_term(Monomial(f.chart_->size()), c);
  return f;
}

GradedPoly GradedPoly::generator(ChartPtr chart, std::size_t index) {
  GradedPoly f(std::move(chart));
  if (index >= f.chart_->size()) throw UnknownGenerator("generator index out of range");
  Monomial m(f.chart_->size());
  m.set(index, 1);
  f.add_term(m, 1);
  return f;
}

GradedPoly GradedPoly::generator(ChartPtr chart, std::string_view name) {
  const auto index = chart->index_of(name);
  return generator(std::move(chart), index);
}

GradedPoly GradedPoly::monomial(ChartPtr chart, Monomial m, const Rational& c) {
  GradedPoly f(std::move(chart));
  if (m.size() != f.chart_->size()) throw ChartMismatch("monomial length does not match chart");
  for (std::size_t i = 0; i < m.size(); ++i)
    if ((*f.chart_)[i].parity == Parity::odd && m[i] > 1) return f;
  f.add_term(m, c);
  return f;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial(chart_->size())); }

GradedPoly& GradedPoly::operator+=(const GradedPoly& g) {
  require_same_chart(*this, g, "add");
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& g) {
  require_same_chart(*this, g, "subtract");
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

bool GradedPoly::operator==(const GradedPoly& g) const {
  return same_chart(chart_, g.chart_) && terms_ == g.terms_;
}

std::string GradedPoly::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(c);
    const bool unit = magnitude == 1;
    if (!unit || m.is_one()) {
      os << to_string(magnitude);
      if (!m.is_one()) os << '*';
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_factor) os << '*';
      first_factor = false;
      os << (*chart_)[i].name;
      if (m[i] > 1) os << '^' << m[i];
    }
  }
  return os.str();
}

GradedPoly operator+(GradedPoly f, const GradedPoly& g) { return f += g; }
GradedPoly operator-(GradedPoly f, const GradedPoly& g) { return f -= g; }
GradedPoly operator-(GradedPoly f) { return f *= Rational(-1); }
GradedPoly operator*(const Rational& c, GradedPoly f) { return f *= c; }
GradedPoly operator*(const GradedPoly& f, const GradedPoly& g) { return multiply(f, g); }

std::ostream& operator<<(std::ostream& os, const GradedPoly& f) { return os << f.render(); }

GradedPoly multiply(const GradedPoly& f, const GradedPoly& g) {
  require_same_chart(f, g, "multiply");
  GradedPoly out(f.chart());
  const Chart& chart = *f.chart();
  Monomial m;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      const int sign = multiply_monomials(chart, a, b, m);
      if (sign == 0) continue;
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(m, c);
    }
  }
  return out;
}

std::optional<Parity> parity_of(const GradedPoly& f) {
  std::optional<Parity> p;
  for (const auto& [m, c] : f.terms()) {
    const Parity q = monomial_parity(*f.chart(), m);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p.value_or(Parity::even);
}

std::optional<MultiWeight> weight_of(const GradedPoly& f) {
  std::optional<MultiWeight> w;
  for (const auto& [m, c] : f.terms()) {
    const MultiWeight v = monomial_weight(*f.chart(), m);
    if (w && *w != v) return std::nullopt;
    w = v;
  }
  return w.value_or(MultiWeight{});
}

Parity require_parity(const GradedPoly& f, std::string_view what) {
  if (auto p = parity_of(f)) return *p;
  throw ParityError(std::string(what) + " is not parity-homogeneous: " + f.render());
}

namespace {

GradedPoly derivative(const GradedPoly& f, std::size_t index, bool from_left) {
  const Chart& chart = *f.chart();
  if (index >= chart.size()) throw UnknownGenerator("derivative: generator index out of range");
  GradedPoly out(f.chart());
  const bool odd = chart[index].parity == Parity::odd;
  for (const auto& [m, c] : f.terms()) {
    const auto e = m[index];
    if (e == 0) continue;
    Rational coeff = c;
    if (odd) {
      // Count the odd generators the derivative has to jump over.
      unsigned passed = 0;
      if (from_left) {
        for (std::size_t i = 0; i < index; ++i)
          if (chart[i].parity == Parity::odd && m[i]) ++passed;
      } else {
        for (std::size_t i = index + 1; i < chart.size(); ++i)
          if (chart[i].parity == Parity::odd && m[i]) ++passed;
      }
      if (passed & 1) coeff = -coeff;
    } else {
      coeff *= e;
    }
    Monomial reduced = m;
    reduced.set(index, static_cast<std::uint16_t>(e - 1));
    out.add_term(reduced, coeff);
  }
  return out;
}

}  // namespace

GradedPoly left_derivative(const GradedPoly& f, std::size_t index) { return derivative(f, index, true); }

GradedPoly left_derivative(const GradedPoly& f, std::string_view name) {
  return derivative(f, f.chart()->index_of(name), true);
}

GradedPoly right_derivative(const GradedPoly& f, std::size_t index) { return derivative(f, index, false); }

GradedPoly substitute(const GradedPoly& f, const SubstitutionMap& images, const ChartPtr& target) {
  const Chart& source = *f.chart();
  if (images.size() != source.size())
    throw ChartMismatch("substitute: map does not cover chart '" + source.label() + "'");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) continue;
    if (!same_chart(images[i]->chart(), target))
      throw ChartMismatch("substitute: image of '" + source[i].name + "' is not on chart '" +
                          target->label() + "'");
    if (images[i]->is_zero()) continue;
    const auto p = parity_of(*images[i]);
    if (!p || *p != source[i].parity)
      throw ParityError("substitute: image of '" + source[i].name + "' has the wrong parity");
  }
  // powers[i][e] = image_i^e, grown on demand.
  std::vector<std::vector<GradedPoly>> powers(source.size());
  auto power = [&](std::size_t i, std::uint16_t e) -> const GradedPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(GradedPoly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(multiply(cache.back(), *images[i]));
    return cache[e];
  };
  GradedPoly out(target);
  for (const auto& [m, c] : f.terms()) {
    GradedPoly term = GradedPoly::constant(target, c);
    for (std::size_t i = 0; i < m.size() && !term.is_zero(); ++i) {
      if (m[i] == 0) continue;
      if (!images[i])
        throw UnknownGenerator("substitute: no image for generator '" + source[i].name + "'");
      term = multiply(term, power(i, m[i]));
    }
    out += term;
  }
  return out;
}

GradedPoly drop_generators(const GradedPoly& f, std::span<const std::size_t> killed) {
  GradedPoly out(f.chart());
  for (const auto& [m, c] : f.terms()) {
    bool survives = true;
    for (auto i : killed) survives = survives && m[i] == 0;
    if (survives) out.add_term(m, c);
  }
  return out;
}

}  // namespace linfty
