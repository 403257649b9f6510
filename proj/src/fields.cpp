#include "linfty/fields.hpp"

#include <sstream>

#include "linfty/errors.hpp"

namespace linfty {

VectorField::VectorField(ChartPtr chart, std::vector<GradedPoly> components, Parity parity)
    : chart_(std::move(chart)), components_(std::move(components)), parity_(parity) {
  if (components_.size() != chart_->size())
    throw ChartMismatch("vector field needs one component per generator of '" + chart_->label() + "'");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (!same_chart(c.chart(), chart_))
      throw ChartMismatch("vector field component for '" + (*chart_)[i].name + "' is on the wrong chart");
    if (c.is_zero()) continue;
    const auto p = parity_of(c);
    if (!p || *p != parity_ + (*chart_)[i].parity)
      throw ParityError("component for '" + (*chart_)[i].name + "' breaks the field parity: " + c.render());
  }
}

VectorField VectorField::zero(ChartPtr chart, Parity parity) {
  std::vector<GradedPoly> comps(chart->size(), GradedPoly(chart));
  return VectorField(std::move(chart), std::move(comps), parity);
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t index) {
  std::vector<GradedPoly> comps(chart->size(), GradedPoly(chart));
  comps.at(index) = GradedPoly::constant(chart, 1);
  const Parity p = (*chart)[index].parity;
  return VectorField(std::move(chart), std::move(comps), p);
}

bool VectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

GradedPoly VectorField::operator()(const GradedPoly& f) const {
  if (!same_chart(f.chart(), chart_))
    throw ChartMismatch("apply: field on '" + chart_->label() + "', function on '" + f.chart()->label() + "'");
  GradedPoly out(chart_);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    auto d = left_derivative(f, i);
    if (!d.is_zero()) out += multiply(components_[i], d);
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (!same_chart(chart_, other.chart_)) throw ChartMismatch("vector field sum across charts");
  if (other.is_zero()) return *this;
  if (is_zero()) parity_ = other.parity_;
  if (parity_ != other.parity_) throw ParityError("sum of vector fields of different parity");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
  return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
  for (auto& comp : components_) comp *= c;
  return *this;
}

bool VectorField::operator==(const VectorField& other) const {
  if (!same_chart(chart_, other.chart_)) return false;
  if (is_zero() && other.is_zero()) return true;
  return parity_ == other.parity_ && components_ == other.components_;
}

std::string VectorField::render() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    if (any) os << "\n";
    os << "(" << components_[i].render() << ") d/d" << (*chart_)[i].name;
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a += Rational(-1) * b; }
VectorField operator*(const Rational& c, VectorField a) { return a *= c; }

GradedPoly apply(const VectorField& x, const GradedPoly& f) { return x(f); }

VectorField commutator(const VectorField& x, const VectorField& y) {
  if (!same_chart(x.chart(), y.chart())) throw ChartMismatch("commutator of fields on different charts");
  const Rational sign = koszul(x.parity(), y.parity());
  std::vector<GradedPoly> comps;
  comps.reserve(x.chart()->size());
  for (std::size_t k = 0; k < x.chart()->size(); ++k) {
    GradedPoly c = x(y.component(k));
    c -= sign * y(x.component(k));
    comps.push_back(std::move(c));
  }
  return VectorField(x.chart(), std::move(comps), x.parity() + y.parity());
}

bool is_homological(const VectorField& q) {
  if (q.parity() != Parity::odd && !q.is_zero()) return false;
  return commutator(q, q).is_zero();
}

namespace {

GradedPoly canonical_bracket(const GradedPoly& f, const GradedPoly& g, ChartKind kind, const char* what) {
  const ChartPtr& chart = f.chart();
  if (chart->kind() != kind)
    throw ChartKindError(std::string(what) + ": chart '" + chart->label() + "' has the wrong kind");
  if (!same_chart(chart, g.chart())) throw ChartMismatch(std::string(what) + ": operands on different charts");
  GradedPoly out(chart);
  for (std::size_t i = 0; i < chart->size(); ++i) {
    if (chart->parent_index(i) < 0) continue;  // i runs over coordinates, j over their momenta
    const auto j = static_cast<std::size_t>(chart->partner(i));
    const auto f_p = right_derivative(f, j);
    if (!f_p.is_zero()) {
      const auto g_x = left_derivative(g, i);
      if (!g_x.is_zero()) out += multiply(f_p, g_x);
    }
    const auto f_x = right_derivative(f, i);
    if (!f_x.is_zero()) {
      const auto g_p = left_derivative(g, j);
      if (!g_p.is_zero()) out -= Rational(koszul((*chart)[i].parity, (*chart)[j].parity)) * multiply(f_x, g_p);
    }
  }
  return out;
}

GradedPoly symbol(const VectorField& x, const ChartPtr& phase, ChartKind kind, const char* what) {
  if (phase->kind() != kind || !same_chart(phase->parent(), x.chart()))
    throw ChartKindError(std::string(what) + ": '" + phase->label() + "' is not the right cotangent of '" +
                         x.chart()->label() + "'");
  GradedPoly out(phase);
  for (std::size_t j = 0; j < x.chart()->size(); ++j) {
    if (x.component(j).is_zero()) continue;
    const auto i = phase->lifted_index(j);
    const auto momentum = GradedPoly::generator(phase, static_cast<std::size_t>(phase->partner(i)));
    out += multiply(lift_to_phase_space(x.component(j), phase), momentum);
  }
  return out;
}

}  // namespace

GradedPoly canonical_poisson(const GradedPoly& f, const GradedPoly& g) {
  return canonical_bracket(f, g, ChartKind::even_cotangent, "canonical_poisson");
}

GradedPoly canonical_schouten(const GradedPoly& f, const GradedPoly& g) {
  return canonical_bracket(f, g, ChartKind::odd_cotangent, "canonical_schouten");
}

GradedPoly even_symbol(const VectorField& x, const ChartPtr& phase) {
  return symbol(x, phase, ChartKind::even_cotangent, "even_symbol");
}

GradedPoly odd_symbol(const VectorField& x, const ChartPtr& phase) {
  return symbol(x, phase, ChartKind::odd_cotangent, "odd_symbol");
}

}  // namespace linfty
