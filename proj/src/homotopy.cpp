#include "linfty/homotopy.hpp"

#include <sstream>

#include "linfty/errors.hpp"
#include "linfty/random_poly.hpp"

namespace linfty {

namespace {

std::size_t find_role(const Chart& c, Role role, std::size_t index) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].role == role && static_cast<std::size_t>(c[i].index) == index) return i;
  throw UnknownGenerator("chart '" + c.label() + "' has no coordinate for this role/index");
}

Rational sign(int exponent) { return (exponent % 2 == 0) ? Rational(1) : Rational(-1); }

const BundlePresentation& presentation(const Algebroid& a) { return a.bundle.presentation(); }

/// Sends the base coordinates of PiE to those of `target`.
GradedPoly base_function_to(const GradedPoly& f, const ChartPtr& target) {
  const auto& src = f.chart();
  SubstitutionMap m(src->size());
  for (std::size_t i = 0; i < src->size(); ++i)
    if ((*src)[i].role == Role::base)
      m[i] = GradedPoly::generator(target, find_role(*target, Role::base, static_cast<std::size_t>((*src)[i].index)));
  return substitute(f, m, target);
}

std::vector<GradedPoly> lift_all(std::span<const GradedPoly> xs, const ChartPtr& phase) {
  std::vector<GradedPoly> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(lift_to_phase_space(x, phase));
  return out;
}

int alpha_sum(const BundlePresentation& b, std::span<const std::size_t> tuple) {
  int s = 0;
  for (auto a : tuple) s += bit(b.fibre[a]);
  return s;
}

void require_point_base(const Algebroid& a, const char* what) {
  if (a.bundle.base_dim() != 0)
    throw Error(std::string(what) + " needs an algebra (no base coordinates); '" + a.name + "' has a base");
}

}  // namespace

VectorFieldAmbient::VectorFieldAmbient(ChartPtr c) : chart(std::move(c)) {
  if (!chart->indices_with_role(Role::base).empty())
    throw ChartKindError("the vector-field derived bracket needs a chart without base coordinates");
}

VectorField VectorFieldAmbient::project(const VectorField& a) const {
  std::vector<GradedPoly> comps;
  comps.reserve(chart->size());
  for (const auto& c : a.components()) comps.push_back(GradedPoly::constant(chart, c.constant_term()));
  return VectorField(chart, std::move(comps), a.parity());
}

SchoutenEngine schouten_engine(GradedPoly s) {
  auto phase = s.chart();
  if (phase->kind() != ChartKind::even_cotangent)
    throw ChartKindError("a Schouten engine needs a function on an even cotangent chart");
  return SchoutenEngine(PoissonAmbient{phase}, std::move(s));
}

SchoutenEngine schouten_engine(const HigherStructure& s) {
  if (s.flavor() != Flavor::schouten) throw Error("expected a higher Schouten structure");
  return schouten_engine(s.value());
}

PoissonEngine poisson_engine(GradedPoly p) {
  auto phase = p.chart();
  if (phase->kind() != ChartKind::odd_cotangent)
    throw ChartKindError("a Poisson engine needs a function on an odd cotangent chart");
  return PoissonEngine(SchoutenAmbient{phase}, std::move(p));
}

PoissonEngine poisson_engine(const HigherStructure& p) {
  if (p.flavor() != Flavor::poisson) throw Error("expected a higher Poisson structure");
  return poisson_engine(p.value());
}

QEngine q_engine(const VectorField& q) { return QEngine(VectorFieldAmbient(q.chart()), q); }

GradedPoly higher_schouten_bracket(const SchoutenEngine& e, std::span<const GradedPoly> xs) {
  const auto& phase = e.ambient().phase;
  auto lifted = lift_all(xs, phase);
  return restrict_to_zero_section(e.bracket(lifted));
}

GradedPoly higher_schouten_bracket(const HigherStructure& s, std::span<const GradedPoly> xs) {
  return higher_schouten_bracket(schouten_engine(s), xs);
}

int higher_poisson_sign(std::span<const GradedPoly> fs) {
  const std::size_t r = fs.size();
  int eps = static_cast<int>(r);
  for (std::size_t i = 0; i + 1 < r; ++i)
    eps += bit(require_parity(fs[i], "higher Poisson argument")) * static_cast<int>(r - 1 - i);
  return eps % 2 == 0 ? 1 : -1;
}

GradedPoly higher_poisson_bracket(const PoissonEngine& e, std::span<const GradedPoly> fs) {
  const auto& phase = e.ambient().phase;
  auto lifted = lift_all(fs, phase);
  return Rational(higher_poisson_sign(fs)) * restrict_to_zero_section(e.bracket(lifted));
}

GradedPoly higher_poisson_bracket(const HigherStructure& p, std::span<const GradedPoly> fs) {
  return higher_poisson_bracket(poisson_engine(p), fs);
}

LeibnizReport leibniz_check(const MultiBracket& bracket, LeibnizRule rule, const ChartPtr& chart, std::size_t r,
                            std::size_t trials, std::uint64_t seed) {
  LeibnizReport report;
  report.arity = r;
  if (r == 0) throw Error("the Leibniz rule needs at least one argument");
  Rng rng(seed);
  RandomPolyOptions opt{2, 3, 3};
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<GradedPoly> args;
    std::vector<Parity> par;
    for (std::size_t i = 0; i <= r; ++i) {
      par.push_back(rng.coin() ? Parity::odd : Parity::even);
      args.push_back(random_homogeneous_poly(chart, par.back(), rng, opt));
    }
    const GradedPoly b = args.back();
    args.pop_back();
    const GradedPoly ar = args.back();

    std::vector<GradedPoly> with_product = args;
    with_product.back() = ar * b;
    std::vector<GradedPoly> with_b = args;
    with_b.back() = b;

    int exponent = rule == LeibnizRule::schouten ? 1 : static_cast<int>(r);
    for (std::size_t i = 0; i + 1 < r; ++i) exponent += bit(par[i]);
    exponent *= bit(par[r - 1]);

    const GradedPoly lhs = bracket(with_product);
    const GradedPoly rhs = bracket(args) * b + sign(exponent) * (ar * bracket(with_b));
    ++report.trials;
    if (lhs != rhs) {
      std::ostringstream os;
      os << "arguments:";
      for (const auto& a : args) os << " [" << a.render() << "]";
      os << " b = [" << b.render() << "]; lhs - rhs = " << (lhs - rhs).render();
      report.witness = os.str();
      break;
    }
  }
  return report;
}

GradedPoly structure_tensor(const VectorField& q, std::size_t target, std::span<const std::size_t> fibre) {
  const auto& c = q.chart();
  GradedPoly f = q.component(target);
  for (std::size_t k = fibre.size(); k-- > 0 && !f.is_zero();)
    f = left_derivative(f, find_role(*c, Role::fibre, fibre[k]));
  const auto all_fibre = c->indices_with_role(Role::fibre);
  return drop_generators(f, all_fibre);
}

GradedPoly symmetric_bracket(const Algebroid& a, std::span<const std::size_t> tuple) {
  const auto& target = a.bundle.pi_e_dual();
  GradedPoly out(target);
  const Rational s = sign(alpha_sum(presentation(a), tuple));
  for (std::size_t beta = 0; beta < a.bundle.rank(); ++beta) {
    auto coeff = structure_tensor(a.q, find_role(*a.q.chart(), Role::fibre, beta), tuple);
    if (coeff.is_zero()) continue;
    out += s * (base_function_to(coeff, target) *
                GradedPoly::generator(target, find_role(*target, Role::fibre, beta)));
  }
  return out;
}

namespace {

/// eta_b -> e_b, x -> x.
GradedPoly shift_to_e(const Algebroid& a, const GradedPoly& f) {
  const auto& src = a.bundle.pi_e_dual();
  const auto& dst = a.bundle.e_dual();
  // The parity shift: linear pieces c(x) eta_b go to c(x) e_b. Only this shape
  // occurs in bracket values, so the term-wise rename is exact.
  GradedPoly out(dst);
  for (const auto& [mono, coeff] : f.terms()) {
    Monomial moved(dst->size());
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i]) moved.set(find_role(*dst, (*src)[i].role, static_cast<std::size_t>((*src)[i].index)), mono[i]);
    out.add_term(moved, coeff);
  }
  return out;
}

}  // namespace

GradedPoly skew_bracket(const Algebroid& a, std::span<const std::size_t> tuple) {
  const std::size_t r = tuple.size();
  int eps = 1;
  for (std::size_t i = 0; i < r; ++i) eps += bit(presentation(a).fibre[tuple[i]]) * static_cast<int>(r - 1 - i);
  return sign(eps) * shift_to_e(a, symmetric_bracket(a, tuple));
}

GradedPoly skew_bracket_formula(const Algebroid& a, std::span<const std::size_t> tuple) {
  const std::size_t r = tuple.size();
  const auto& target = a.bundle.e_dual();
  int eps = 1;
  for (std::size_t i = 0; i < r; ++i) eps += bit(presentation(a).fibre[tuple[i]]) * static_cast<int>(r - i);
  GradedPoly out(target);
  for (std::size_t beta = 0; beta < a.bundle.rank(); ++beta) {
    auto coeff = structure_tensor(a.q, find_role(*a.q.chart(), Role::fibre, beta), tuple);
    if (coeff.is_zero()) continue;
    out += sign(eps) * (base_function_to(coeff, target) *
                        GradedPoly::generator(target, find_role(*target, Role::fibre, beta)));
  }
  return out;
}

std::vector<std::vector<std::size_t>> sorted_tuples(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r == 0) {
    out.emplace_back();
    return out;
  }
  if (n == 0) return out;
  std::vector<std::size_t> t(r, 0);
  while (true) {
    out.push_back(t);
    std::size_t k = r;
    while (k > 0 && t[k - 1] == n - 1) --k;
    if (k == 0) break;
    ++t[k - 1];
    for (std::size_t j = k; j < r; ++j) t[j] = t[k - 1];
  }
  return out;
}

namespace {

BracketTable make_table(BracketTable::Convention conv, std::size_t r, std::size_t rank,
                        const std::function<GradedPoly(std::span<const std::size_t>)>& value) {
  BracketTable t;
  t.convention = conv;
  t.arity = r;
  t.parity = conv == BracketTable::Convention::symmetric ? Parity::odd : parity_from_int(static_cast<long>(r));
  t.weight = 1 - static_cast<int>(r);
  for (const auto& tuple : sorted_tuples(rank, r)) {
    auto v = value(tuple);
    if (!v.is_zero()) t.entries.emplace(tuple, std::move(v));
  }
  return t;
}

std::vector<GradedPoly> fibre_generators(const ChartPtr& c, std::span<const std::size_t> tuple) {
  std::vector<GradedPoly> out;
  for (auto a : tuple) out.push_back(GradedPoly::generator(c, find_role(*c, Role::fibre, a)));
  return out;
}

}  // namespace

BracketTable symmetric_bracket_table(const Algebroid& a, std::size_t r) {
  return make_table(BracketTable::Convention::symmetric, r, a.bundle.rank(),
                    [&](std::span<const std::size_t> t) { return symmetric_bracket(a, t); });
}

BracketTable skew_bracket_table(const Algebroid& a, std::size_t r) {
  return make_table(BracketTable::Convention::skew, r, a.bundle.rank(),
                    [&](std::span<const std::size_t> t) { return skew_bracket(a, t); });
}

BracketTable derived_schouten_table(const Algebroid& a, const HigherStructure& s, std::size_t r) {
  const auto engine = schouten_engine(s);
  return make_table(BracketTable::Convention::symmetric, r, a.bundle.rank(), [&](std::span<const std::size_t> t) {
    auto args = fibre_generators(a.bundle.pi_e_dual(), t);
    return higher_schouten_bracket(engine, args);
  });
}

BracketTable derived_poisson_table(const Algebroid& a, const HigherStructure& p, std::size_t r) {
  const auto engine = poisson_engine(p);
  return make_table(BracketTable::Convention::skew, r, a.bundle.rank(), [&](std::span<const std::size_t> t) {
    auto args = fibre_generators(a.bundle.e_dual(), t);
    return higher_poisson_bracket(engine, args);
  });
}

std::string BracketTable::render() const {
  std::ostringstream os;
  const bool sym = convention == Convention::symmetric;
  os << "arity " << arity << ", " << (sym ? "symmetric" : "skew") << ", parity " << to_string(parity)
     << ", weight " << weight << "\n";
  if (entries.empty()) os << "  (all brackets vanish)\n";
  for (const auto& [tuple, value] : entries) {
    os << "  " << (sym ? "(" : "{");
    for (std::size_t i = 0; i < tuple.size(); ++i)
      os << (i ? ", " : "") << (sym ? "eta" : "e") << tuple[i] + 1;
    os << (sym ? ")" : "}") << " = " << value.render() << "\n";
  }
  return os.str();
}

GradedPoly higher_anchor(const Algebroid& a, std::span<const std::size_t> tuple, const GradedPoly& f) {
  const auto& c = a.q.chart();
  if (!same_chart(f.chart(), c)) throw ChartMismatch("higher_anchor: f must be a function on PiE");
  VectorField x = a.q;
  for (auto alpha : tuple) x = commutator(x, VectorField::coordinate(c, find_role(*c, Role::fibre, alpha)));
  return drop_generators(x(f), c->indices_with_role(Role::fibre));
}

namespace {

/// Shared driver of the two closed forms: sum over all index tuples of
/// sign * Q^b_{ar..a1} y_b * dX1/dy_a1 ... dXr/dy_ar on `chart`.
GradedPoly closed_form(const Algebroid& a, std::span<const GradedPoly> xs, const ChartPtr& chart,
                       const std::function<int(std::span<const std::size_t>)>& eps) {
  require_point_base(a, "the closed-form bracket");
  const std::size_t r = xs.size(), n = a.bundle.rank();
  for (const auto& x : xs)
    if (!same_chart(x.chart(), chart)) throw ChartMismatch("closed-form bracket: argument on the wrong chart");
  GradedPoly out(chart);
  std::vector<std::size_t> idx(r, 0);
  std::vector<std::size_t> reversed(r);
  while (true) {
    GradedPoly prod = GradedPoly::constant(chart, 1);
    for (std::size_t i = 0; i < r && !prod.is_zero(); ++i)
      prod = prod * left_derivative(xs[i], find_role(*chart, Role::fibre, idx[i]));
    if (!prod.is_zero()) {
      for (std::size_t i = 0; i < r; ++i) reversed[i] = idx[r - 1 - i];
      GradedPoly lin(chart);
      for (std::size_t beta = 0; beta < n; ++beta) {
        const Rational c =
            structure_tensor(a.q, find_role(*a.q.chart(), Role::fibre, beta), reversed).constant_term();
        if (c != 0) lin += c * GradedPoly::generator(chart, find_role(*chart, Role::fibre, beta));
      }
      if (!lin.is_zero()) out += sign(eps(idx)) * (lin * prod);
    }
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == n - 1) idx[--k] = 0;
    if (k == 0) break;
    ++idx[k - 1];
  }
  return out;
}

}  // namespace

GradedPoly lie_schouten_formula(const Algebroid& a, std::span<const GradedPoly> xs) {
  const auto& fib = presentation(a).fibre;
  std::vector<int> px;
  for (const auto& x : xs) px.push_back(bit(require_parity(x, "Lie-Schouten argument")));
  const int r = static_cast<int>(xs.size());
  return closed_form(a, xs, a.bundle.pi_e_dual(), [&](std::span<const std::size_t> al) {
    int eps = 0;
    for (int i = 1; i < r; ++i) {
      int inner = r + i;
      for (int j = i + 1; j <= r; ++j) inner += bit(fib[al[j - 1]]);
      eps += px[i - 1] * inner;
    }
    for (int j = 1; j <= r; ++j) eps += bit(fib[al[j - 1]]);
    return eps;
  });
}

GradedPoly lie_poisson_formula(const Algebroid& a, std::span<const GradedPoly> fs, LiePoissonReading reading) {
  const auto& fib = presentation(a).fibre;
  std::vector<int> pf;
  for (const auto& f : fs) pf.push_back(bit(require_parity(f, "Lie-Poisson argument")));
  const int r = static_cast<int>(fs.size());
  return closed_form(a, fs, a.bundle.e_dual(), [&](std::span<const std::size_t> al) {
    int eps = 1;
    for (int i = 1; i < r; ++i) {
      int inner = 0;
      for (int j = i + 1; j <= r; ++j) inner += bit(fib[al[j - 1]]);
      if (i < r - 1 || reading.last_row_shift) inner += r + i;
      eps += (pf[i - 1] + 1) * inner;
      const int coeff = (reading.descending_shift || i == r - 1) ? r - i : r - 1;
      eps += pf[i - 1] * coeff;
    }
    for (int j = 1; j <= r; ++j) eps += bit(fib[al[j - 1]]);
    return eps;
  });
}

std::size_t StatementReport::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries)
    if (!e.ok()) ++n;
  return n;
}

StatementReport weight_one_restriction_check(const Algebroid& a, std::size_t max_arity) {
  require_point_base(a, "the weight-one restriction check");
  const auto s = build_schouten(a);
  const auto p = build_poisson(a);
  const auto se = schouten_engine(s);
  const auto pe = poisson_engine(p);
  StatementReport report;
  for (std::size_t r = 0; r <= max_arity; ++r) {
    for (const auto& t : sorted_tuples(a.bundle.rank(), r)) {
      auto eta = fibre_generators(a.bundle.pi_e_dual(), t);
      report.entries.push_back({"schouten", r, t, higher_schouten_bracket(se, eta), symmetric_bracket(a, t)});
      auto e = fibre_generators(a.bundle.e_dual(), t);
      report.entries.push_back({"poisson", r, t, higher_poisson_bracket(pe, e), skew_bracket(a, t)});
    }
  }
  return report;
}

}  // namespace linfty
