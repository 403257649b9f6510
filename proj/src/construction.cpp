#include "linfty/construction.hpp"

#include <sstream>

#include "linfty/random_poly.hpp"

namespace linfty {

namespace {

std::size_t find_role(const Chart& c, Role role, std::size_t index) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].role == role && static_cast<std::size_t>(c[i].index) == index) return i;
  throw UnknownGenerator("chart '" + c.label() + "' has no coordinate for this role/index");
}

GradedPoly gen(const ChartPtr& c, Role role, std::size_t index) {
  return GradedPoly::generator(c, find_role(*c, role, index));
}

Rational sign_of(Parity p) { return p == Parity::odd ? Rational(-1) : Rational(1); }

/// Base coordinates and their conjugates map to themselves.
void map_base(const ChartPtr& from, const ChartPtr& to, std::size_t base_dim, SubstitutionMap& m) {
  for (std::size_t a = 0; a < base_dim; ++a) {
    m[find_role(*from, Role::base, a)] = gen(to, Role::base, a);
    m[find_role(*from, Role::base_conjugate, a)] = gen(to, Role::base_conjugate, a);
  }
}

void require_on_pi_e(const Algebroid& a, const char* what) {
  if (!same_chart(a.q.chart(), a.bundle.pi_e()))
    throw ChartMismatch(std::string(what) + ": Q does not live on PiE of the given bundle");
}

void require_homological(const Algebroid& a) {
  if (a.q.parity() != Parity::odd && !a.q.is_zero())
    throw ParityError("'" + a.name + "': the vector field is even");
  auto square = commutator(a.q, a.q);
  if (!square.is_zero()) throw NotHomological(std::move(square));
}

}  // namespace

Algebroid::Algebroid(std::string n, Bundle b, VectorField field)
    : name(std::move(n)), bundle(std::move(b)), q(std::move(field)) {
  if (!same_chart(q.chart(), bundle.pi_e()))
    throw ChartMismatch("algebroid '" + name + "': the vector field must live on PiE");
}

NotHomological::NotHomological(VectorField witness)
    : Error("[Q,Q] does not vanish:\n" + witness.render()), witness_(std::move(witness)) {}

MorphismR::MorphismR(ChartPtr domain, ChartPtr codomain, SubstitutionMap pullback, SubstitutionMap inverse)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      pullback_(std::move(pullback)),
      inverse_(std::move(inverse)) {}

GradedPoly MorphismR::pullback(const GradedPoly& f) const { return substitute(f, pullback_, domain_); }

GradedPoly MorphismR::push(const GradedPoly& f) const { return substitute(f, inverse_, codomain_); }

MorphismR MorphismR::inverse() const { return MorphismR(codomain_, domain_, inverse_, pullback_); }

MorphismR morphism_A1(const Bundle& b) {
  const auto& dom = b.t_pi_e_dual();  // x, pi^a, p, eta_a
  const auto& cod = b.t_pi_e();       // x, xi^a, p, pi_a
  SubstitutionMap pull(cod->size()), inv(dom->size());
  map_base(cod, dom, b.base_dim(), pull);
  map_base(dom, cod, b.base_dim(), inv);
  for (std::size_t a = 0; a < b.rank(); ++a) {
    const Rational s = sign_of(b.presentation().fibre[a]);
    pull[find_role(*cod, Role::fibre, a)] = s * gen(dom, Role::fibre_conjugate, a);
    pull[find_role(*cod, Role::fibre_conjugate, a)] = gen(dom, Role::fibre, a);
    inv[find_role(*dom, Role::fibre, a)] = gen(cod, Role::fibre_conjugate, a);
    inv[find_role(*dom, Role::fibre_conjugate, a)] = s * gen(cod, Role::fibre, a);
  }
  return MorphismR(dom, cod, std::move(pull), std::move(inv));
}

MorphismR morphism_A2(const Bundle& b) {
  const auto& dom = b.pit_e_dual();  // x, estar^a, xstar, e_a
  const auto& cod = b.pit_pi_e();    // x, xi^a, xstar, xistar_a
  SubstitutionMap pull(cod->size()), inv(dom->size());
  map_base(cod, dom, b.base_dim(), pull);
  map_base(dom, cod, b.base_dim(), inv);
  for (std::size_t a = 0; a < b.rank(); ++a) {
    pull[find_role(*cod, Role::fibre, a)] = gen(dom, Role::fibre_conjugate, a);
    pull[find_role(*cod, Role::fibre_conjugate, a)] = Rational(-1) * gen(dom, Role::fibre, a);
    inv[find_role(*dom, Role::fibre, a)] = Rational(-1) * gen(cod, Role::fibre_conjugate, a);
    inv[find_role(*dom, Role::fibre_conjugate, a)] = gen(cod, Role::fibre, a);
  }
  return MorphismR(dom, cod, std::move(pull), std::move(inv));
}

std::string_view to_string(Flavor f) { return f == Flavor::schouten ? "schouten" : "poisson"; }

HigherStructure::HigherStructure(GradedPoly value, Flavor flavor)
    : value_(std::move(value)), flavor_(flavor), self_bracket_(value_.chart()) {
  const Parity want = flavor_ == Flavor::schouten ? Parity::odd : Parity::even;
  if (!value_.is_zero() && require_parity(value_, "higher structure") != want)
    throw ParityError(std::string("a higher ") + std::string(to_string(flavor_)) + " structure must be " +
                      std::string(to_string(want)));
  self_bracket_ = flavor_ == Flavor::schouten ? canonical_poisson(value_, value_) : canonical_schouten(value_, value_);
}

GradedPoly schouten_function(const Algebroid& a) {
  require_on_pi_e(a, "schouten_function");
  return morphism_A1(a.bundle).pullback(even_symbol(a.q, a.bundle.t_pi_e()));
}

GradedPoly poisson_function(const Algebroid& a) {
  require_on_pi_e(a, "poisson_function");
  return morphism_A2(a.bundle).pullback(odd_symbol(a.q, a.bundle.pit_pi_e()));
}

HigherStructure build_schouten(const Algebroid& a) {
  require_homological(a);
  return HigherStructure(schouten_function(a), Flavor::schouten);
}

HigherStructure build_poisson(const Algebroid& a) {
  require_homological(a);
  return HigherStructure(poisson_function(a), Flavor::poisson);
}

WeightAudit total_weight_audit(const HigherStructure& h) {
  WeightAudit audit;
  const Chart& c = *h.chart();
  for (const auto& [m, coeff] : h.value().terms()) {
    const MultiWeight w = monomial_weight(c, m);
    ++audit.histogram[w];
    if (w.total() != 1 || w.second < 0) {
      GradedPoly term = GradedPoly::monomial(h.chart(), m, coeff);
      audit.violations.push_back(term.render() + " has bi-weight " + to_string(w));
    }
  }
  return audit;
}

bool is_strict(const VectorField& q) {
  const auto& c = q.chart();
  const auto fibre = c->indices_with_role(Role::fibre);
  for (std::size_t i : fibre)
    if (!drop_generators(q.component(i), fibre).is_zero()) return false;
  return true;
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error("matrix is not square");
  Matrix a = m, inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("matrix is singular");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const Rational scale = 1 / a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] *= scale;
      inv[col][k] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

void require_parity_block(const Matrix& t, const BundlePresentation& b) {
  const std::size_t n = b.fibre.size();
  if (t.size() != n) throw Error("matrix size does not match the fibre rank");
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i].size() != n) throw Error("matrix size does not match the fibre rank");
    for (std::size_t j = 0; j < n; ++j)
      if (t[i][j] != 0 && b.fibre[i] != b.fibre[j])
        throw ParityError("matrix mixes fibre directions of different parity");
  }
}

VectorField transform_fibre(const VectorField& q, const Matrix& t) {
  const auto& c = q.chart();
  const auto fibre = c->indices_with_role(Role::fibre);
  if (t.size() != fibre.size()) throw Error("matrix size does not match the fibre rank");
  const Matrix tinv = inverse(t);
  // xi^b = xibar^g Tinv_g^b
  SubstitutionMap old_in_new(c->size());
  for (std::size_t i = 0; i < c->size(); ++i) old_in_new[i] = GradedPoly::generator(c, i);
  for (std::size_t b = 0; b < fibre.size(); ++b) {
    GradedPoly image(c);
    for (std::size_t g = 0; g < fibre.size(); ++g)
      if (tinv[g][b] != 0) image += tinv[g][b] * GradedPoly::generator(c, fibre[g]);
    old_in_new[fibre[b]] = image;
  }
  std::vector<GradedPoly> comps(c->size(), GradedPoly(c));
  for (std::size_t i = 0; i < c->size(); ++i)
    if ((*c)[i].role == Role::base) comps[i] = substitute(q.component(i), old_in_new, c);
  // Q(xibar^a) = Q(xi^b) T_b^a
  for (std::size_t a = 0; a < fibre.size(); ++a)
    for (std::size_t b = 0; b < fibre.size(); ++b)
      if (t[b][a] != 0) comps[fibre[a]] += t[b][a] * substitute(q.component(fibre[b]), old_in_new, c);
  return VectorField(c, std::move(comps), q.parity());
}

SubstitutionMap cotangent_lift(const Bundle& b, const Matrix& t, Flavor flavor) {
  require_parity_block(t, b.presentation());
  const Matrix tinv = inverse(t);
  const auto& c = flavor == Flavor::schouten ? b.t_pi_e_dual() : b.pit_e_dual();
  SubstitutionMap m(c->size());
  for (std::size_t i = 0; i < c->size(); ++i)
    if ((*c)[i].role == Role::base || (*c)[i].role == Role::base_conjugate) m[i] = GradedPoly::generator(c, i);
  const std::size_t n = b.rank();
  for (std::size_t beta = 0; beta < n; ++beta) {
    // eta_b = T_b^a etabar_a and pi^b = pibar^a Tinv_a^b (likewise e, estar)
    GradedPoly lower(c), upper(c);
    for (std::size_t a = 0; a < n; ++a) {
      if (t[beta][a] != 0) lower += t[beta][a] * gen(c, Role::fibre, a);
      if (tinv[a][beta] != 0) upper += tinv[a][beta] * gen(c, Role::fibre_conjugate, a);
    }
    m[find_role(*c, Role::fibre, beta)] = lower;
    m[find_role(*c, Role::fibre_conjugate, beta)] = upper;
  }
  return m;
}

NaturalityReport chart_change_naturality(const Algebroid& a, const Matrix& t, std::size_t trials,
                                         std::uint64_t seed) {
  require_parity_block(t, a.bundle.presentation());
  NaturalityReport report;
  const Algebroid moved(a.name, a.bundle, transform_fibre(a.q, t));
  const auto lift_s = cotangent_lift(a.bundle, t, Flavor::schouten);
  const auto lift_p = cotangent_lift(a.bundle, t, Flavor::poisson);
  const auto& cs = a.bundle.t_pi_e_dual();
  const auto& cp = a.bundle.pit_e_dual();
  report.schouten_equal = schouten_function(moved) == substitute(schouten_function(a), lift_s, cs);
  report.poisson_equal = poisson_function(moved) == substitute(poisson_function(a), lift_p, cp);

  Rng rng(seed);
  RandomPolyOptions opt{3, 3, 3};
  bool preserved = true;
  for (std::size_t k = 0; k < trials && preserved; ++k) {
    const Parity pf = rng.coin() ? Parity::odd : Parity::even;
    const Parity pg = rng.coin() ? Parity::odd : Parity::even;
    auto f = random_homogeneous_poly(cs, pf, rng, opt), g = random_homogeneous_poly(cs, pg, rng, opt);
    preserved = canonical_poisson(substitute(f, lift_s, cs), substitute(g, lift_s, cs)) ==
                substitute(canonical_poisson(f, g), lift_s, cs);
    auto u = random_homogeneous_poly(cp, pf, rng, opt), v = random_homogeneous_poly(cp, pg, rng, opt);
    preserved = preserved && canonical_schouten(substitute(u, lift_p, cp), substitute(v, lift_p, cp)) ==
                                 substitute(canonical_schouten(u, v), lift_p, cp);
    ++report.bracket_trials;
  }
  report.lift_preserves_brackets = preserved;
  return report;
}

}  // namespace linfty
