#include "doctest.h"
#include "linfty/builtins.hpp"
#include "linfty/homotopy.hpp"
#include "linfty/random_poly.hpp"

using namespace linfty;

namespace {

GradedPoly gen(const ChartPtr& c, const char* name) { return GradedPoly::generator(c, name); }

Parity random_parity(Rng& rng) { return rng.coin() ? Parity::odd : Parity::even; }

/// Point base, xi1 odd and xi2 even: Q = xi1 (xi2 + 1)^k d/dxi2, with brackets
/// of every arity up to k + 1.
Algebroid power_point(unsigned k) {
  Bundle b({{}, {Parity::even, Parity::odd}});
  const auto& c = b.pi_e();
  GradedPoly f = gen(c, "xi1");
  for (unsigned i = 0; i < k; ++i) f = f * (gen(c, "xi2") + GradedPoly::constant(c, 1));
  std::vector<GradedPoly> comps(c->size(), GradedPoly(c));
  comps[c->index_of("xi2")] = f;
  return Algebroid("power" + std::to_string(k), b, VectorField(c, comps, Parity::odd));
}

/// 1, the generators and the nonzero quadratic monomials.
std::vector<GradedPoly> low_basis(const ChartPtr& c) {
  std::vector<GradedPoly> out{GradedPoly::constant(c, 1)};
  for (std::size_t i = 0; i < c->size(); ++i) out.push_back(GradedPoly::generator(c, i));
  for (std::size_t i = 0; i < c->size(); ++i)
    for (std::size_t j = i; j < c->size(); ++j) {
      auto m = GradedPoly::generator(c, i) * GradedPoly::generator(c, j);
      if (!m.is_zero()) out.push_back(m);
    }
  return out;
}

/// Calls f on every r-tuple (ordered, with repetition) of indices below n.
template <class F>
void for_each_tuple(std::size_t n, std::size_t r, F f) {
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    f(idx);
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == n - 1) idx[--k] = 0;
    if (k == 0) break;
    ++idx[k - 1];
  }
}

std::vector<GradedPoly> pick(const std::vector<GradedPoly>& basis, const std::vector<std::size_t>& idx) {
  std::vector<GradedPoly> out;
  for (auto i : idx) out.push_back(basis[i]);
  return out;
}

}  // namespace

TEST_CASE("fundamental Lie-Schouten brackets of so(3)") {
  const auto a = builtin("so3");
  const auto s = build_schouten(a);
  const auto& c = a.bundle.pi_e_dual();
  const GradedPoly e12[] = {gen(c, "eta1"), gen(c, "eta2")};
  CHECK(higher_schouten_bracket(s, e12) == -gen(c, "eta3"));
  const GradedPoly e23[] = {gen(c, "eta2"), gen(c, "eta3")};
  CHECK(higher_schouten_bracket(s, e23) == -gen(c, "eta1"));
  // matches (-1)^(a+b) Q^g_ab eta_g with Q^3_12 = d1 d2 (xi1 xi2) = -1
  const std::size_t t[] = {0, 1};
  CHECK(structure_tensor(a.q, a.q.chart()->index_of("xi3"), t) == GradedPoly::constant(a.q.chart(), -1));
  CHECK(symmetric_bracket(a, t) == -gen(c, "eta3"));
  // base functions of a de Rham algebra commute
  const auto d = builtin("derham");
  const auto& cd = d.bundle.pi_e_dual();
  const GradedPoly xs[] = {gen(cd, "x1"), gen(cd, "x2")};
  CHECK(higher_schouten_bracket(build_schouten(d), xs).is_zero());
}

TEST_CASE("the zero bracket") {
  const std::span<const GradedPoly> none;
  CHECK(higher_schouten_bracket(build_schouten(builtin("so3")), none).is_zero());
  CHECK(higher_poisson_bracket(build_poisson(builtin("so3")), none).is_zero());
  const auto l3 = builtin("lie-3-algebroid-demo");
  CHECK(higher_schouten_bracket(build_schouten(l3), none) == gen(l3.bundle.pi_e_dual(), "eta1"));
  CHECK(higher_poisson_bracket(build_poisson(l3), none) == -gen(l3.bundle.e_dual(), "e1"));
}

TEST_CASE("higher Poisson sign") {
  const auto a = builtin("mixed-point");
  const auto& c = a.bundle.e_dual();
  const GradedPoly odd = gen(c, "e2"), even = gen(c, "e1");
  // eps = F1 (r-1) + ... + F(r-1) + r
  CHECK(higher_poisson_sign(std::span<const GradedPoly>()) == 1);
  const GradedPoly a1[] = {odd};
  CHECK(higher_poisson_sign(a1) == -1);
  const GradedPoly a2[] = {odd, even};
  CHECK(higher_poisson_sign(a2) == -1);
  const GradedPoly a3[] = {odd, odd, even};
  CHECK(higher_poisson_sign(a3) == 1);
  const GradedPoly a4[] = {even, odd, odd};
  CHECK(higher_poisson_sign(a4) == 1);
}

TEST_CASE("flavor mismatch is rejected") {
  const auto a = builtin("so3");
  const GradedPoly x[] = {gen(a.bundle.pi_e_dual(), "eta1")};
  CHECK_THROWS(higher_schouten_bracket(build_poisson(a), x));
  CHECK_THROWS(higher_poisson_bracket(build_schouten(a), x));
}

TEST_CASE("projectors: idempotent, abelian image, distributive") {
  Rng rng(3);
  RandomPolyOptions opt{3, 3, 3};
  for (const char* name : {"lie-3-algebroid-demo", "super-derham", "mixed-point"}) {
    CAPTURE(name);
    const auto a = builtin(name);
    const PoissonAmbient pa{a.bundle.t_pi_e_dual()};
    const SchoutenAmbient sa{a.bundle.pit_e_dual()};
    for (int k = 0; k < 40; ++k) {
      auto f = random_homogeneous_poly(pa.phase, random_parity(rng), rng, opt);
      auto g = random_homogeneous_poly(pa.phase, random_parity(rng), rng, opt);
      CHECK(pa.project(pa.project(f)) == pa.project(f));
      CHECK(pa.bracket(pa.project(f), pa.project(g)).is_zero());
      CHECK(pa.project(pa.bracket(f, g)) ==
            pa.project(pa.bracket(pa.project(f), g)) + pa.project(pa.bracket(f, pa.project(g))));
      auto u = random_homogeneous_poly(sa.phase, random_parity(rng), rng, opt);
      auto v = random_homogeneous_poly(sa.phase, random_parity(rng), rng, opt);
      CHECK(sa.project(sa.project(u)) == sa.project(u));
      CHECK(sa.bracket(sa.project(u), sa.project(v)).is_zero());
      CHECK(sa.project(sa.bracket(u, v)) ==
            sa.project(sa.bracket(sa.project(u), v)) + sa.project(sa.bracket(u, sa.project(v))));
    }
  }
  const auto m = builtin("mixed-point");
  const VectorFieldAmbient va(m.q.chart());
  for (int k = 0; k < 40; ++k) {
    auto x = random_homogeneous_field(va.chart, random_parity(rng), rng, opt);
    auto y = random_homogeneous_field(va.chart, random_parity(rng), rng, opt);
    CHECK(va.project(va.project(x)) == va.project(x));
    CHECK(va.bracket(va.project(x), va.project(y)).is_zero());
    CHECK(va.project(va.bracket(x, y)) ==
          va.project(va.bracket(va.project(x), y)) + va.project(va.bracket(x, va.project(y))));
  }
  CHECK_THROWS_AS(VectorFieldAmbient(builtin("derham").q.chart()), ChartKindError);
}

TEST_CASE("derived brackets are graded symmetric") {
  Rng rng(8);
  RandomPolyOptions opt{2, 3, 3};
  for (const char* name : {"lie-3-algebroid-demo", "mixed-point", "lie-algebroid-demo"}) {
    CAPTURE(name);
    const auto a = builtin(name);
    const auto se = schouten_engine(build_schouten(a));
    const auto pe = poisson_engine(build_poisson(a));
    for (std::size_t r = 2; r <= 3; ++r)
      for (int k = 0; k < 30; ++k) {
        std::vector<GradedPoly> xs, fs;
        std::vector<Parity> px, pf;
        for (std::size_t i = 0; i < r; ++i) {
          px.push_back(random_parity(rng));
          xs.push_back(random_homogeneous_poly(a.bundle.pi_e_dual(), px.back(), rng, opt));
          pf.push_back(random_parity(rng));
          fs.push_back(random_homogeneous_poly(a.bundle.e_dual(), pf.back(), rng, opt));
        }
        const std::size_t i = rng.uniform(0, static_cast<long>(r) - 2);
        auto ys = xs;
        std::swap(ys[i], ys[i + 1]);
        // symmetric in the parity of Pi E* functions
        CHECK(higher_schouten_bracket(se, ys) ==
              Rational(koszul(px[i], px[i + 1])) * higher_schouten_bracket(se, xs));
        auto gs = fs;
        std::swap(gs[i], gs[i + 1]);
        // antisymmetric in the E* parity
        CHECK(higher_poisson_bracket(pe, gs) ==
              Rational(-koszul(pf[i], pf[i + 1])) * higher_poisson_bracket(pe, fs));
      }
  }
}

TEST_CASE("bracket weights") {
  Rng rng(21);
  RandomPolyOptions opt{2, 1, 3};
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto a = builtin(name);
    const auto se = schouten_engine(build_schouten(a));
    for (std::size_t r = 1; r <= 3; ++r)
      for (int k = 0; k < 20; ++k) {
        std::vector<GradedPoly> xs;
        int total = 0;
        for (std::size_t i = 0; i < r; ++i) {
          xs.push_back(random_homogeneous_poly(a.bundle.pi_e_dual(), random_parity(rng), rng, opt));
          total += weight_of(xs.back())->first;
        }
        auto out = higher_schouten_bracket(se, xs);
        if (out.is_zero()) continue;
        // each output term has natural weight sum + 1 - r
        for (const auto& [m, c] : out.terms())
          CHECK(monomial_weight(*out.chart(), m).first == total + 1 - static_cast<int>(r));
      }
  }
}

TEST_CASE("Jacobiators agree two ways and vanish for homological Q") {
  std::vector<Algebroid> fixtures;
  for (const auto& name : builtin_names()) fixtures.push_back(builtin(name));
  fixtures.push_back(super_de_rham());
  fixtures.push_back(mixed_point_fixture());
  for (const auto& a : fixtures) {
    CAPTURE(a.name);
    const auto se = schouten_engine(build_schouten(a));
    const auto pe = poisson_engine(build_poisson(a));
    const auto& cs = a.bundle.pi_e_dual();
    const auto& cp = a.bundle.e_dual();
    const std::size_t top = cs->size() > 4 ? 3 : 4;
    for (std::size_t n = 1; n <= top; ++n)
      for (const auto& t : sorted_tuples(cs->size(), n)) {
        std::vector<GradedPoly> xs, fs;
        for (auto i : t) {
          xs.push_back(lift_to_phase_space(GradedPoly::generator(cs, i), se.ambient().phase));
          fs.push_back(lift_to_phase_space(GradedPoly::generator(cp, i), pe.ambient().phase));
        }
        const auto js = jacobiator(se, std::span<const GradedPoly>(xs));
        CHECK(js.agree());
        CHECK(js.derived.is_zero());
        const auto jp = jacobiator(pe, std::span<const GradedPoly>(fs));
        CHECK(jp.agree());
        CHECK(jp.derived.is_zero());
      }
  }
}

TEST_CASE("broken so(3) has a nonzero Jacobiator, equal both ways") {
  const auto a = so3_perturbed();
  const auto se = schouten_engine(schouten_function(a));
  const auto pe = poisson_engine(poisson_function(a));
  const auto qe = q_engine(a.q);
  const auto& cs = a.bundle.pi_e_dual();
  const auto& cp = a.bundle.e_dual();
  bool seen_s = false, seen_p = false, seen_q = false;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& t : sorted_tuples(3, n)) {
      std::vector<GradedPoly> xs, fs;
      std::vector<VectorField> vs;
      for (auto i : t) {
        xs.push_back(lift_to_phase_space(GradedPoly::generator(cs, i), se.ambient().phase));
        fs.push_back(lift_to_phase_space(GradedPoly::generator(cp, i), pe.ambient().phase));
        vs.push_back(VectorField::coordinate(a.q.chart(), i));
      }
      const auto js = jacobiator(se, std::span<const GradedPoly>(xs));
      const auto jp = jacobiator(pe, std::span<const GradedPoly>(fs));
      const auto jq = jacobiator(qe, std::span<const VectorField>(vs));
      CHECK(js.agree());
      CHECK(jp.agree());
      CHECK(jq.agree());
      seen_s = seen_s || !js.derived.is_zero();
      seen_p = seen_p || !jp.derived.is_zero();
      seen_q = seen_q || !jq.derived.is_zero();
    }
  CHECK(seen_s);
  CHECK(seen_p);
  CHECK(seen_q);
  const GradedPoly e123[] = {lift_to_phase_space(gen(cs, "eta1"), se.ambient().phase),
                             lift_to_phase_space(gen(cs, "eta2"), se.ambient().phase),
                             lift_to_phase_space(gen(cs, "eta3"), se.ambient().phase)};
  CHECK_FALSE(jacobiator(se, std::span<const GradedPoly>(e123)).unshuffle.is_zero());
}

TEST_CASE("Jacobiators on random arguments") {
  Rng rng(13);
  RandomPolyOptions opt{2, 2, 2};
  for (auto a : {builtin("lie-3-algebroid-demo"), so3_perturbed(), builtin("higher-poisson-on-algebroid")}) {
    CAPTURE(a.name);
    const auto se = schouten_engine(schouten_function(a));
    const auto pe = poisson_engine(poisson_function(a));
    for (std::size_t n = 1; n <= 3; ++n)
      for (int k = 0; k < 8; ++k) {
        std::vector<GradedPoly> xs, fs;
        for (std::size_t i = 0; i < n; ++i) {
          xs.push_back(lift_to_phase_space(
              random_homogeneous_poly(a.bundle.pi_e_dual(), random_parity(rng), rng, opt), se.ambient().phase));
          fs.push_back(lift_to_phase_space(random_homogeneous_poly(a.bundle.e_dual(), random_parity(rng), rng, opt),
                                           pe.ambient().phase));
        }
        CHECK(jacobiator(se, std::span<const GradedPoly>(xs)).agree());
        CHECK(jacobiator(pe, std::span<const GradedPoly>(fs)).agree());
      }
  }
}

TEST_CASE("Leibniz rules") {
  for (const char* name : {"derham", "so3", "lie-3-algebroid-demo", "mixed-point", "higher-poisson-on-algebroid"}) {
    CAPTURE(name);
    const auto a = builtin(name);
    const auto se = schouten_engine(build_schouten(a));
    const auto pe = poisson_engine(build_poisson(a));
    const MultiBracket sb = [&](std::span<const GradedPoly> xs) { return higher_schouten_bracket(se, xs); };
    const MultiBracket pb = [&](std::span<const GradedPoly> xs) { return higher_poisson_bracket(pe, xs); };
    for (std::size_t r = 1; r <= 3; ++r) {
      const auto rs = leibniz_check(sb, LeibnizRule::schouten, a.bundle.pi_e_dual(), r, 100, 7);
      CHECK_MESSAGE(rs.ok(), rs.witness.value_or(""));
      CHECK(rs.trials == 100);
      const auto rp = leibniz_check(pb, LeibnizRule::poisson, a.bundle.e_dual(), r, 100, 7);
      CHECK_MESSAGE(rp.ok(), rp.witness.value_or(""));
    }
    // the exponents are not interchangeable once a bracket of arity >= 2 is present
    if (a.name == "lie-3-algebroid-demo") {
      CHECK_FALSE(leibniz_check(pb, LeibnizRule::schouten, a.bundle.e_dual(), 2, 100, 7).ok());
      CHECK_FALSE(leibniz_check(sb, LeibnizRule::poisson, a.bundle.pi_e_dual(), 2, 100, 7).ok());
    }
  }
}

TEST_CASE("Leibniz negative control") {
  const auto a = builtin("so3");
  const auto& c = a.bundle.pi_e_dual();
  // a product is not a multiderivation
  const MultiBracket product = [&](std::span<const GradedPoly> xs) {
    GradedPoly out = gen(c, "eta1");
    for (const auto& x : xs) out = out * x;
    return out;
  };
  for (std::size_t r = 1; r <= 3; ++r) {
    const auto rep = leibniz_check(product, LeibnizRule::schouten, c, r, 100, 1);
    CHECK_FALSE(rep.ok());
    CHECK(rep.witness.has_value());
  }
}

TEST_CASE("skew brackets") {
  // pure even, r = 2: {T_a, T_b} = -Q^g_ab T_g
  const auto s = builtin("so3");
  const auto& e = s.bundle.e_dual();
  const std::size_t t12[] = {0, 1};
  CHECK(skew_bracket(s, t12) == gen(e, "e3"));
  // r = 1: {T_a} = (-1)^(a + 1) Q^b_a T_b
  const auto m = builtin("mixed-point");
  const auto& em = m.bundle.e_dual();
  const std::size_t t1[] = {0};
  CHECK(skew_bracket(m, t1) == -gen(em, "e2"));
  CHECK(skew_bracket_table(builtin("derham"), 2).entries.empty());

  // the parity-shift route and the closed formula agree on every tuple
  for (const char* name : {"so3", "mixed-point", "graded-3-lie", "lie-3-algebroid-demo", "lie-algebroid-demo"}) {
    CAPTURE(name);
    const auto a = builtin(name);
    for (std::size_t r = 0; r <= 4; ++r)
      for_each_tuple(a.bundle.rank(), r, [&](const std::vector<std::size_t>& t) {
        CHECK(skew_bracket(a, t) == skew_bracket_formula(a, t));
      });
  }
}

TEST_CASE("skew table is antisymmetric") {
  const auto a = power_point(3);
  const auto& fib = a.bundle.presentation().fibre;
  for (std::size_t r = 2; r <= 3; ++r)
    for_each_tuple(2, r, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i + 1 < r; ++i) {
        auto u = t;
        std::swap(u[i], u[i + 1]);
        CHECK(skew_bracket(a, u) == Rational(-koszul(fib[t[i]], fib[t[i + 1]])) * skew_bracket(a, t));
      }
    });
}

TEST_CASE("bracket table render") {
  const auto t = symmetric_bracket_table(builtin("so3"), 2);
  CHECK(t.render() ==
        "arity 2, symmetric, parity odd, weight -1\n"
        "  (eta1, eta2) = -eta3\n"
        "  (eta1, eta3) = eta2\n"
        "  (eta2, eta3) = -eta1\n");
  CHECK(skew_bracket_table(builtin("so3"), 3).render() == "arity 3, skew, parity odd, weight -2\n  (all brackets vanish)\n");
  CHECK(sorted_tuples(2, 2) == std::vector<std::vector<std::size_t>>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(sorted_tuples(0, 0).size() == 1);
}

TEST_CASE("derived tables reproduce the structure constants") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto a = builtin(name);
    const auto s = build_schouten(a);
    const auto p = build_poisson(a);
    for (std::size_t r = 0; r <= 4; ++r) {
      CHECK(derived_schouten_table(a, s, r).entries == symmetric_bracket_table(a, r).entries);
      CHECK(derived_poisson_table(a, p, r).entries == skew_bracket_table(a, r).entries);
    }
  }
}

TEST_CASE("higher anchors") {
  const auto a = builtin("lie-algebroid-demo");
  const auto& c = a.q.chart();
  const auto f = gen(c, "x1") * gen(c, "x1");
  const std::size_t s1[] = {0}, s2[] = {1};
  CHECK(higher_anchor(a, s1, f) == Rational(2) * gen(c, "x1"));
  CHECK(higher_anchor(a, s2, f) == Rational(2) * f);
  CHECK(higher_anchor(a, std::span<const std::size_t>(), f).is_zero());
  const std::size_t s11[] = {0, 1};
  CHECK(higher_anchor(a, s11, f).is_zero());
  const auto l3 = builtin("lie-3-algebroid-demo");
  const std::size_t s3[] = {2};
  CHECK(higher_anchor(l3, s3, gen(l3.q.chart(), "x1")) == GradedPoly::constant(l3.q.chart(), 1));
  CHECK_THROWS_AS(higher_anchor(a, s1, gen(a.bundle.pi_e_dual(), "x1")), ChartMismatch);
}

TEST_CASE("Lie-Schouten closed form") {
  for (const auto& a : {builtin("so3"), builtin("graded-3-lie"), mixed_point_fixture(), power_point(4)}) {
    CAPTURE(a.name);
    const auto se = schouten_engine(build_schouten(a));
    const auto basis = low_basis(a.bundle.pi_e_dual());
    const std::size_t top = a.bundle.rank() > 2 ? 3 : 4;
    for (std::size_t r = 1; r <= top; ++r)
      for_each_tuple(basis.size(), r, [&](const std::vector<std::size_t>& idx) {
        const auto xs = pick(basis, idx);
        CHECK(lie_schouten_formula(a, xs) == higher_schouten_bracket(se, xs));
      });
  }
  CHECK_THROWS(lie_schouten_formula(builtin("derham"), std::span<const GradedPoly>()));
}

TEST_CASE("Lie-Poisson closed form") {
  for (const auto& a : {builtin("so3"), builtin("graded-3-lie"), mixed_point_fixture(), power_point(4)}) {
    CAPTURE(a.name);
    const auto pe = poisson_engine(build_poisson(a));
    const auto basis = low_basis(a.bundle.e_dual());
    const std::size_t top = a.bundle.rank() > 2 ? 3 : 4;
    for (std::size_t r = 1; r <= top; ++r)
      for_each_tuple(basis.size(), r, [&](const std::vector<std::size_t>& idx) {
        const auto fs = pick(basis, idx);
        CHECK(lie_poisson_formula(a, fs) == higher_poisson_bracket(pe, fs));
      });
  }
}

TEST_CASE("Lie-Poisson sign readings") {
  // Only one reading of the printed sign factor matches the nested brackets;
  // the others fail already at low arity on a fibre of mixed parity.
  const auto a = power_point(4);
  const auto pe = poisson_engine(build_poisson(a));
  const auto basis = low_basis(a.bundle.e_dual());
  std::map<std::pair<bool, bool>, std::size_t> mismatches;
  for (std::size_t r = 1; r <= 4; ++r)
    for_each_tuple(basis.size(), r, [&](const std::vector<std::size_t>& idx) {
      const auto fs = pick(basis, idx);
      const auto nested = higher_poisson_bracket(pe, fs);
      for (bool desc : {false, true})
        for (bool last : {false, true})
          if (lie_poisson_formula(a, fs, {desc, last}) != nested) ++mismatches[{desc, last}];
    });
  CHECK(mismatches[{true, true}] == 0);
  CHECK(mismatches[{false, true}] > 0);
  CHECK(mismatches[{true, false}] > 0);
  CHECK(mismatches[{false, false}] > 0);
}

TEST_CASE("weight-one restriction") {
  for (const char* name : {"so3", "graded-3-lie"}) {
    CAPTURE(name);
    const auto rep = weight_one_restriction_check(builtin(name), 4);
    CHECK(rep.ok());
    CHECK(rep.entries.size() > 0);
  }
  // the graded 3-Lie algebra has a single ternary bracket
  const auto rep = weight_one_restriction_check(builtin("graded-3-lie"), 4);
  for (const auto& e : rep.entries) CHECK(e.derived.is_zero() == (e.arity != 3 || e.tuple != std::vector<std::size_t>{0, 1, 1}));

  Bundle b({{}, {Parity::even, Parity::odd}});
  const Algebroid zero("zero", b, VectorField::zero(b.pi_e(), Parity::odd));
  const auto z = weight_one_restriction_check(zero, 3);
  CHECK(z.ok());
  for (const auto& e : z.entries) CHECK(e.derived.is_zero());
  CHECK_THROWS(weight_one_restriction_check(builtin("derham"), 2));
}
