#include "linfty/builtins.hpp"

#include <functional>
#include <utility>

#include "linfty/homotopy.hpp"

namespace linfty {

namespace {

using Component = std::pair<std::string, GradedPoly>;

/// Sums the listed components into an odd field on PiE.
Algebroid make(std::string name, BundlePresentation pres, const std::function<std::vector<Component>(const ChartPtr&)>& q) {
  Bundle bundle(std::move(pres));
  const auto& c = bundle.pi_e();
  std::vector<GradedPoly> comps(c->size(), GradedPoly(c));
  for (auto& [target, value] : q(c)) comps[c->index_of(target)] += value;
  VectorField field(c, std::move(comps), Parity::odd);
  return Algebroid(std::move(name), std::move(bundle), std::move(field));
}

GradedPoly g(const ChartPtr& c, std::string_view name) { return GradedPoly::generator(c, name); }
GradedPoly one(const ChartPtr& c) { return GradedPoly::constant(c, 1); }

Algebroid so3_named(std::string name, bool perturbed) {
  return make(std::move(name), {{}, {Parity::even, Parity::even, Parity::even}}, [&](const ChartPtr& c) {
    const auto x1 = g(c, "xi1"), x2 = g(c, "xi2"), x3 = g(c, "xi3");
    std::vector<Component> out{{"xi1", x2 * x3}, {"xi2", -(x1 * x3)}, {"xi3", x1 * x2}};
    if (perturbed) out.push_back({"xi1", x1 * x2});
    return out;
  });
}

Algebroid lie_algebroid_demo() {
  // rho(s1) = d/dx, rho(s2) = x d/dx, [s1, s2] = s1
  return make("lie-algebroid-demo", {{Parity::even}, {Parity::even, Parity::even}}, [](const ChartPtr& c) {
    const auto x = g(c, "x1"), xi1 = g(c, "xi1"), xi2 = g(c, "xi2");
    return std::vector<Component>{{"x1", xi1 + x * xi2}, {"xi1", Rational(-1) * (xi1 * xi2)}};
  });
}

Algebroid lie_3_algebroid_demo() {
  // xi1, xi3 odd, xi2 even; a constant term and brackets of arity 1..3
  return make("lie-3-algebroid-demo", {{Parity::even}, {Parity::even, Parity::odd, Parity::even}},
              [](const ChartPtr& c) {
                const auto xi2 = g(c, "xi2"), xi3 = g(c, "xi3");
                const auto s = xi2 + one(c);
                return std::vector<Component>{{"xi1", one(c)}, {"x1", xi3}, {"xi2", xi3 * s * s}};
              });
}

Algebroid graded_3_lie() {
  // a single ternary bracket on U = (1|1)
  return make("graded-3-lie", {{}, {Parity::even, Parity::odd}}, [](const ChartPtr& c) {
    const auto xi1 = g(c, "xi1"), xi2 = g(c, "xi2");
    return std::vector<Component>{{"xi2", xi1 * xi2 * xi2}};
  });
}

Algebroid higher_poisson_on_algebroid() {
  const auto base = de_rham(3);
  const auto& d = base.bundle.pi_e_dual();
  const auto x3 = g(d, "x3");
  return poisson_algebroid(base, x3 + x3 * g(d, "eta1") * g(d, "eta2"), "higher-poisson-on-algebroid");
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"derham",       "lie-algebroid-demo", "so3", "lie-3-algebroid-demo",
                                              "graded-3-lie", "higher-poisson-on-algebroid"};
  return names;
}

Algebroid builtin(std::string_view name) {
  if (name == "derham") return de_rham(2);
  if (name == "lie-algebroid-demo") return lie_algebroid_demo();
  if (name == "so3") return so3_named("so3", false);
  if (name == "lie-3-algebroid-demo") return lie_3_algebroid_demo();
  if (name == "graded-3-lie") return graded_3_lie();
  if (name == "higher-poisson-on-algebroid") return higher_poisson_on_algebroid();
  if (name == "so3-perturbed") return so3_perturbed();
  if (name == "super-derham") return super_de_rham();
  if (name == "mixed-point") return mixed_point_fixture();
  throw Error("unknown builtin '" + std::string(name) + "'");
}

AlgebroidSpec builtin_spec(std::string_view name) { return from_algebroid(builtin(name)); }

Algebroid de_rham(std::size_t n) {
  BundlePresentation pres{std::vector<Parity>(n, Parity::even), std::vector<Parity>(n, Parity::even)};
  return make(n == 2 ? "derham" : "derham" + std::to_string(n), pres, [n](const ChartPtr& c) {
    std::vector<Component> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back({"x" + std::to_string(i), g(c, "xi" + std::to_string(i))});
    return out;
  });
}

Algebroid super_de_rham() {
  return make("super-derham", {{Parity::even, Parity::odd}, {Parity::even, Parity::odd}}, [](const ChartPtr& c) {
    return std::vector<Component>{{"x1", g(c, "xi1")}, {"x2", g(c, "xi2")}};
  });
}

Algebroid so3_perturbed() { return so3_named("so3-perturbed", true); }

Algebroid mixed_point_fixture() {
  return make("mixed-point", {{}, {Parity::even, Parity::odd}}, [](const ChartPtr& c) {
    const auto s = g(c, "xi2") + one(c);
    return std::vector<Component>{{"xi2", g(c, "xi1") * s * s}};
  });
}

Algebroid poisson_algebroid(const Algebroid& a, const GradedPoly& multivector, std::string name) {
  const auto s = build_schouten(a);
  const auto engine = schouten_engine(s);
  const auto& dual = a.bundle.pi_e_dual();
  Bundle bundle(a.bundle.presentation());
  const auto& c = bundle.pi_e();
  // eta_a on PiE* becomes xi_a on PiE of the dual bundle
  SubstitutionMap rename(dual->size());
  for (std::size_t i = 0; i < dual->size(); ++i) rename[i] = GradedPoly::generator(c, i);
  std::vector<GradedPoly> comps;
  for (std::size_t i = 0; i < dual->size(); ++i) {
    const GradedPoly args[] = {multivector, GradedPoly::generator(dual, i)};
    comps.push_back(substitute(-higher_schouten_bracket(engine, args), rename, c));
  }
  Algebroid out(std::move(name), std::move(bundle), VectorField(c, std::move(comps), Parity::odd));
  auto square = commutator(out.q, out.q);
  if (!square.is_zero()) throw NotHomological(std::move(square));
  return out;
}

VectorField push_forward(const VectorField& q, const SubstitutionMap& images, const SubstitutionMap& inverse_images) {
  const auto& c = q.chart();
  std::vector<GradedPoly> comps;
  for (std::size_t i = 0; i < c->size(); ++i) comps.push_back(substitute(q(*images[i]), inverse_images, c));
  return VectorField(c, std::move(comps), q.parity());
}

Algebroid random_homological(Rng& rng) {
  static const char* seeds[] = {"derham", "lie-algebroid-demo", "so3",         "lie-3-algebroid-demo",
                                "graded-3-lie", "super-derham", "mixed-point"};
  const std::string seed = seeds[rng.uniform(0, std::size(seeds) - 1)];
  Algebroid a = builtin(seed);
  const auto& c = a.q.chart();

  // blocks of coordinates that may mix: same role, same parity
  std::vector<std::vector<std::size_t>> blocks;
  for (Role role : {Role::base, Role::fibre})
    for (Parity p : {Parity::even, Parity::odd}) {
      std::vector<std::size_t> block;
      for (auto i : c->indices_with_role(role))
        if ((*c)[i].parity == p) block.push_back(i);
      if (!block.empty()) blocks.push_back(std::move(block));
    }

  SubstitutionMap images(c->size()), inverse_images(c->size());
  for (const auto& block : blocks) {
    const std::size_t n = block.size();
    Matrix m, minv;
    while (true) {
      m.assign(n, std::vector<Rational>(n));
      for (auto& row : m)
        for (auto& v : row) v = Rational(rng.uniform(-2, 2));
      try {
        minv = inverse(m);
        break;
      } catch (const Error&) {
      }
    }
    const bool shift = (*c)[block[0]].parity == Parity::even;
    std::vector<Rational> b(n);
    if (shift)
      for (auto& v : b) v = Rational(rng.uniform(-1, 1));
    // ybar = M y + b and y = Minv (ybar - b)
    for (std::size_t i = 0; i < n; ++i) {
      GradedPoly img = GradedPoly::constant(c, b[i]);
      GradedPoly inv(c);
      for (std::size_t j = 0; j < n; ++j) {
        img += m[i][j] * GradedPoly::generator(c, block[j]);
        inv += minv[i][j] * (GradedPoly::generator(c, block[j]) - GradedPoly::constant(c, b[j]));
      }
      images[block[i]] = std::move(img);
      inverse_images[block[i]] = std::move(inv);
    }
  }
  static const Rational scales[] = {Rational(1), Rational(-1), Rational(2), Rational(-1, 2)};
  VectorField moved = scales[rng.uniform(0, 3)] * push_forward(a.q, images, inverse_images);
  return Algebroid("random(" + seed + ")", a.bundle, std::move(moved));
}

}  // namespace linfty
