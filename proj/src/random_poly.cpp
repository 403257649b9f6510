#include "linfty/random_poly.hpp"

#include <numeric>

namespace linfty {

namespace {

Rational random_coefficient(Rng& rng, long range) {
  long n = 0;
  while (n == 0) n = rng.uniform(-range, range);
  Rational c(n);
  if (rng.uniform(0, 3) == 0) c /= 2;
  return c;
}

}  // namespace

GradedPoly random_homogeneous_poly(const ChartPtr& chart, Parity parity, Rng& rng,
                                   const RandomPolyOptions& options, std::span<const std::size_t> allowed) {
  std::vector<std::size_t> pool(allowed.begin(), allowed.end());
  if (pool.empty()) {
    pool.resize(chart->size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  }
  GradedPoly out(chart);
  if (pool.empty()) {
    if (parity == Parity::even) out = GradedPoly::constant(chart, random_coefficient(rng, options.coefficient_range));
    return out;
  }
  const auto terms = static_cast<unsigned>(rng.uniform(1, options.max_terms));
  for (unsigned t = 0; t < terms; ++t) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      Monomial m(chart->size());
      const auto degree = static_cast<unsigned>(rng.uniform(0, options.max_degree));
      bool valid = true;
      for (unsigned d = 0; d < degree; ++d) {
        const auto g = pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
        if ((*chart)[g].parity == Parity::odd && m[g]) {
          valid = false;
          break;
        }
        m.set(g, static_cast<std::uint16_t>(m[g] + 1));
      }
      if (!valid || monomial_parity(*chart, m) != parity) continue;
      out.add_term(m, random_coefficient(rng, options.coefficient_range));
      break;
    }
  }
  return out;
}

VectorField random_homogeneous_field(const ChartPtr& chart, Parity parity, Rng& rng,
                                     const RandomPolyOptions& options) {
  std::vector<GradedPoly> comps;
  comps.reserve(chart->size());
  for (std::size_t i = 0; i < chart->size(); ++i) {
    if (rng.uniform(0, 2) == 0)
      comps.emplace_back(chart);
    else
      comps.push_back(random_homogeneous_poly(chart, parity + (*chart)[i].parity, rng, options));
  }
  return VectorField(chart, std::move(comps), parity);
}

}  // namespace linfty
