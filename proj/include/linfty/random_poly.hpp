#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "linfty/fields.hpp"
#include "linfty/graded_poly.hpp"

namespace linfty {

/// Seeded source for randomized checks. Only raw mt19937_64 output is used, so
/// sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (engine_() >> 17) & 1; }

 private:
  std::mt19937_64 engine_;
};

struct RandomPolyOptions {
  unsigned max_degree = 3;
  unsigned max_terms = 4;
  long coefficient_range = 3;  // nonzero integers in [-range, range], occasionally halved
};

/// Random polynomial whose terms all have `parity`, built from the listed
/// generators (all of them when `allowed` is empty). May be zero when the
/// parity cannot be realised.
GradedPoly random_homogeneous_poly(const ChartPtr& chart, Parity parity, Rng& rng,
                                   const RandomPolyOptions& options = {},
                                   std::span<const std::size_t> allowed = {});

/// Random vector field with the given parity; components drawn as above.
VectorField random_homogeneous_field(const ChartPtr& chart, Parity parity, Rng& rng,
                                     const RandomPolyOptions& options = {});

}  // namespace linfty
