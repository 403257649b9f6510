#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linfty/algebroid_spec.hpp"
#include "linfty/construction.hpp"
#include "linfty/random_poly.hpp"

namespace linfty {

/// Names accepted by `example`, in listing order.
const std::vector<std::string>& builtin_names();

/// Throws Error for an unknown name.
Algebroid builtin(std::string_view name);
AlgebroidSpec builtin_spec(std::string_view name);

/// The de Rham differential on R^n: Q = xi^A d/dx^A.
Algebroid de_rham(std::size_t n);
/// De Rham of R^(1|1): x1 even, x2 odd.
Algebroid super_de_rham();
/// so(3) with Q^1 perturbed by xi1 xi2; [Q,Q] != 0.
Algebroid so3_perturbed();
/// Point base, xi1 odd and xi2 even: Q = xi1 (xi2 + 1)^2 d/dxi2. Brackets of
/// arity 1, 2 and 3 on a fibre of mixed parity.
Algebroid mixed_point_fixture();

/// Q_P = -(P, .)_S on PiE*, read as an algebroid on the dual bundle.
/// Throws NotHomological when (P, P)_S != 0.
Algebroid poisson_algebroid(const Algebroid& a, const GradedPoly& multivector, std::string name);

/// Q pushed forward along z -> images[z], an invertible affine map given with
/// its inverse. Both maps send each coordinate of q's chart to a polynomial on
/// the same chart.
VectorField push_forward(const VectorField& q, const SubstitutionMap& images, const SubstitutionMap& inverse_images);

/// A homological field of rank <= 3 and degree <= 3: a seed fixture moved by
/// a random parity-preserving affine coordinate change and rescaled.
Algebroid random_homological(Rng& rng);

}  // namespace linfty
