#pragma once

#include <vector>

#include "linfty/charts.hpp"
#include "linfty/graded_poly.hpp"

namespace linfty {

/// Parity-homogeneous derivation X = sum_z X^z d/dz (left derivatives).
class VectorField {
 public:
  /// Throws ParityError when a component's parity is not parity + parity(z).
  VectorField(ChartPtr chart, std::vector<GradedPoly> components, Parity parity);

  static VectorField zero(ChartPtr chart, Parity parity);
  /// The constant field d/dz.
  static VectorField coordinate(ChartPtr chart, std::size_t index);

  const ChartPtr& chart() const { return chart_; }
  Parity parity() const { return parity_; }
  const std::vector<GradedPoly>& components() const { return components_; }
  const GradedPoly& component(std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  /// X(f) = sum_z X^z * df/dz.
  GradedPoly operator()(const GradedPoly& f) const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator*=(const Rational& c);
  bool operator==(const VectorField& other) const;

  /// One line per nonzero component: "(expr) d/dz".
  std::string render() const;

 private:
  ChartPtr chart_;
  std::vector<GradedPoly> components_;
  Parity parity_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(const Rational& c, VectorField a);

GradedPoly apply(const VectorField& x, const GradedPoly& f);

/// Graded commutator X o Y - (-1)^(|X||Y|) Y o X.
VectorField commutator(const VectorField& x, const VectorField& y);

/// Odd and [Q,Q] = 0.
bool is_homological(const VectorField& q);

/// Canonical even bracket on an even cotangent chart, normalised by {p, x} = 1:
///   {f,g} = sum_pairs f<-d/dp . d/dx g - (-1)^(|x||p|) f<-d/dx . d/dp g.
/// Throws ChartKindError on any other chart.
GradedPoly canonical_poisson(const GradedPoly& f, const GradedPoly& g);
/// Canonical odd bracket on an odd cotangent chart, normalised by [[x*, x]] = 1,
/// with the same coordinate expression as the even bracket.
GradedPoly canonical_schouten(const GradedPoly& f, const GradedPoly& g);

/// sigma X = sum_z X^z p_z on `phase` = T*(X.chart()).
GradedPoly even_symbol(const VectorField& x, const ChartPtr& phase);
/// varsigma X = sum_z X^z z* on `phase` = PiT*(X.chart()).
GradedPoly odd_symbol(const VectorField& x, const ChartPtr& phase);

}  // namespace linfty
