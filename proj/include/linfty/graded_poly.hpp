#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linfty/chart.hpp"
#include "linfty/rational.hpp"

namespace linfty {

/// Exponent vector over a chart, indexed by generator position. Odd generators
/// carry exponent 0 or 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exponents_(n, 0) {}

  std::size_t size() const { return exponents_.size(); }
  std::uint16_t operator[](std::size_t i) const { return exponents_[i]; }
  void set(std::size_t i, std::uint16_t e) { exponents_[i] = e; }
  unsigned degree() const;
  bool is_one() const { return degree() == 0; }

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint16_t> exponents_;
};

/// Reverse-lexicographic: exponents are compared from the last generator down,
/// smaller first. On phase spaces this lists momentum-of-base terms before
/// fibre terms and the constant term first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

Parity monomial_parity(const Chart& chart, const Monomial& m);
MultiWeight monomial_weight(const Chart& chart, const Monomial& m);

/// Exact polynomial in supercommuting generators with rational coefficients.
///
/// Terms are kept in normal form (generators in chart order, odd exponents at
/// most one) and zero coefficients are never stored, so equality is a plain
/// map comparison.
class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  explicit GradedPoly(ChartPtr chart);

  static GradedPoly constant(ChartPtr chart, const Rational& c);
  static GradedPoly generator(ChartPtr chart, std::size_t index);
  static GradedPoly generator(ChartPtr chart, std::string_view name);
  static GradedPoly monomial(ChartPtr chart, Monomial m, const Rational& c = 1);

  const ChartPtr& chart() const { return chart_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * m, where m is already in normal form.
  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  GradedPoly& operator+=(const GradedPoly& g);
  GradedPoly& operator-=(const GradedPoly& g);
  GradedPoly& operator*=(const Rational& c);

  bool operator==(const GradedPoly& g) const;

  /// Deterministic text form, e.g. "x1^2*xi1 - 1/2*pi1*eta2".
  std::string render() const;

 private:
  ChartPtr chart_;
  Terms terms_;
};

GradedPoly operator+(GradedPoly f, const GradedPoly& g);
GradedPoly operator-(GradedPoly f, const GradedPoly& g);
GradedPoly operator-(GradedPoly f);
GradedPoly operator*(const Rational& c, GradedPoly f);
GradedPoly operator*(const GradedPoly& f, const GradedPoly& g);
std::ostream& operator<<(std::ostream& os, const GradedPoly& f);

/// Supercommutative product. Throws ChartMismatch.
GradedPoly multiply(const GradedPoly& f, const GradedPoly& g);

/// nullopt when the terms disagree ("inhomogeneous"); the zero polynomial is even.
std::optional<Parity> parity_of(const GradedPoly& f);
/// nullopt when the terms disagree; the zero polynomial has weight (0,0).
std::optional<MultiWeight> weight_of(const GradedPoly& f);
/// Throws ParityError on an inhomogeneous polynomial.
Parity require_parity(const GradedPoly& f, std::string_view what);

/// Left partial derivative: move the generator to the front, then strike it.
GradedPoly left_derivative(const GradedPoly& f, std::size_t index);
GradedPoly left_derivative(const GradedPoly& f, std::string_view name);
/// Right partial derivative: move the generator to the back, then strike it.
GradedPoly right_derivative(const GradedPoly& f, std::size_t index);

/// Images of the source chart's generators; nullopt marks "not mapped".
using SubstitutionMap = std::vector<std::optional<GradedPoly>>;

/// Algebra homomorphism sending each generator to its image on `target`.
/// Throws ParityError when an image does not match its generator's parity and
/// UnknownGenerator when f uses an unmapped generator.
GradedPoly substitute(const GradedPoly& f, const SubstitutionMap& images, const ChartPtr& target);

/// Sets every generator in `killed` to zero (a homomorphism onto the same chart).
GradedPoly drop_generators(const GradedPoly& f, std::span<const std::size_t> killed);

}  // namespace linfty
