#pragma once

#include <map>
#include <string>
#include <vector>

#include "linfty/charts.hpp"
#include "linfty/errors.hpp"
#include "linfty/fields.hpp"
#include "linfty/graded_poly.hpp"

namespace linfty {

/// A bundle together with a vector field on PiE. Most operations below want Q
/// homological, but the type does not insist so negative controls can be built.
struct Algebroid {
  std::string name;
  Bundle bundle;
  VectorField q;

  Algebroid(std::string name, Bundle bundle, VectorField q);
};

/// Thrown by the checked builders; carries [Q,Q].
class NotHomological : public Error {
 public:
  explicit NotHomological(VectorField witness);
  const VectorField& witness() const { return witness_; }

 private:
  VectorField witness_;
};

/// A canonical double vector bundle morphism R: domain -> codomain, stored as
/// the pullback R* (codomain generators as polynomials on the domain) and its
/// inverse.
class MorphismR {
 public:
  MorphismR(ChartPtr domain, ChartPtr codomain, SubstitutionMap pullback, SubstitutionMap inverse);

  const ChartPtr& domain() const { return domain_; }
  const ChartPtr& codomain() const { return codomain_; }
  /// R*: functions on the codomain to functions on the domain.
  GradedPoly pullback(const GradedPoly& f) const;
  /// (R^-1)*: functions on the domain to functions on the codomain.
  GradedPoly push(const GradedPoly& f) const;
  const SubstitutionMap& pullback_map() const { return pullback_; }
  const SubstitutionMap& inverse_map() const { return inverse_; }
  MorphismR inverse() const;

 private:
  ChartPtr domain_, codomain_;
  SubstitutionMap pullback_, inverse_;
};

/// R: T*(PiE*) -> T*(PiE) with R*(pi_a) = eta_a and R*(xi^a) = (-1)^a pi^a.
MorphismR morphism_A1(const Bundle& b);
/// R: PiT*(E*) -> PiT*(PiE) with R*(xi^a) = estar^a and R*(xistar_a) = -e_a.
MorphismR morphism_A2(const Bundle& b);

enum class Flavor { schouten, poisson };
std::string_view to_string(Flavor f);

/// S on T*(PiE*) or P on PiT*(E*), with its self-bracket computed once.
class HigherStructure {
 public:
  HigherStructure(GradedPoly value, Flavor flavor);

  const GradedPoly& value() const { return value_; }
  Flavor flavor() const { return flavor_; }
  const ChartPtr& chart() const { return value_.chart(); }
  /// {S,S} or [[P,P]].
  const GradedPoly& self_bracket() const { return self_bracket_; }
  bool is_self_commuting() const { return self_bracket_.is_zero(); }

 private:
  GradedPoly value_;
  Flavor flavor_;
  GradedPoly self_bracket_;
};

/// (R^-1)*(sigma Q) without any check on Q.
GradedPoly schouten_function(const Algebroid& a);
/// (R^-1)*(varsigma Q) without any check on Q.
GradedPoly poisson_function(const Algebroid& a);

/// Throws ParityError when Q is even and NotHomological when [Q,Q] != 0.
HigherStructure build_schouten(const Algebroid& a);
HigherStructure build_poisson(const Algebroid& a);

struct WeightAudit {
  std::map<MultiWeight, std::size_t> histogram;  // bi-weight -> number of terms
  std::vector<std::string> violations;           // rendered offending terms
  bool ok() const { return violations.empty(); }
};

/// Every term must have total weight 1 and bi-weight (1-n, n) with n >= 0.
WeightAudit total_weight_audit(const HigherStructure& h);

/// No fibre component of Q has a part independent of xi.
bool is_strict(const VectorField& q);

using Matrix = std::vector<std::vector<Rational>>;

Matrix identity_matrix(std::size_t n);
/// Throws Error on a singular or non-square matrix.
Matrix inverse(const Matrix& m);
/// Throws ParityError when T mixes fibre directions of different parity.
void require_parity_block(const Matrix& t, const BundlePresentation& b);

/// Q in the coordinates xibar^a = xi^b T_b^a, identity on the base.
VectorField transform_fibre(const VectorField& q, const Matrix& t);

/// The induced substitution on T*(PiE*) (flavor schouten) or PiT*(E*)
/// (flavor poisson) expressing old coordinates in the barred ones.
SubstitutionMap cotangent_lift(const Bundle& b, const Matrix& t, Flavor flavor);

struct NaturalityReport {
  bool schouten_equal = false;
  bool poisson_equal = false;
  bool lift_preserves_brackets = false;
  std::size_t bracket_trials = 0;
  bool ok() const { return schouten_equal && poisson_equal && lift_preserves_brackets; }
};

/// Rebuilds S and P from the transformed Q and compares with the lifted
/// originals; the lift is checked to preserve the canonical brackets on
/// `trials` random pairs drawn from `seed`.
NaturalityReport chart_change_naturality(const Algebroid& a, const Matrix& t, std::size_t trials = 100,
                                         std::uint64_t seed = 1);

}  // namespace linfty
