#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linfty/construction.hpp"
#include "linfty/fields.hpp"
#include "linfty/graded_poly.hpp"

namespace linfty {

// ---------------------------------------------------------------------------
// Ambient Lie superalgebras for derived brackets. Each one supplies the
// bracket, the projector onto an abelian subalgebra and the parity that makes
// the bracket an ordinary (even) Lie superalgebra bracket.

/// Functions on an even cotangent chart under the canonical Poisson bracket.
/// The projector restricts to the zero section and lifts back.
struct PoissonAmbient {
  using Element = GradedPoly;
  ChartPtr phase;

  Element zero() const { return GradedPoly(phase); }
  Element bracket(const Element& a, const Element& b) const { return canonical_poisson(a, b); }
  Element project(const Element& a) const { return lift_to_phase_space(restrict_to_zero_section(a), phase); }
  Parity parity(const Element& a) const { return require_parity(a, "derived bracket argument"); }
};

/// Functions on an odd cotangent chart under the canonical Schouten bracket.
/// With the parity shifted by one the odd bracket is an ordinary Lie
/// superalgebra bracket, so the same machinery applies.
struct SchoutenAmbient {
  using Element = GradedPoly;
  ChartPtr phase;

  Element zero() const { return GradedPoly(phase); }
  Element bracket(const Element& a, const Element& b) const { return canonical_schouten(a, b); }
  Element project(const Element& a) const { return lift_to_phase_space(restrict_to_zero_section(a), phase); }
  Parity parity(const Element& a) const { return flip(require_parity(a, "derived bracket argument")); }
};

/// Vector fields on a chart without base coordinates under the commutator,
/// projected onto constant fields (evaluation at the origin).
struct VectorFieldAmbient {
  using Element = VectorField;
  ChartPtr chart;

  /// Throws ChartKindError when the chart has base coordinates, where the
  /// constant-part projector is not distributive.
  explicit VectorFieldAmbient(ChartPtr c);

  Element zero() const { return VectorField::zero(chart, Parity::even); }
  Element bracket(const Element& a, const Element& b) const { return commutator(a, b); }
  Element project(const Element& a) const;
  Parity parity(const Element& a) const { return a.parity(); }
};

/// Higher derived brackets (a1..an) = pi[...[[D, a1], a2]..., an] and the
/// n-th Jacobiator computed two ways.
template <class Ambient>
class DerivedBracketEngine {
 public:
  using Element = typename Ambient::Element;

  DerivedBracketEngine(Ambient ambient, Element delta) : ambient_(std::move(ambient)), delta_(std::move(delta)) {}

  const Ambient& ambient() const { return ambient_; }
  const Element& delta() const { return delta_; }

  /// Nested brackets before projection.
  Element nested(const Element& start, std::span<const Element> args) const {
    Element acc = start;
    for (const auto& a : args) {
      if (acc.is_zero()) break;
      acc = ambient_.bracket(acc, a);
    }
    return acc;
  }

  /// r = 0 gives pi(D).
  Element bracket(std::span<const Element> args) const { return ambient_.project(nested(delta_, args)); }

  /// D^2 = 1/2 [D, D].
  Element delta_squared() const { return Rational(1, 2) * ambient_.bracket(delta_, delta_); }

  /// Sum over k = 0..n and (k, n-k)-unshuffles s of
  ///   eps(s) ((a_s1 .. a_sk), a_s(k+1) .. a_sn),
  /// with eps the Koszul sign of the reordering.
  Element jacobiator_unshuffle(std::span<const Element> args) const {
    const std::size_t n = args.size();
    std::vector<Parity> p;
    for (const auto& a : args) p.push_back(ambient_.parity(a));
    Element out = ambient_.zero();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Element> inner, outer;
      int sign = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          inner.push_back(args[i]);
          // every earlier argument left outside now stands behind a_i
          for (std::size_t j = 0; j < i; ++j)
            if (!(mask & (1u << j))) sign *= koszul(p[i], p[j]);
        } else {
          outer.push_back(args[i]);
        }
      }
      Element first = bracket(inner);
      if (first.is_zero()) continue;
      Element term = ambient_.project(nested(nested(delta_, std::span<const Element>(&first, 1)), outer));
      if (!term.is_zero()) out += Rational(sign) * term;
    }
    return out;
  }

  /// The derived bracket generated by D^2.
  Element jacobiator_derived(std::span<const Element> args) const {
    return ambient_.project(nested(delta_squared(), args));
  }

 private:
  Ambient ambient_;
  Element delta_;
};

using SchoutenEngine = DerivedBracketEngine<PoissonAmbient>;  // generator S on T*(PiE*)
using PoissonEngine = DerivedBracketEngine<SchoutenAmbient>;  // generator P on PiT*(E*)
using QEngine = DerivedBracketEngine<VectorFieldAmbient>;     // generator Q on PiU

SchoutenEngine schouten_engine(const HigherStructure& s);
SchoutenEngine schouten_engine(GradedPoly s);
PoissonEngine poisson_engine(const HigherStructure& p);
PoissonEngine poisson_engine(GradedPoly p);
QEngine q_engine(const VectorField& q);

/// (X1..Xr)_S = {...{{S, X1}, X2}..., Xr}| for X on PiE*. Throws ChartMismatch or
/// Error on a flavor mismatch.
GradedPoly higher_schouten_bracket(const HigherStructure& s, std::span<const GradedPoly> xs);
GradedPoly higher_schouten_bracket(const SchoutenEngine& e, std::span<const GradedPoly> xs);
/// {F1..Fr}_P = (-1)^eps [[...[[P, F1]]..., Fr]]| for F on E*, with
/// eps = F1 (r-1) + F2 (r-2) + ... + F(r-1) + r.
GradedPoly higher_poisson_bracket(const HigherStructure& p, std::span<const GradedPoly> fs);
GradedPoly higher_poisson_bracket(const PoissonEngine& e, std::span<const GradedPoly> fs);
int higher_poisson_sign(std::span<const GradedPoly> fs);

template <class Element>
struct JacobiatorResult {
  Element unshuffle;
  Element derived;
  bool agree() const { return unshuffle == derived; }
};

/// Both Jacobiator computations for the given arguments.
template <class Ambient>
JacobiatorResult<typename Ambient::Element> jacobiator(const DerivedBracketEngine<Ambient>& e,
                                                      std::span<const typename Ambient::Element> args) {
  return {e.jacobiator_unshuffle(args), e.jacobiator_derived(args)};
}

// ---------------------------------------------------------------------------
// Multiderivation checks.

enum class LeibnizRule { schouten, poisson };

using MultiBracket = std::function<GradedPoly(std::span<const GradedPoly>)>;

struct LeibnizReport {
  std::size_t arity = 0;
  std::size_t trials = 0;
  std::optional<std::string> witness;  // first failure
  bool ok() const { return !witness.has_value(); }
};

/// Checks (a1..a(r-1), a_r b) = (a1..a_r) b + (-1)^(a_r (a1+..+a(r-1)+s)) a_r (a1..a(r-1), b)
/// with s = 1 for Schouten and s = r for Poisson brackets, on random
/// homogeneous polynomials over `chart`.
LeibnizReport leibniz_check(const MultiBracket& bracket, LeibnizRule rule, const ChartPtr& chart, std::size_t r,
                            std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Structure constants and bracket tables.

/// Q^z_{a1..ar}(x) = d_a1 ... d_ar Q^z at xi = 0 (d_ar applied first), as a
/// function on the base part of PiE. `fibre` indexes the fibre directions.
GradedPoly structure_tensor(const VectorField& q, std::size_t target, std::span<const std::size_t> fibre);

struct BracketTable {
  enum class Convention { symmetric, skew };

  Convention convention = Convention::symmetric;
  std::size_t arity = 0;
  Parity parity = Parity::odd;
  int weight = 1;  // 1 - arity, in the natural fibre weight
  /// Nondecreasing fibre index tuples with nonzero values, on PiE* (symmetric,
  /// s_b as eta_b) or E* (skew, T_b as e_b).
  std::map<std::vector<std::size_t>, GradedPoly> entries;

  std::string render() const;
};

/// (s_a1..s_ar) = (-1)^(a1+..+ar) Q^b_{a1..ar} s_b.
GradedPoly symmetric_bracket(const Algebroid& a, std::span<const std::size_t> tuple);
/// {T_a1..T_ar} from the symmetric bracket through the parity shift.
GradedPoly skew_bracket(const Algebroid& a, std::span<const std::size_t> tuple);
/// {T_a1..T_ar} = (-1)^(sum a_i (r-i+1) + 1) Q^b_{a1..ar} T_b, straight from the formula.
GradedPoly skew_bracket_formula(const Algebroid& a, std::span<const std::size_t> tuple);

BracketTable symmetric_bracket_table(const Algebroid& a, std::size_t r);
BracketTable skew_bracket_table(const Algebroid& a, std::size_t r);

/// The same tables computed from S and P by derived brackets of eta and e.
BracketTable derived_schouten_table(const Algebroid& a, const HigherStructure& s, std::size_t r);
BracketTable derived_poisson_table(const Algebroid& a, const HigherStructure& p, std::size_t r);

/// Nondecreasing tuples of length r over n indices.
std::vector<std::vector<std::size_t>> sorted_tuples(std::size_t n, std::size_t r);

/// a(s_a1..s_ar)[f] = ([...[Q, d_a1]..., d_ar])(f) at xi = 0, f a base function on PiE.
GradedPoly higher_anchor(const Algebroid& a, std::span<const std::size_t> tuple, const GradedPoly& f);

// ---------------------------------------------------------------------------
// Closed forms on an algebra (point base).

/// (X1..Xr)_S = (-1)^eps Q^b_{ar..a1} eta_b dX1/deta_a1 ... dXr/deta_ar, with
/// eps = sum_{i<r} X_i (a_{i+1} + .. + a_r + r + i) + a_1 + .. + a_r.
GradedPoly lie_schouten_formula(const Algebroid& a, std::span<const GradedPoly> xs);

/// Readings of the printed Lie-Poisson sign factor (see README).
struct LiePoissonReading {
  bool descending_shift = true;  // row F_i (r - i) rather than F_i (r - 1)
  bool last_row_shift = true;    // (F_{r-1}+1)(a_r + 1) rather than (F_{r-1}+1) a_r
};
/// {F1..Fr}_P = (-1)^eps Q^b_{ar..a1} e_b dF1/de_a1 ... dFr/de_ar.
GradedPoly lie_poisson_formula(const Algebroid& a, std::span<const GradedPoly> fs, LiePoissonReading reading = {});

// ---------------------------------------------------------------------------

struct StatementEntry {
  std::string flavor;  // "schouten" or "poisson"
  std::size_t arity;
  std::vector<std::size_t> tuple;
  GradedPoly derived;
  GradedPoly expected;
  bool ok() const { return derived == expected; }
};

struct StatementReport {
  std::vector<StatementEntry> entries;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// Derived brackets of S (on eta) and P (on e) against the structure-constant
/// brackets, for all arities 0..max_arity. Requires a point base.
StatementReport weight_one_restriction_check(const Algebroid& a, std::size_t max_arity);

}  // namespace linfty
