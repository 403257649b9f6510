#pragma once

#include <vector>

#include "linfty/chart.hpp"
#include "linfty/graded_poly.hpp"

namespace linfty {

/// Local data of a vector bundle E -> M: parities of the base coordinates and
/// of the fibre directions of E. The coordinate xi on PiE has the opposite
/// parity of its fibre direction.
struct BundlePresentation {
  std::vector<Parity> base;
  std::vector<Parity> fibre;

  bool operator==(const BundlePresentation&) const = default;
};

/// {x, xi} on PiE; xi has parity fibre+1 and bi-weight (-1,1).
ChartPtr chart_PiE(const BundlePresentation& b);
/// {x, eta} on PiE*; eta has parity fibre+1 and bi-weight (1,0).
ChartPtr chart_PiE_dual(const BundlePresentation& b);
/// {x, e} on E*; e has parity fibre and bi-weight (1,0).
ChartPtr chart_E_dual(const BundlePresentation& b);

/// T*(c): one conjugate per coordinate, same parity, weight (0,1) - w(z).
/// Throws ChartKindError when c is already a phase space.
ChartPtr chart_even_cotangent(const ChartPtr& c);
/// PiT*(c): one conjugate per coordinate, flipped parity, weight (0,1) - w(z).
ChartPtr chart_odd_cotangent(const ChartPtr& c);

/// Sets all momenta to zero and returns the result on the parent chart.
/// Throws ChartKindError when f does not live on a phase space.
GradedPoly restrict_to_zero_section(const GradedPoly& f);
/// Pulls a function on the parent chart back along the cotangent projection.
GradedPoly lift_to_phase_space(const GradedPoly& f, const ChartPtr& phase);

/// All charts derived from one presentation, built once and shared.
class Bundle {
 public:
  explicit Bundle(BundlePresentation presentation);

  const BundlePresentation& presentation() const { return presentation_; }
  std::size_t base_dim() const { return presentation_.base.size(); }
  std::size_t rank() const { return presentation_.fibre.size(); }

  const ChartPtr& pi_e() const { return pi_e_; }                  // PiE
  const ChartPtr& pi_e_dual() const { return pi_e_dual_; }        // PiE*
  const ChartPtr& e_dual() const { return e_dual_; }              // E*
  const ChartPtr& t_pi_e() const { return t_pi_e_; }              // T*(PiE)
  const ChartPtr& t_pi_e_dual() const { return t_pi_e_dual_; }    // T*(PiE*)
  const ChartPtr& pit_pi_e() const { return pit_pi_e_; }          // PiT*(PiE)
  const ChartPtr& pit_e_dual() const { return pit_e_dual_; }      // PiT*(E*)

  /// The seven charts in a fixed order, for listings.
  std::vector<ChartPtr> all_charts() const;

 private:
  BundlePresentation presentation_;
  ChartPtr pi_e_, pi_e_dual_, e_dual_, t_pi_e_, t_pi_e_dual_, pit_pi_e_, pit_e_dual_;
};

/// Aligned name/parity/weight table.
std::string describe_chart(const Chart& chart);

}  // namespace linfty
