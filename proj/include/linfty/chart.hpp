#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linfty {

/// Grassmann parity, an element of Z/2.
enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr Parity& operator+=(Parity& a, Parity b) { return a = a + b; }
constexpr Parity flip(Parity a) { return a + Parity::odd; }
constexpr int bit(Parity a) { return static_cast<int>(a); }
constexpr Parity parity_from_int(long v) { return (v % 2 == 0) ? Parity::even : Parity::odd; }
/// (-1)^(a*b) as +1 / -1.
constexpr int koszul(Parity a, Parity b) { return (bit(a) & bit(b)) ? -1 : 1; }

std::string_view to_string(Parity p);

/// Bi-weight (w1, w2) in Z^2; the total weight is w1 + w2.
struct MultiWeight {
  int first = 0;
  int second = 0;

  constexpr int total() const { return first + second; }
  constexpr MultiWeight operator+(MultiWeight o) const { return {first + o.first, second + o.second}; }
  constexpr MultiWeight operator-(MultiWeight o) const { return {first - o.first, second - o.second}; }
  constexpr MultiWeight& operator+=(MultiWeight o) { return *this = *this + o; }
  constexpr auto operator<=>(const MultiWeight&) const = default;
};

std::string to_string(MultiWeight w);

/// Where a coordinate sits in a (phase-space) chart.
enum class Role : std::uint8_t { base, fibre, base_conjugate, fibre_conjugate };

struct Generator {
  std::string name;
  Parity parity = Parity::even;
  MultiWeight weight;
  Role role = Role::base;
  int index = 0;  // position inside its family (x1 -> 0, x2 -> 1, ...)

  bool operator==(const Generator&) const = default;
};

enum class ChartKind : std::uint8_t { base_fibre, even_cotangent, odd_cotangent };

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// An ordered list of graded coordinates. The order is the normal-form order of
/// every polynomial living on the chart.
///
/// A phase-space chart (even or odd cotangent) additionally remembers its parent
/// chart, where each parent coordinate landed, and the conjugate partner of
/// every coordinate.
class Chart {
 public:
  Chart(std::string label, ChartKind kind, std::vector<Generator> generators);
  Chart(std::string label, ChartKind kind, std::vector<Generator> generators, ChartPtr parent,
        std::vector<int> parent_index, std::vector<int> partner);

  const std::string& label() const { return label_; }
  ChartKind kind() const { return kind_; }
  bool is_phase_space() const { return kind_ != ChartKind::base_fibre; }

  std::size_t size() const { return generators_.size(); }
  std::span<const Generator> generators() const { return generators_; }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownGenerator.
  std::size_t index_of(std::string_view name) const;
  std::vector<std::size_t> indices_with_role(Role role) const;

  /// Phase-space structure; empty for base-fibre charts.
  const ChartPtr& parent() const { return parent_; }
  /// Index in the parent chart, or -1 for conjugate momenta.
  int parent_index(std::size_t i) const { return parent_index_[i]; }
  /// Index of the canonical partner of coordinate i.
  int partner(std::size_t i) const { return partner_[i]; }
  /// Index in this chart of parent coordinate j.
  std::size_t lifted_index(std::size_t parent_j) const;

  bool operator==(const Chart& other) const;

 private:
  void validate() const;

  std::string label_;
  ChartKind kind_;
  std::vector<Generator> generators_;
  ChartPtr parent_;
  std::vector<int> parent_index_;
  std::vector<int> partner_;
};

/// Pointer identity or structural equality.
bool same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace linfty
