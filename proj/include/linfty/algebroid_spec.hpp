#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "linfty/chart.hpp"
#include "linfty/construction.hpp"
#include "linfty/errors.hpp"
#include "linfty/rational.hpp"

namespace linfty {

/// Malformed or invalid spec document; `path` names the offending field,
/// e.g. "q_terms[2].coefficient".
class SpecError : public Error {
 public:
  SpecError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct NamedParity {
  std::string name;
  Parity parity = Parity::even;
  bool operator==(const NamedParity&) const = default;
};

struct BasePower {
  std::string name;
  unsigned power = 1;
  bool operator==(const BasePower&) const = default;
};

/// coefficient * base_monomial * monomial d/d(target), where `monomial` is
/// the ordered product of fibre coordinates as written.
struct QTerm {
  std::string target;
  Rational coefficient;
  std::vector<std::string> monomial;
  std::vector<BasePower> base_monomial;
  bool operator==(const QTerm&) const = default;
};

/// The input document. Base coordinates are named x1, x2, ... and fibre
/// coordinates xi1, xi2, ... in order; the fibre parity is that of the
/// direction of E, so xi_a has the opposite parity.
struct AlgebroidSpec {
  std::string name;
  std::vector<NamedParity> base;
  std::vector<NamedParity> fibre;
  std::vector<QTerm> q_terms;
  bool operator==(const AlgebroidSpec&) const = default;
};

/// Parses and validates a JSON document. Throws SpecError.
AlgebroidSpec parse_spec(std::string_view text);
/// Pretty-printed JSON that parse_spec reads back to an equal spec.
std::string render_spec(const AlgebroidSpec& spec);

/// Throws SpecError when a term has the wrong parity or names an unknown
/// coordinate.
Algebroid to_algebroid(const AlgebroidSpec& spec);
/// One term per monomial of Q in normal order.
AlgebroidSpec from_algebroid(const Algebroid& a);

}  // namespace linfty
