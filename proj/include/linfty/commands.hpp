#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "linfty/construction.hpp"
#include "linfty/errors.hpp"
#include "linfty/report.hpp"

namespace linfty {

/// Bad command line or unreadable input; the CLI exits with status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct CommandOptions {
  std::uint64_t seed = 1;
  std::size_t max_arity = 4;
  std::optional<std::size_t> arity;
  std::size_t trials = 100;
  std::string flavor = "schouten";
  std::optional<std::string> matrix_file;
};

/// A builtin name or the path of a spec document.
Algebroid load_algebroid(const std::string& source);

Report describe_command(const Algebroid& a);
Report check_q_command(const Algebroid& a);
Report build_command(const Algebroid& a, Flavor flavor);
Report brackets_command(const Algebroid& a, const CommandOptions& o);
Report jacobiator_command(const Algebroid& a, const CommandOptions& o);
Report leibniz_command(const Algebroid& a, const CommandOptions& o);
Report naturality_command(const Algebroid& a, const Matrix& t, const CommandOptions& o);
Report statement_command(const Algebroid& a, const CommandOptions& o);

/// Reads a square matrix of rational strings (or integers) from JSON text.
Matrix parse_matrix(const std::string& text);

/// The whole command line; args excludes the program name. Returns the exit
/// status: 0 pass, 1 a check failed, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linfty
