#pragma once

#include <optional>
#include <string>
#include <vector>

namespace linfty {

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
  std::optional<std::string> witness;  // rendered polynomial or field on failure
};

struct Section {
  std::string title;
  std::vector<std::string> lines;
};

/// Output of one CLI command. Sections and checks keep insertion order so
/// the text and JSON forms are byte-deterministic.
struct Report {
  std::string command;
  std::string subject;
  std::vector<Section> sections;
  std::vector<Check> checks;
  std::optional<double> timing_ms;

  bool ok() const;
  Section& section(std::string title);
  void add_lines(Section& s, const std::string& text);  // splits on newlines
  Check& check(std::string name, bool ok, std::string detail = {});

  std::string render_text() const;
  std::string render_json() const;
};

}  // namespace linfty
