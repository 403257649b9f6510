#include "linfty/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace linfty {

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

Section& Report::section(std::string title) {
  sections.push_back({std::move(title), {}});
  return sections.back();
}

void Report::add_lines(Section& s, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) s.lines.push_back(line);
}

Check& Report::check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail), std::nullopt});
  return checks.back();
}

std::string Report::render_text() const {
  std::ostringstream os;
  os << command;
  if (!subject.empty()) os << " " << subject;
  os << "\n";
  for (const auto& s : sections) {
    os << "\n" << s.title << ":\n";
    for (const auto& l : s.lines) os << "  " << l << "\n";
  }
  if (!checks.empty()) {
    os << "\nchecks:\n";
    for (const auto& c : checks) {
      os << "  " << (c.ok ? "PASS" : "FAIL") << " " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << "\n";
      if (c.witness) {
        std::istringstream in(*c.witness);
        std::string line;
        os << "    witness:\n";
        while (std::getline(in, line)) os << "      " << line << "\n";
      }
    }
  }
  if (timing_ms) os << "\ntime: " << std::fixed << std::setprecision(1) << *timing_ms << " ms\n";
  os << "\nstatus: " << (ok() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string Report::render_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["subject"] = subject;
  doc["status"] = ok() ? "pass" : "fail";
  auto secs = nlohmann::ordered_json::array();
  for (const auto& s : sections) secs.push_back({{"title", s.title}, {"lines", s.lines}});
  doc["sections"] = secs;
  auto cs = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json o{{"name", c.name}, {"status", c.ok ? "pass" : "fail"}, {"detail", c.detail}};
    if (c.witness) o["witness"] = *c.witness;
    cs.push_back(o);
  }
  doc["checks"] = cs;
  if (timing_ms) doc["timing_ms"] = *timing_ms;
  return doc.dump(2) + "\n";
}

}  // namespace linfty
