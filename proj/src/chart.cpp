#include "linfty/chart.hpp"

#include <set>

#include "linfty/errors.hpp"

namespace linfty {

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::string to_string(MultiWeight w) {
  return "(" + std::to_string(w.first) + "," + std::to_string(w.second) + ")";
}

Chart::Chart(std::string label, ChartKind kind, std::vector<Generator> generators)
    : label_(std::move(label)), kind_(kind), generators_(std::move(generators)) {
  if (kind_ != ChartKind::base_fibre)
    throw ChartKindError("phase-space chart '" + label_ + "' needs a parent chart");
  validate();
}

Chart::Chart(std::string label, ChartKind kind, std::vector<Generator> generators, ChartPtr parent,
             std::vector<int> parent_index, std::vector<int> partner)
    : label_(std::move(label)),
      kind_(kind),
      generators_(std::move(generators)),
      parent_(std::move(parent)),
      parent_index_(std::move(parent_index)),
      partner_(std::move(partner)) {
  if (kind_ == ChartKind::base_fibre || !parent_)
    throw ChartKindError("chart '" + label_ + "' is not a well-formed phase space");
  if (parent_index_.size() != generators_.size() || partner_.size() != generators_.size())
    throw Error("chart '" + label_ + "': phase-space tables have the wrong length");
  validate();
}

void Chart::validate() const {
  std::set<std::string_view> names;
  for (const auto& g : generators_) {
    if (!names.insert(g.name).second)
      throw Error("chart '" + label_ + "': duplicate generator '" + g.name + "'");
    if (g.role == Role::base && g.weight != MultiWeight{0, 0})
      throw Error("chart '" + label_ + "': base coordinate '" + g.name + "' must have weight (0,0)");
  }
  if (!is_phase_space()) return;
  std::size_t lifted = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const int j = partner_[i];
    if (j < 0 || static_cast<std::size_t>(j) >= generators_.size() || partner_[j] != static_cast<int>(i))
      throw Error("chart '" + label_ + "': broken conjugate pairing at '" + generators_[i].name + "'");
    const bool from_parent = parent_index_[i] >= 0;
    if (from_parent == (parent_index_[j] >= 0))
      throw Error("chart '" + label_ + "': each pair needs one coordinate and one momentum");
    if (from_parent) {
      ++lifted;
      const auto& src = (*parent_)[static_cast<std::size_t>(parent_index_[i])];
      if (src.parity != generators_[i].parity || src.weight != generators_[i].weight)
        throw Error("chart '" + label_ + "': coordinate '" + generators_[i].name +
                    "' disagrees with its parent");
      // Conjugate parity: equal on even cotangent bundles, flipped on odd ones.
      const Parity expected =
          kind_ == ChartKind::even_cotangent ? src.parity : flip(src.parity);
      if (generators_[j].parity != expected)
        throw Error("chart '" + label_ + "': conjugate '" + generators_[j].name +
                    "' has the wrong parity");
    }
  }
  if (lifted != parent_->size())
    throw Error("chart '" + label_ + "': not every parent coordinate has a conjugate");
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Chart::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownGenerator("no generator '" + std::string(name) + "' on chart '" + label_ + "'");
}

std::vector<std::size_t> Chart::indices_with_role(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].role == role) out.push_back(i);
  return out;
}

std::size_t Chart::lifted_index(std::size_t parent_j) const {
  for (std::size_t i = 0; i < parent_index_.size(); ++i)
    if (parent_index_[i] == static_cast<int>(parent_j)) return i;
  throw ChartKindError("chart '" + label_ + "' has no lift of parent coordinate");
}

bool Chart::operator==(const Chart& other) const {
  if (label_ != other.label_ || kind_ != other.kind_ || generators_ != other.generators_ ||
      parent_index_ != other.parent_index_ || partner_ != other.partner_)
    return false;
  return same_chart(parent_, other.parent_);
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace linfty
