#include "linfty/charts.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <sstream>

#include "linfty/errors.hpp"

namespace linfty {

namespace {

constexpr MultiWeight kMomentumWeight{0, 1};

/// Normal order groups coordinates by bi-weight class. With this order the two
/// double vector bundle morphisms map generators to generators in the same
/// positions, so pulling back never reorders odd factors.
int weight_class(MultiWeight w) {
  if (w == MultiWeight{0, 0}) return 0;
  if (w == MultiWeight{-1, 1}) return 1;
  if (w == MultiWeight{0, 1}) return 2;
  if (w == MultiWeight{1, 0}) return 3;
  return 4;
}

std::string family(const std::string& name) {
  auto end = name.find_last_not_of("0123456789");
  return name.substr(0, end + 1);
}

ChartPtr base_fibre_chart(const BundlePresentation& b, std::string label, const char* fibre_name,
                          bool flip_fibre, MultiWeight fibre_weight) {
  std::vector<Generator> gens;
  for (std::size_t a = 0; a < b.base.size(); ++a)
    gens.push_back({"x" + std::to_string(a + 1), b.base[a], {0, 0}, Role::base, static_cast<int>(a)});
  for (std::size_t f = 0; f < b.fibre.size(); ++f) {
    const Parity p = flip_fibre ? flip(b.fibre[f]) : b.fibre[f];
    gens.push_back({fibre_name + std::to_string(f + 1), p, fibre_weight, Role::fibre, static_cast<int>(f)});
  }
  return std::make_shared<const Chart>(std::move(label), ChartKind::base_fibre, std::move(gens));
}

ChartPtr cotangent(const ChartPtr& c, ChartKind kind) {
  if (c->is_phase_space())
    throw ChartKindError("chart '" + c->label() + "' is already a phase space");
  const bool odd = kind == ChartKind::odd_cotangent;

  struct Entry {
    Generator gen;
    int parent_index;
    int partner_key;  // parent index of the pair this entry belongs to
  };
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < c->size(); ++j) {
    const Generator& z = (*c)[j];
    entries.push_back({z, static_cast<int>(j), static_cast<int>(j)});
    Generator conj;
    const bool base = z.role == Role::base;
    if (base)
      conj.name = (odd ? "xstar" : "p") + std::to_string(z.index + 1);
    else
      conj.name = (odd ? family(z.name) + "star" : "pi") + std::to_string(z.index + 1);
    conj.parity = odd ? flip(z.parity) : z.parity;
    conj.weight = kMomentumWeight - z.weight;
    conj.role = base ? Role::base_conjugate : Role::fibre_conjugate;
    conj.index = z.index;
    entries.push_back({conj, -1, static_cast<int>(j)});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return weight_class(a.gen.weight) < weight_class(b.gen.weight);
  });

  std::vector<Generator> gens;
  std::vector<int> parent_index;
  std::vector<int> partner(entries.size(), -1);
  for (const auto& e : entries) {
    gens.push_back(e.gen);
    parent_index.push_back(e.parent_index);
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t k = 0; k < entries.size(); ++k)
      if (k != i && entries[k].partner_key == entries[i].partner_key) partner[i] = static_cast<int>(k);

  std::string label = (odd ? "PiT*(" : "T*(") + c->label() + ")";
  return std::make_shared<const Chart>(std::move(label), kind, std::move(gens), c, std::move(parent_index),
                                       std::move(partner));
}

}  // namespace

ChartPtr chart_PiE(const BundlePresentation& b) { return base_fibre_chart(b, "PiE", "xi", true, {-1, 1}); }

ChartPtr chart_PiE_dual(const BundlePresentation& b) {
  return base_fibre_chart(b, "PiE*", "eta", true, {1, 0});
}

ChartPtr chart_E_dual(const BundlePresentation& b) { return base_fibre_chart(b, "E*", "e", false, {1, 0}); }

ChartPtr chart_even_cotangent(const ChartPtr& c) { return cotangent(c, ChartKind::even_cotangent); }

ChartPtr chart_odd_cotangent(const ChartPtr& c) { return cotangent(c, ChartKind::odd_cotangent); }

GradedPoly restrict_to_zero_section(const GradedPoly& f) {
  const Chart& phase = *f.chart();
  if (!phase.is_phase_space())
    throw ChartKindError("restrict_to_zero_section: '" + phase.label() + "' is not a phase space");
  const ChartPtr& parent = phase.parent();
  GradedPoly out(parent);
  for (const auto& [m, c] : f.terms()) {
    Monomial reduced(parent->size());
    bool survives = true;
    for (std::size_t i = 0; i < m.size() && survives; ++i) {
      if (m[i] == 0) continue;
      const int j = phase.parent_index(i);
      if (j < 0)
        survives = false;
      else
        reduced.set(static_cast<std::size_t>(j), m[i]);
    }
    // Parent coordinates keep their relative order, so there is no sign.
    if (survives) out.add_term(reduced, c);
  }
  return out;
}

GradedPoly lift_to_phase_space(const GradedPoly& f, const ChartPtr& phase) {
  if (!phase->is_phase_space() || !same_chart(phase->parent(), f.chart()))
    throw ChartMismatch("lift_to_phase_space: '" + phase->label() + "' is not a phase space over '" +
                        f.chart()->label() + "'");
  GradedPoly out(phase);
  for (const auto& [m, c] : f.terms()) {
    Monomial lifted(phase->size());
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j]) lifted.set(phase->lifted_index(j), m[j]);
    out.add_term(lifted, c);
  }
  return out;
}

Bundle::Bundle(BundlePresentation presentation)
    : presentation_(std::move(presentation)),
      pi_e_(chart_PiE(presentation_)),
      pi_e_dual_(chart_PiE_dual(presentation_)),
      e_dual_(chart_E_dual(presentation_)),
      t_pi_e_(chart_even_cotangent(pi_e_)),
      t_pi_e_dual_(chart_even_cotangent(pi_e_dual_)),
      pit_pi_e_(chart_odd_cotangent(pi_e_)),
      pit_e_dual_(chart_odd_cotangent(e_dual_)) {}

std::vector<ChartPtr> Bundle::all_charts() const {
  return {pi_e_, pi_e_dual_, e_dual_, t_pi_e_, t_pi_e_dual_, pit_pi_e_, pit_e_dual_};
}

std::string describe_chart(const Chart& chart) {
  std::size_t width = 4;
  for (const auto& g : chart.generators()) width = std::max(width, g.name.size());
  std::ostringstream os;
  os << chart.label() << " (" << chart.size() << " generators)\n";
  os << "  " << std::left << std::setw(static_cast<int>(width)) << "name" << "  parity  weight\n";
  for (const auto& g : chart.generators())
    os << "  " << std::left << std::setw(static_cast<int>(width)) << g.name << "  " << std::setw(6)
       << to_string(g.parity) << "  " << to_string(g.weight) << "\n";
  return os.str();
}

}  // namespace linfty
