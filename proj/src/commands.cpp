#include "linfty/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "linfty/algebroid_spec.hpp"
#include "linfty/builtins.hpp"
#include "linfty/homotopy.hpp"

namespace linfty {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parities(const std::vector<Parity>& ps, const std::string& prefix) {
  if (ps.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    out += (i ? ", " : "") + prefix + std::to_string(i + 1) + " " + std::string(to_string(ps[i]));
  return out;
}

std::string fibre_tuple_text(std::span<const std::size_t> t, const char* prefix) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + std::string(prefix) + std::to_string(t[i] + 1);
  return out + ")";
}

std::vector<std::size_t> arities(const CommandOptions& o, std::size_t from) {
  if (o.arity) return {*o.arity};
  std::vector<std::size_t> out;
  for (std::size_t r = from; r <= o.max_arity; ++r) out.push_back(r);
  return out;
}

/// Runs both Jacobiator computations on every sorted tuple of `args`.
template <class Engine, class Element, class Render>
void jacobiator_run(Report& rep, const std::string& label, const Engine& engine,
                    const std::vector<Element>& args, const std::vector<std::string>& names,
                    const std::vector<std::size_t>& ns, Render render) {
  std::vector<std::string> lines;
  for (auto n : ns) {
    std::size_t tuples = 0, disagree = 0, nonzero = 0;
    std::optional<std::string> disagree_witness, nonzero_witness;
    for (const auto& t : sorted_tuples(args.size(), n)) {
      std::vector<Element> xs;
      std::string text = "J(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        xs.push_back(args[t[i]]);
        text += (i ? ", " : "") + names[t[i]];
      }
      text += ")";
      auto res = jacobiator(engine, std::span<const Element>(xs));
      ++tuples;
      if (!res.agree()) {
        ++disagree;
        if (!disagree_witness)
          disagree_witness = text + ": unshuffle sum " + render(res.unshuffle) + ", derived " + render(res.derived);
      }
      if (!res.unshuffle.is_zero() || !res.derived.is_zero()) {
        ++nonzero;
        if (!nonzero_witness) nonzero_witness = text + " = " + render(res.derived);
      }
    }
    const std::string tag = label + " J" + std::to_string(n);
    lines.push_back("arity " + std::to_string(n) + ": " + std::to_string(tuples) + " tuples, " +
                    std::to_string(nonzero) + " nonzero, " + std::to_string(disagree) + " disagreements");
    auto& agree = rep.check(tag + " unshuffle sum = derived bracket of D^2", disagree == 0,
                            std::to_string(tuples) + " tuples");
    agree.witness = disagree_witness;
    auto& vanish = rep.check(tag + " vanishes", nonzero == 0, std::to_string(nonzero) + " nonzero");
    vanish.witness = nonzero_witness;
  }
  rep.sections.push_back({label, std::move(lines)});
}

}  // namespace

Algebroid load_algebroid(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) return to_algebroid(parse_spec(read_file(source)));
  try {
    return builtin(source);
  } catch (const Error&) {
    throw InputError("'" + source + "' is neither a spec file nor a builtin");
  }
}

Report describe_command(const Algebroid& a) {
  Report rep{"describe", a.name, {}, {}, {}};
  const auto& pres = a.bundle.presentation();
  rep.sections.push_back({"bundle",
                          {"base: " + parities(pres.base, "x"), "fibre (parity of E): " + parities(pres.fibre, "xi"),
                           "rank " + std::to_string(a.bundle.rank()) + " over a base of dimension " +
                               std::to_string(a.bundle.base_dim())}});
  Section q{"Q", {}};
  rep.add_lines(q, a.q.is_zero() ? "0" : a.q.render());
  rep.sections.push_back(std::move(q));
  for (const auto& c : a.bundle.all_charts()) {
    Section s{c->label(), {}};
    rep.add_lines(s, c->size() ? describe_chart(*c) : "(empty)");
    rep.sections.push_back(std::move(s));
  }
  return rep;
}

Report check_q_command(const Algebroid& a) {
  Report rep{"check-q", a.name, {}, {}, {}};
  Section q{"Q", {}};
  rep.add_lines(q, a.q.is_zero() ? "0" : a.q.render());
  rep.sections.push_back(std::move(q));
  rep.sections.push_back({"properties", {std::string("strict: ") + (is_strict(a.q) ? "yes" : "no")}});
  rep.check("Q is odd", a.q.parity() == Parity::odd || a.q.is_zero());
  const auto square = commutator(a.q, a.q);
  auto& c = rep.check("[Q,Q] = 0", square.is_zero());
  if (!square.is_zero()) c.witness = square.render();
  return rep;
}

Report build_command(const Algebroid& a, Flavor flavor) {
  const bool sch = flavor == Flavor::schouten;
  Report rep{sch ? "build-schouten" : "build-poisson", a.name, {}, {}, {}};
  const std::string sym = sch ? "S" : "P";
  try {
    const auto h = sch ? build_schouten(a) : build_poisson(a);
    rep.sections.push_back({sym, {sym + " = " + h.value().render()}});
    const auto audit = total_weight_audit(h);
    Section w{"bi-weights", {}};
    for (const auto& [weight, count] : audit.histogram)
      w.lines.push_back(to_string(weight) + ": " + std::to_string(count) + (count == 1 ? " term" : " terms"));
    if (audit.histogram.empty()) w.lines.push_back("(no terms)");
    rep.sections.push_back(std::move(w));
    const auto zero_section = restrict_to_zero_section(h.value());
    const bool strict = is_strict(a.q);
    rep.sections.push_back({"zero section", {sym + "| = " + zero_section.render(),
                                             std::string("strict: ") + (strict ? "yes" : "no")}});

    auto& self = rep.check(sch ? "{S,S} = 0" : "[[P,P]] = 0", h.is_self_commuting());
    if (!h.is_self_commuting()) self.witness = h.self_bracket().render();
    auto& wc = rep.check("total weight one, bi-weight (1-n, n)", audit.ok());
    if (!audit.ok()) {
      std::string text;
      for (const auto& v : audit.violations) text += v + "\n";
      wc.witness = text;
    }
    rep.check("restriction vanishes exactly when strict", zero_section.is_zero() == strict);
  } catch (const NotHomological& e) {
    auto& c = rep.check("[Q,Q] = 0", false, "Q is not homological");
    c.witness = e.witness().render();
  }
  return rep;
}

Report brackets_command(const Algebroid& a, const CommandOptions& o) {
  const bool sch = o.flavor == "schouten";
  if (!sch && o.flavor != "poisson") throw InputError("--flavor must be schouten or poisson");
  Report rep{"brackets", a.name, {}, {}, {}};
  const HigherStructure h = sch ? HigherStructure(schouten_function(a), Flavor::schouten)
                                : HigherStructure(poisson_function(a), Flavor::poisson);
  Section s{std::string(sch ? "Schouten" : "Poisson") + " brackets", {}};
  for (auto r : arities(o, 0)) {
    const auto derived = sch ? derived_schouten_table(a, h, r) : derived_poisson_table(a, h, r);
    const auto direct = sch ? symmetric_bracket_table(a, r) : skew_bracket_table(a, r);
    rep.add_lines(s, derived.render());
    auto& c = rep.check("arity " + std::to_string(r) + " derived brackets match the structure constants",
                        derived.entries == direct.entries);
    if (derived.entries != direct.entries) c.witness = "structure constants give\n" + direct.render();
  }
  rep.sections.push_back(std::move(s));
  return rep;
}

Report jacobiator_command(const Algebroid& a, const CommandOptions& o) {
  Report rep{"jacobiator", a.name, {}, {}, {}};
  const auto ns = arities(o, 1);
  auto poly = [](const GradedPoly& p) { return p.render(); };

  {
    const auto engine = schouten_engine(schouten_function(a));
    const auto& c = a.bundle.pi_e_dual();
    std::vector<GradedPoly> args;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c->size(); ++i) {
      args.push_back(lift_to_phase_space(GradedPoly::generator(c, i), a.bundle.t_pi_e_dual()));
      names.push_back((*c)[i].name);
    }
    jacobiator_run(rep, "S", engine, args, names, ns, poly);
  }
  {
    const auto engine = poisson_engine(poisson_function(a));
    const auto& c = a.bundle.e_dual();
    std::vector<GradedPoly> args;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c->size(); ++i) {
      args.push_back(lift_to_phase_space(GradedPoly::generator(c, i), a.bundle.pit_e_dual()));
      names.push_back((*c)[i].name);
    }
    jacobiator_run(rep, "P", engine, args, names, ns, poly);
  }
  if (a.bundle.base_dim() == 0) {
    const auto engine = q_engine(a.q);
    const auto& c = a.q.chart();
    std::vector<VectorField> args;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c->size(); ++i) {
      args.push_back(VectorField::coordinate(c, i));
      names.push_back("d/d" + (*c)[i].name);
    }
    jacobiator_run(rep, "Q", engine, args, names, ns, [](const VectorField& v) {
      std::string s = v.render();
      std::replace(s.begin(), s.end(), '\n', ' ');
      return s;
    });
  }
  return rep;
}

Report leibniz_command(const Algebroid& a, const CommandOptions& o) {
  Report rep{"leibniz", a.name, {}, {}, {}};
  const auto se = schouten_engine(schouten_function(a));
  const auto pe = poisson_engine(poisson_function(a));
  const MultiBracket sb = [&](std::span<const GradedPoly> xs) { return higher_schouten_bracket(se, xs); };
  const MultiBracket pb = [&](std::span<const GradedPoly> xs) { return higher_poisson_bracket(pe, xs); };
  const std::size_t top = std::min<std::size_t>(o.max_arity, 3);
  std::vector<std::size_t> rs;
  if (o.arity)
    rs.push_back(*o.arity);
  else
    for (std::size_t r = 1; r <= top; ++r) rs.push_back(r);
  Section s{"trials", {}};
  for (auto r : rs) {
    if (r == 0) throw InputError("--arity must be at least 1 for the Leibniz rule");
    const auto sr = leibniz_check(sb, LeibnizRule::schouten, a.bundle.pi_e_dual(), r, o.trials, o.seed);
    const auto pr = leibniz_check(pb, LeibnizRule::poisson, a.bundle.e_dual(), r, o.trials, o.seed);
    s.lines.push_back("arity " + std::to_string(r) + ": " + std::to_string(sr.trials) + " Schouten, " +
                      std::to_string(pr.trials) + " Poisson");
    auto& c1 = rep.check("Schouten arity " + std::to_string(r) + " multiderivation", sr.ok());
    c1.witness = sr.witness;
    auto& c2 = rep.check("Poisson arity " + std::to_string(r) + " multiderivation", pr.ok());
    c2.witness = pr.witness;
  }
  rep.sections.insert(rep.sections.begin(), {"seed", {std::to_string(o.seed)}});
  rep.sections.push_back(std::move(s));
  return rep;
}

Matrix parse_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw InputError("matrix: expected a nonempty array of rows");
  Matrix m;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_array() || doc[i].size() != doc.size())
      throw InputError("matrix[" + std::to_string(i) + "]: expected a row of length " + std::to_string(doc.size()));
    std::vector<Rational> row;
    for (std::size_t j = 0; j < doc[i].size(); ++j) {
      const auto& v = doc[i][j];
      const std::string where = "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      try {
        if (v.is_number_integer())
          row.push_back(Rational(v.get<long>()));
        else if (v.is_string())
          row.push_back(parse_rational(v.get<std::string>()));
        else
          throw InputError(where + ": expected an integer or a rational string");
      } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    m.push_back(std::move(row));
  }
  return m;
}

Report naturality_command(const Algebroid& a, const Matrix& t, const CommandOptions& o) {
  Report rep{"naturality", a.name, {}, {}, {}};
  Section m{"T", {}};
  for (const auto& row : t) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) line += (j ? " " : "") + to_string(row[j]);
    m.lines.push_back(line);
  }
  rep.sections.push_back(std::move(m));
  NaturalityReport n;
  try {
    require_parity_block(t, a.bundle.presentation());
    inverse(t);
    n = chart_change_naturality(a, t, o.trials, o.seed);
  } catch (const Error& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
  rep.check("S of the transformed Q = lifted S", n.schouten_equal);
  rep.check("P of the transformed Q = lifted P", n.poisson_equal);
  rep.check("lifts preserve the canonical brackets", n.lift_preserves_brackets,
            std::to_string(n.bracket_trials) + " random pairs");
  return rep;
}

Report statement_command(const Algebroid& a, const CommandOptions& o) {
  if (a.bundle.base_dim() != 0) throw InputError("statement-check needs an algebroid over a point");
  Report rep{"statement-check", a.name, {}, {}, {}};
  const auto st = weight_one_restriction_check(a, o.max_arity);
  Section s{"nonzero brackets", {}};
  for (const auto& e : st.entries) {
    if (e.derived.is_zero() && e.expected.is_zero()) continue;
    const bool sch = e.flavor == "schouten";
    std::string t = fibre_tuple_text(e.tuple, sch ? "eta" : "e");
    if (!sch) t = "{" + t.substr(1, t.size() - 2) + "}";
    s.lines.push_back(e.flavor + " " + t + " = " + e.derived.render());
  }
  if (s.lines.empty()) s.lines.push_back("(all brackets vanish)");
  rep.sections.push_back(std::move(s));
  for (const char* flavor : {"schouten", "poisson"}) {
    for (std::size_t r = 0; r <= o.max_arity; ++r) {
      std::size_t count = 0;
      std::optional<std::string> witness;
      for (const auto& e : st.entries) {
        if (e.flavor != flavor || e.arity != r) continue;
        ++count;
        if (!e.ok() && !witness)
          witness = fibre_tuple_text(e.tuple, "") + ": derived " + e.derived.render() + ", expected " + e.expected.render();
      }
      auto& c = rep.check(std::string(flavor) + " arity " + std::to_string(r) + " restriction = input brackets",
                          !witness, std::to_string(count) + " tuples");
      c.witness = witness;
    }
  }
  return rep;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher Schouten and Poisson structures of L-infinity algebroids", "linfty"};
  app.require_subcommand(1);
  CommandOptions o;
  bool json = false, timing = false;
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--max-arity", o.max_arity, "largest arity examined")->check(CLI::Range(0, 8));
  app.add_flag("--json", json, "structured output");
  app.add_flag("--timing", timing, "report the running time");

  std::string source;
  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("source", source, "builtin name or spec file")->required();
    return sub;
  };
  auto* describe = add("describe", "charts, parities and weights");
  auto* check_q = add("check-q", "is Q homological");
  auto* build_s = add("build-schouten", "the higher Schouten structure S");
  auto* build_p = add("build-poisson", "the higher Poisson structure P");
  auto* brackets = add("brackets", "bracket table from S or P");
  brackets->add_option("--flavor", o.flavor, "schouten or poisson")->check(CLI::IsMember({"schouten", "poisson"}));
  brackets->add_option("--arity", o.arity, "bracket arity");
  auto* jac = add("jacobiator", "Jacobiators computed two ways");
  jac->add_option("--arity", o.arity, "Jacobiator arity")->check(CLI::Range(1, 8));
  auto* leib = add("leibniz", "multiderivation identities on random inputs");
  leib->add_option("--arity", o.arity, "bracket arity")->check(CLI::Range(1, 8));
  leib->add_option("--trials", o.trials, "random inputs per arity")->check(CLI::Range(1, 100000));
  leib->add_option("--seed", o.seed, "seed for randomized checks");
  auto* nat = add("naturality", "S and P under a constant fibre change");
  nat->add_option("--matrix", o.matrix_file, "JSON file with the matrix T");
  nat->add_option("--seed", o.seed, "seed for randomized checks");
  auto* statement = add("statement-check", "derived brackets of weight-one functions");
  std::string example_name;
  auto* example = app.add_subcommand("example", "print a builtin spec document");
  example->add_option("name", example_name, "builtin name")->required();

  std::vector<std::string> argv_store{"linfty"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (example->parsed()) {
      const auto& names = builtin_names();
      if (std::find(names.begin(), names.end(), example_name) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw InputError("unknown example '" + example_name + "' (choose from " + list + ")");
      }
      out << render_spec(builtin_spec(example_name));
      return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    const Algebroid a = load_algebroid(source);
    Report rep;
    if (describe->parsed())
      rep = describe_command(a);
    else if (check_q->parsed())
      rep = check_q_command(a);
    else if (build_s->parsed())
      rep = build_command(a, Flavor::schouten);
    else if (build_p->parsed())
      rep = build_command(a, Flavor::poisson);
    else if (brackets->parsed())
      rep = brackets_command(a, o);
    else if (jac->parsed())
      rep = jacobiator_command(a, o);
    else if (leib->parsed())
      rep = leibniz_command(a, o);
    else if (nat->parsed())
      rep = naturality_command(a, o.matrix_file ? parse_matrix(read_file(*o.matrix_file))
                                                : identity_matrix(a.bundle.rank()), o);
    else if (statement->parsed())
      rep = statement_command(a, o);
    if (timing)
      rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << (json ? rep.render_json() : rep.render_text());
    return rep.ok() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace linfty
