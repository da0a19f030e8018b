#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "chromatic/algorithms.hpp"
#include "chromatic/error.hpp"
#include "chromatic/scenarios.hpp"
#include "chromatic/serialize.hpp"

namespace chromatic::cli {

namespace {

/// Problems with files named on the command line.
struct InputError {
  std::string message;
};

/// Problems with flag values that only show up after parsing.
struct UsageError {
  std::string message;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!(file << text)) throw InputError{"cannot write '" + path + "'"};
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::exception& e) {
    throw InputError{"'" + path + "' is not valid JSON: " + e.what()};
  }
}

template <typename F>
auto from_file(const std::string& path, F&& load) {
  try {
    return load();
  } catch (const Error& e) {
    throw InputError{"'" + path + "': " + e.what()};
  }
}

ChromaticComplex load_complex(const std::string& path) {
  Json j = read_json(path);
  return from_file(path, [&] { return complex_from_json(j); });
}

std::vector<std::string> split_agents(const std::string& list) {
  std::vector<std::string> agents;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) agents.push_back(name);
  for (const auto& a : agents) {
    if (!is_valid_agent_name(a)) throw UsageError{"invalid agent name '" + a + "'"};
  }
  if (std::set<std::string>(agents.begin(), agents.end()).size() != agents.size()) {
    throw UsageError{"duplicate agent in '" + list + "'"};
  }
  return agents;
}

/// Formula from --formula FILE or --formula-str TEXT. The names Phi, Phi0,
/// Phi1 and Psi expand to the bundled formulas over the complex's agents.
Formula resolve_formula(const std::string& file, const std::string& text, const ChromaticComplex& c) {
  const auto& agents = c.agents();
  if (!file.empty()) {
    std::string body = read_text(file);
    return from_file(file, [&] { return parse_formula(body, std::span<const std::string>(agents)); });
  }
  if (text == "Phi" || text == "Phi1") return not_all_common_distributed(agents, 1);
  if (text == "Phi0") return not_all_common_distributed(agents, 0);
  if (text == "Psi") return tas_obstruction_formula(agents);
  try {
    return parse_formula(text, std::span<const std::string>(agents));
  } catch (const Error& e) {
    throw UsageError{std::string("--formula-str: ") + e.what()};
  }
}

std::string facet_ids(const ChromaticComplex& c, FacetIndex w) {
  std::string out;
  for (VertexIndex v : c.facet(w)) {
    if (!out.empty()) out += ',';
    out += c.vertex(v).id;
  }
  return out;
}

FacetIndex check_world(const ChromaticComplex& c, std::size_t world) {
  if (world >= c.facet_count()) {
    throw UsageError{"--world " + std::to_string(world) + " out of range (" +
                     std::to_string(c.facet_count()) + " worlds)"};
  }
  return world;
}

// ---------------------------------------------------------------------------

struct BuildOptions {
  std::string scenario;
  std::string model;
  std::string task = "majority0";
  std::string agents = "a,b,c";
  int rounds = 1;
  std::string qualify;
  std::string out;
};

int run_build(const BuildOptions& o, std::ostream& out) {
  const auto agents = split_agents(o.agents);
  ChromaticComplex p;
  try {
    if (!o.scenario.empty()) {
      p = build_scenario(o.scenario, agents);
    } else {
      const Task task = make_task(o.task, agents);
      p = iterate_rounds(task.input, make_model(o.model, agents), o.rounds);
      if (!o.qualify.empty()) p = partial_round(p, tas_loser_qualifies);
    }
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
  write_text(o.out, dump(complex_to_json(p)), out);
  if (!o.out.empty() && o.out != "-") {
    out << "wrote " << p.facet_count() << " facets, " << p.vertices().size() << " vertices to " << o.out
        << "\n";
  }
  return kOk;
}

struct EvalOptions {
  std::string complex;
  std::string formula_file;
  std::string formula_text;
  std::optional<std::size_t> world;
  std::string expect;
};

int run_eval(const EvalOptions& o, std::ostream& out) {
  const ChromaticComplex c = load_complex(o.complex);
  const Formula f = resolve_formula(o.formula_file, o.formula_text, c);
  Evaluator evaluator(c);
  const auto& truth = evaluator.truth(f);
  std::vector<FacetIndex> worlds;
  if (o.world) {
    worlds.push_back(check_world(c, *o.world));
  } else {
    for (FacetIndex w = 0; w < c.facet_count(); ++w) worlds.push_back(w);
  }
  std::size_t holds = 0;
  for (FacetIndex w : worlds) {
    out << "w" << w << " " << facet_ids(c, w) << " " << (truth[w] ? "true" : "false") << "\n";
    holds += truth[w] ? 1 : 0;
  }
  out << "true at " << holds << " of " << worlds.size() << " worlds\n";
  if (o.expect == "true" && holds != worlds.size()) return kNegative;
  if (o.expect == "false" && holds != 0) return kNegative;
  return kOk;
}

struct SolveOptions {
  std::string task;
  std::string protocol;
  std::string witness;
  std::string algorithm = "search";
  std::string formula_text = "Phi";
};

int run_solve(const SolveOptions& o, std::ostream& out) {
  const ChromaticComplex p = load_complex(o.protocol);
  const Task task = make_task(o.task, p.agents());
  if (o.algorithm == "search") {
    const SearchResult r = from_file(o.protocol, [&] { return search_decision_map(task, p); });
    out << (r.solvable() ? "solvable" : "unsolvable") << "\n";
    out << "nodes explored: " << r.nodes_explored << "\n";
    if (!o.witness.empty()) {
      write_text(o.witness, dump(r.solvable() ? decision_map_to_json(p, *r.map) : certificate_to_json(r)), out);
    }
    return r.solvable() ? kOk : kNegative;
  }

  DecisionMap d;
  try {
    if (o.algorithm == "courteous") {
      d = courteous_map(p);
    } else if (o.algorithm == "knowledge-threshold") {
      d = knowledge_threshold_map(p, resolve_formula("", o.formula_text, p));
    } else {
      d = tas_two_round_map(p);
    }
  } catch (const Error& e) {
    throw InputError{"'" + o.protocol + "': " + e.what()};
  }
  const ValidationResult v = from_file(o.protocol, [&] { return validate_decision_map(task, p, d); });
  out << (v.valid ? "valid" : "invalid") << "\n";
  out << "violations: " << v.violations.size() << "\n";
  for (const auto& violation : v.violations) {
    out << "w" << violation.facet << " " << facet_ids(p, violation.facet) << " decided (";
    for (std::size_t i = 0; i < violation.decided.size(); ++i) {
      out << (i ? ", " : "") << violation.decided[i];
    }
    out << ") "
        << (violation.reason == ViolationReason::NotAnOutputFacet ? "not-an-output-facet" : "not-in-delta")
        << "\n";
  }
  if (!o.witness.empty()) write_text(o.witness, dump(decision_map_to_json(p, d)), out);
  return v.valid ? kOk : kNegative;
}

struct ObstructOptions {
  std::string task;
  std::string protocol;
  std::string formula_file;
  std::string formula_text;
  std::size_t world = 0;
  std::string out;
};

int run_obstruct(const ObstructOptions& o, std::ostream& out) {
  const ChromaticComplex p = load_complex(o.protocol);
  const Task task = make_task(o.task, p.agents());
  const Formula f = resolve_formula(o.formula_file, o.formula_text, p);
  const FacetIndex w = check_world(p, o.world);
  const ObstructionReport r = from_file(o.protocol, [&] { return check_obstruction(task, p, f, w); });
  write_text(o.out, dump(obstruction_to_json(r)), out);
  return kOk;
}

int run_muddy(std::size_t children, std::ostream& out) {
  ChromaticComplex m;
  std::vector<std::string> kids;
  try {
    m = muddy_children_complex(children);
    kids = muddy_children_agents(children);
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
  const Valuation valuation = Valuation::local_state();
  auto report = [&](const std::string& stage) {
    out << stage << ": " << m.facet_count() << (m.facet_count() == 1 ? " world" : " worlds") << "\n";
    Evaluator evaluator(m, valuation);
    std::vector<std::pair<std::string, FacetIndex>> worlds;
    for (FacetIndex w = 0; w < m.facet_count(); ++w) worlds.emplace_back(muddy_world_name(m, w), w);
    std::sort(worlds.begin(), worlds.end());
    for (const auto& [name, w] : worlds) {
      out << "  " << name << " knows own mud:";
      bool any = false;
      for (const auto& child : kids) {
        if (evaluator.holds(w, knows_own_mud(child))) {
          out << " " << child;
          any = true;
        }
      }
      out << (any ? "" : " nobody") << "\n";
    }
  };
  report("initial");
  m = public_announce(m, valuation, at_least_one_muddy(kids));
  report("announce: at least one child is muddy");
  // Each unanswered question announces that nobody knows; stop once someone does.
  for (std::size_t question = 1; question < children; ++question) {
    m = public_announce(m, valuation, nobody_knows_own_mud(kids));
    report("question " + std::to_string(question) + ": nobody raises their hand");
  }
  return kOk;
}

struct ExportOptions {
  std::string complex;
  std::string format = "dot";
  std::string out;
};

int run_export(const ExportOptions& o, std::ostream& out) {
  const ChromaticComplex c = load_complex(o.complex);
  write_text(o.out, o.format == "dot" ? complex_to_dot(c) : dump(complex_to_json(c)), out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chromatic simplicial models of distributed knowledge", "chromatic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "chromatic 0.1.0");

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Build a protocol complex and write it as JSON");
  auto* scenario_opt = build_cmd->add_option("--scenario", build.scenario, "Bundled scenario")
                           ->check(CLI::IsMember(scenario_names()));
  auto* model_opt = build_cmd->add_option("--model", build.model, "Communication model")
                        ->check(CLI::IsMember({"ub", "is", "tas"}));
  build_cmd->add_option("--task", build.task, "Task whose input complex is used")
      ->check(CLI::IsMember({"consensus", "majority0"}));
  build_cmd->add_option("--agents", build.agents, "Comma-separated agent names");
  auto* rounds_opt = build_cmd->add_option("--rounds", build.rounds, "Number of rounds")
                         ->check(CLI::NonNegativeNumber);
  auto* qualify_opt = build_cmd->add_option("--partial-qualify", build.qualify,
                                            "Extra round among the agents matching this predicate")
                          ->check(CLI::IsMember({"tas-loser"}));
  build_cmd->add_option("--out", build.out, "Output file (stdout if omitted)");
  scenario_opt->excludes(model_opt)->excludes(rounds_opt)->excludes(qualify_opt);
  build_cmd->callback([&] {
    if (build.scenario.empty() && build.model.empty()) throw CLI::ValidationError("--model or --scenario is required");
  });

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula at the worlds of a complex");
  eval_cmd->add_option("--complex", eval.complex, "Complex JSON")->required();
  auto* eval_file = eval_cmd->add_option("--formula", eval.formula_file, "File holding the formula");
  auto* eval_text = eval_cmd->add_option("--formula-str", eval.formula_text, "Formula text, or Phi, Phi0, Psi");
  eval_file->excludes(eval_text);
  auto* world_opt = eval_cmd->add_option("--world", eval.world, "Single world index");
  auto* all_flag = eval_cmd->add_flag("--all", "Every world (default)");
  world_opt->excludes(all_flag);
  eval_cmd->add_option("--expect", eval.expect, "Exit 1 unless the formula has this value")
      ->check(CLI::IsMember({"true", "false"}));
  eval_cmd->callback([&] {
    if (eval.formula_file.empty() && eval.formula_text.empty()) {
      throw CLI::ValidationError("--formula or --formula-str is required");
    }
  });

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decide whether a task is solvable on a protocol complex");
  solve_cmd->add_option("--task", solve.task, "Task")->required()->check(CLI::IsMember({"consensus", "majority0"}));
  solve_cmd->add_option("--protocol", solve.protocol, "Protocol complex JSON")->required();
  solve_cmd->add_option("--witness", solve.witness, "Write the decision map or certificate here");
  solve_cmd->add_option("--algorithm", solve.algorithm, "search, or a fixed rule to validate")
      ->check(CLI::IsMember({"search", "courteous", "knowledge-threshold", "tas-two-round"}));
  solve_cmd->add_option("--formula-str", solve.formula_text, "Threshold formula for knowledge-threshold");

  ObstructOptions obstruct;
  auto* obstruct_cmd = app.add_subcommand("obstruct", "Check a logical obstruction at one world");
  obstruct_cmd->add_option("--task", obstruct.task, "Task")->required()->check(
      CLI::IsMember({"consensus", "majority0"}));
  obstruct_cmd->add_option("--protocol", obstruct.protocol, "Protocol complex JSON")->required();
  auto* ob_file = obstruct_cmd->add_option("--formula", obstruct.formula_file, "File holding the formula");
  auto* ob_text = obstruct_cmd->add_option("--formula-str", obstruct.formula_text, "Formula text, or Phi, Phi0, Psi");
  ob_file->excludes(ob_text);
  obstruct_cmd->add_option("--world", obstruct.world, "World index")->required();
  obstruct_cmd->add_option("--out", obstruct.out, "Report file (stdout if omitted)");
  obstruct_cmd->callback([&] {
    if (obstruct.formula_file.empty() && obstruct.formula_text.empty()) {
      throw CLI::ValidationError("--formula or --formula-str is required");
    }
  });

  std::size_t children = 3;
  auto* demo_cmd = app.add_subcommand("demo", "Run a bundled demonstration");
  demo_cmd->require_subcommand(1);
  auto* muddy_cmd = demo_cmd->add_subcommand("muddy-children", "Public announcements in the muddy children puzzle");
  muddy_cmd->add_option("--children", children, "Number of children")->check(CLI::Range(2, 16));

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export", "Export a complex");
  export_cmd->add_option("--complex", exp.complex, "Complex JSON")->required();
  export_cmd->add_option("--format", exp.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  export_cmd->add_option("--out", exp.out, "Output file (stdout if omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build_cmd) return run_build(build, out);
    if (*eval_cmd) return run_eval(eval, out);
    if (*solve_cmd) return run_solve(solve, out);
    if (*obstruct_cmd) return run_obstruct(obstruct, out);
    if (*muddy_cmd) return run_muddy(children, out);
    if (*export_cmd) return run_export(exp, out);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.message << "\n";
    return kInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace chromatic::cli
