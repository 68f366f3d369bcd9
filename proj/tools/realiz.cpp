// Command line front end. Exit codes: 0 success, 1 input error (parse,
// config, precondition), 2 fuel exhausted (run), 3 refuted or failed check,
// 4 relation not well founded (rank), 5 resource ceiling exceeded.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "realiz/errors.hpp"
#include "realiz/md.hpp"
#include "realiz/wf.hpp"
#include "report.hpp"

using namespace realiz;
using namespace realiz::cli;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFuelExhausted = 2;
constexpr int kRefuted = 3;
constexpr int kNotWellFounded = 4;
constexpr int kResource = 5;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> depth, fuel, rank;
  std::optional<std::string> pole, output;
};

RunConfig effective_config(const Globals& g) {
  RunConfig c = g.config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(g.config_path);
  if (g.seed) c.seed = c.universe.seed = *g.seed;
  if (g.depth) c.depth = *g.depth;
  if (g.fuel) {
    if (*g.fuel == 0) throw ConfigError("--fuel: must be positive");
    c.fuel = *g.fuel;
  }
  if (g.rank) {
    if (*g.rank == 0) throw ConfigError("--rank: must be positive");
    c.universe.rank = *g.rank;
  }
  if (g.pole) {
    nlohmann::json probe = {{"pole", *g.pole}};
    parse_config(probe);
    c.pole = *g.pole;
  }
  if (g.output) c.output = *g.output;
  return c;
}

NamedTerms named_terms(const RunConfig& c) {
  NamedTerms named;
  for (const auto& [name, t] : adversarial_pool(c.depth).terms) named.emplace(name, t);
  for (const auto& [name, t] : build_pool(c).terms) named.insert_or_assign(name, t);
  return named;
}

Env parse_env(const std::vector<std::string>& lets, const NamedTerms& named) {
  Env env;
  for (const std::string& binding : lets) {
    auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--let expects name=ground, got " + binding);
    env.emplace_back(binding.substr(0, eq), parse_ground(binding.substr(eq + 1), &named));
  }
  return env;
}

ordered_json env_json(const Env& env) {
  ordered_json j = ordered_json::object();
  for (const auto& [name, value] : env) j[name] = print_ground(value);
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Term resolve_term(const std::string& text, const Session& s, const NamedTerms& named) {
  if (const Term* t = s.pool().find(text)) return *t;
  return parse_term(text, &named);
}

// Session memo tables are keyed by formula node, so each text is parsed once.
const FormulaEps& interned(const std::string& text) {
  static std::map<std::string, FormulaEps> formulas;
  auto it = formulas.find(text);
  if (it == formulas.end()) it = formulas.emplace(text, parse_eps(text)).first;
  return it->second;
}

ordered_json check_record(Session& s, const std::string& formula, const std::string& term,
                          const NamedTerms& named, const Env& env, bool& validated) {
  Verdict v = s.realizes(resolve_term(term, s, named), interned(formula), env);
  validated = v.validated();
  ordered_json rec;
  rec["formula"] = formula;
  rec["term"] = term;
  if (!env.empty()) rec["env"] = env_json(env);
  rec["verdict"] = v.validated() ? "Validated" : "Refuted";
  rec["tests"] = v.tests;
  if (v.refuted() && v.stack) {
    ordered_json trace = ordered_json::array();
    for (const Process& p : v.trace) trace.push_back(print_process(p));
    rec["counterexample"] = {{"stack", print_stack(*v.stack)}, {"trace", trace}};
  }
  return rec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"realiz: a desk-scale laboratory for classical realizability"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "seed for randomized universe names and sampling");
  app.add_option("--depth", g.depth, "stack depth bound d");
  app.add_option("--fuel", g.fuel, "machine fuel per run");
  app.add_option("--rank", g.rank, "rank bound of the exhaustive universe");
  app.add_option("--pole", g.pole, "termination | stop | explicit:<path>");
  app.add_option("--output", g.output, "write records to this file instead of standard output");

  std::string term, stack = "pi0", formula, suite, relation, alpha = "1", corpus;
  std::vector<std::string> lets;
  std::optional<std::size_t> run_fuel;
  bool with_los = false;

  auto* run = app.add_subcommand("run", "execute a process and print every machine state");
  run->add_option("--term", term, "term, with <name> for pool terms")->required();
  run->add_option("--stack", stack, "stack such as t.u.pi0");
  run->add_option("--fuel", run_fuel, "step budget");

  auto* check = app.add_subcommand("check", "check a realizer against a formula");
  auto* formula_opt = check->add_option("--formula", formula, "formula of the realizability language");
  auto* term_opt = check->add_option("--term", term, "pool name or term");
  auto* suite_opt = check->add_option("--suite", suite, "JSON lines file of {name, term, formula}")
                        ->check(CLI::ExistingFile);
  check->add_option("--let", lets, "name=ground binding of a free variable");
  formula_opt->excludes(suite_opt);
  term_opt->excludes(suite_opt);

  auto* truth = app.add_subcommand("truth", "print the truth value of a formula");
  truth->add_option("--formula", formula, "formula")->required();
  truth->add_option("--let", lets, "name=ground binding of a free variable");

  auto* universe = app.add_subcommand("universe", "list the names of the configured universe");

  auto* decide = app.add_subcommand("decide-d", "decide D for a ground boolean");
  decide->add_option("--alpha", alpha, "ground boolean, 0 or 1");

  auto* rank = app.add_subcommand("rank", "rank function of a relation over the universe");
  rank->add_option("--relation", relation, "eps | in | less(a) | chi(R, a) | dsum(R) | drel(R)")
      ->required();

  auto* md = app.add_subcommand("md", "elementarity of M_D on a sentence corpus");
  md->add_option("--corpus", corpus, "one sentence per line")->check(CLI::ExistingFile);
  md->add_flag("--los", with_los, "also run the Los harness on each sentence");

  auto* report = app.add_subcommand("report", "run the complete verification report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    RunConfig cfg = effective_config(g);

    if (run->parsed()) {
      NamedTerms named = named_terms(cfg);
      Process p{parse_term(term, &named), parse_stack(stack, &named)};
      RunResult r = realiz::run(p, run_fuel.value_or(cfg.fuel));
      Output out(cfg.output);
      for (const Process& state : r.trace) out.stream() << print_process(state) << '\n';
      bool stuck = r.status == RunStatus::Stuck;
      std::cerr << (stuck ? "stuck" : "fuel exhausted") << " after " << (r.trace.size() - 1)
                << " steps\n";
      return stuck ? kOk : kFuelExhausted;
    }

    Session session = build_session(cfg);
    NamedTerms named = named_terms(cfg);
    Output out(cfg.output);

    if (check->parsed()) {
      Env env = parse_env(lets, named);
      std::size_t validated = 0, refuted = 0;
      auto emit = [&](ordered_json rec, bool ok) {
        out.stream() << rec.dump() << '\n';
        ++(ok ? validated : refuted);
      };
      if (!suite.empty()) {
        std::ifstream in(suite);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
          ++lineno;
          if (line.empty() || line[0] == '#') continue;
          nlohmann::json entry;
          try {
            entry = nlohmann::json::parse(line);
          } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(suite + ":" + std::to_string(lineno) + ": " + e.what());
          }
          for (const auto& [key, value] : entry.items())
            if (key != "name" && key != "term" && key != "formula")
              throw ConfigError(suite + ":" + std::to_string(lineno) + ": unknown key \"" + key + "\"");
          if (!entry.contains("term") || !entry.contains("formula"))
            throw ConfigError(suite + ":" + std::to_string(lineno) + ": needs term and formula");
          bool ok = false;
          ordered_json rec = check_record(session, entry["formula"].get<std::string>(),
                                          entry["term"].get<std::string>(), named, env, ok);
          if (entry.contains("name")) {
            ordered_json named_rec{{"name", entry["name"].get<std::string>()}};
            for (auto& [k, v] : rec.items()) named_rec[k] = v;
            rec = named_rec;
          }
          emit(rec, ok);
        }
      } else {
        if (formula.empty() || term.empty()) throw ConfigError("check needs --formula and --term, or --suite");
        bool ok = false;
        ordered_json rec = check_record(session, formula, term, named, env, ok);
        emit(rec, ok);
      }
      std::cerr << validated << " validated, " << refuted << " refuted\n";
      return refuted == 0 ? kOk : kRefuted;
    }

    if (truth->parsed()) {
      Env env = parse_env(lets, named);
      TruthValue tv = session.truth_value(parse_eps(formula), env);
      ordered_json stacks = ordered_json::array();
      for (const Stack& st : tv.stacks) stacks.push_back(print_stack(st));
      ordered_json rec{{"formula", formula}, {"env", env_json(env)}, {"size", tv.size()},
                       {"of", session.pi_d().size()}, {"stacks", stacks}};
      out.stream() << rec.dump() << '\n';
      std::cerr << tv.size() << " of " << session.pi_d().size() << " stacks\n";
      return kOk;
    }

    if (universe->parsed()) {
      const auto& u = session.universe();
      for (std::size_t i = 0; i < u.size(); ++i)
        out.stream() << ordered_json{{"index", i}, {"name", print_ground(u[i])}, {"rank", u[i].rank()}}.dump()
                     << '\n';
      std::cerr << u.size() << " names, " << session.pi_d().size() << " stacks\n";
      return kOk;
    }

    if (decide->parsed()) {
      GroundSet a = parse_ground(alpha, &named);
      bool value = decide_D(a, session);
      RelationGraph graph = relation_graph(RelationSpec::less_alpha(a), session);
      WfResult wf = is_wellfounded(graph);
      ordered_json rec{{"alpha", print_ground(a)}, {"D", value}};
      if (!wf.wellfounded) {
        ordered_json cycle = ordered_json::array();
        for (std::size_t i : wf.cycle) cycle.push_back(print_ground(graph.nodes[i]));
        rec["cycle"] = cycle;
      }
      out.stream() << rec.dump() << '\n';
      std::cerr << "D(" << print_ground(a) << ") = " << (value ? "true" : "false") << '\n';
      return kOk;
    }

    if (rank->parsed()) {
      RelationSpec rel = parse_relation(relation);
      RelationGraph graph = relation_graph(rel, session);
      try {
        RankTable table = rank_fn(graph);
        std::size_t top = 0;
        for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
          top = std::max(top, table.rank[i] + 1);
          out.stream() << ordered_json{{"index", i}, {"name", print_ground(graph.nodes[i])},
                                       {"rank", table.rank[i]}}.dump()
                       << '\n';
        }
        bool fix = rank_fixpoint_holds(graph, table);
        out.stream() << ordered_json{{"relation", print_relation(rel)}, {"Rk", top}, {"fixpoint", fix}}.dump()
                     << '\n';
        std::cerr << print_relation(rel) << ": Rk = " << top << ", fixpoint " << (fix ? "holds" : "FAILS") << '\n';
        return fix ? kOk : kRefuted;
      } catch (const NotWellFoundedError& e) {
        ordered_json cycle = ordered_json::array();
        for (std::size_t i : e.cycle()) cycle.push_back(print_ground(graph.nodes[i]));
        out.stream() << ordered_json{{"relation", print_relation(rel)}, {"wellfounded", false}, {"cycle", cycle}}.dump()
                     << '\n';
        std::cerr << print_relation(rel) << " is not well founded\n";
        return kNotWellFounded;
      }
    }

    if (md->parsed()) {
      std::vector<std::string> sentences = corpus.empty() ? md_corpus() : read_corpus(corpus);
      MDStructure structure(session);
      auto records = elementarity_suite(structure, sentences);
      std::size_t disagreements = 0, los_failures = 0;
      for (const auto& r : records) {
        ordered_json rec{{"sentence", r.sentence}, {"m_value", r.m_value}, {"md_value", r.md_value},
                         {"agree", r.agree()}};
        if (!r.agree()) ++disagreements;
        if (with_los) {
          LosReport los = los_check(structure, parse_zf(r.sentence));
          rec["los"] = los.ok;
          if (!los.ok) {
            rec["failing"] = los.failing;
            ++los_failures;
          }
        }
        out.stream() << rec.dump() << '\n';
      }
      std::cerr << "M_D agreement is semantically forced at ground scale\n"
                << records.size() << " sentences, " << disagreements << " disagreements";
      if (with_los) std::cerr << ", " << los_failures << " Los failures";
      std::cerr << '\n';
      return disagreements == 0 && los_failures == 0 ? kOk : kRefuted;
    }

    if (report->parsed()) {
      std::cerr << "report over " << session.universe().size() << " names, " << session.pi_d().size()
                << " stacks\n";
      ReportTally t = write_report(cfg, session, out.stream(), std::cerr);
      std::cerr << t.passed << " passed, " << t.failed << " failed, " << t.vacuous << " vacuous, "
                << t.skipped << " skipped: " << (t.green() ? "green" : "red") << '\n';
      return t.green() ? kOk : kRefuted;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << " (position " << e.position() << ")\n";
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceError& e) {
    std::cerr << "resource: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
