// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.
// Usage: acceptance <path to the realiz binary>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/wf_oracles.hpp"
#include "realiz/errors.hpp"
#include "realiz/lab.hpp"
#include "realiz/md.hpp"
#include "realiz/symbols.hpp"
#include "realiz/wf.hpp"

using namespace realiz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

GroundSet B(bool b) { return boolean(b); }

GroundSet cell(GroundSet b, const Stack& s) { return kuratowski_pair(b, GroundSet::atom(s)); }

bool is_pure(GroundSet g) {
  if (!g.is_set()) return false;
  for (GroundSet e : g.elements())
    if (!is_pure(e)) return false;
  return true;
}

Session pure_session(std::vector<GroundSet> universe) {
  return Session(std::move(universe), lab_pool(), TerminationPole{10000});
}

Outcome machine_conformance() {
  std::size_t unfold_failures = 0, terms = 0;
  const Term y = turing_y();
  for (const auto& [name, xi] : adversarial_pool().terms) {
    Process p{y, Stack(std::vector<Term>{xi}, "pi0")};
    Process goal{xi, Stack(std::vector<Term>{make_app(y, xi)}, "pi0")};
    bool reached = p == goal;
    for (int i = 0; i < 5 && !reached; ++i) {
      auto next = step(p);
      if (!next) break;
      p = *next;
      reached = p == goal;
    }
    ++terms;
    unfold_failures += !reached;
  }

  std::ifstream in(std::string(REALIZ_TEST_DATA) + "/golden_traces.txt");
  std::string line;
  std::size_t cases = 0, golden_failures = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '|')) cols.push_back(col);
    ++cases;
    if (cols.size() != 6) {
      ++golden_failures;
      continue;
    }
    auto r = run({parse_term(cols[0]), parse_stack(cols[1])}, std::stoul(cols[2]));
    std::string status = r.status == RunStatus::Stuck ? "stuck" : "fuel";
    bool ok = status == cols[3].substr(1, cols[3].size() - 2) &&
              r.trace.size() - 1 == std::stoul(cols[4]) && r.trace.back() == parse_process(cols[5]);
    golden_failures += !ok;
  }
  std::ostringstream d;
  d << terms << " pool terms unfold, " << unfold_failures << " failures; " << cases
    << " golden traces, " << golden_failures << " mismatches";
  return {unfold_failures == 0 && cases == 30 && golden_failures == 0, d.str()};
}

Outcome truth_value_identities() {
  Session s = lab_session();
  const auto& u = s.universe();
  std::size_t compared = 0, mismatches = 0;
  for (const char* body : {"y epsnot c", "y eps c", "[y in c] ~> bot", "y epsnot y -> y epsnot c"}) {
    FormulaEps left = parse_eps(std::string("b epsnot compr[y. ") + body + "](a)");
    FormulaEps right =
        eps_arrow(substitute(parse_eps(body), "y", parse_name_term("b")), parse_eps("b epsnot a"));
    for (GroundSet a : u)
      for (GroundSet b : u)
        for (GroundSet c : u) {
          Env env{{"a", a}, {"b", b}, {"c", c}};
          mismatches += s.truth_value(left, env) != s.truth_value(right, env);
          ++compared;
        }
  }
  FormulaEps g = parse_eps("u epsnot gimel(v)");
  TruthValue all{s.pi_d()};
  for (GroundSet x : u)
    for (GroundSet v : exhaustive_universe(3)) {
      TruthValue tv = s.truth_value(g, {{"u", x}, {"v", v}});
      mismatches += tv != (v.contains(x) ? all : TruthValue{});
      ++compared;
    }
  for (const char* f : {"x", "sing(x)", "kpair(x, c)", "union(x, c)"}) {
    FormulaEps left = parse_eps(std::string("y epsnot image[x. ") + f + "](a)");
    FormulaEps right = parse_eps(std::string("forall x. [y = ") + f + "] ~> x epsnot a");
    for (GroundSet a : u)
      for (GroundSet y : u)
        for (GroundSet c : {GroundSet(), nat(1)}) {
          Env env{{"a", a}, {"y", y}, {"c", c}};
          mismatches += s.truth_value(left, env) != s.truth_value(right, env);
          ++compared;
        }
  }
  FormulaEps cl_left = parse_eps("chi[u,v. u < v](a, b) != 1");
  FormulaEps cl_right = parse_eps("a epsnot gimel(cl(b))");
  for (GroundSet a : u)
    for (GroundSet b : u) {
      Env env{{"a", a}, {"b", b}};
      mismatches += s.truth_value(cl_left, env) != s.truth_value(cl_right, env);
      ++compared;
    }
  std::ostringstream d;
  d << u.size() << " names, d = " << s.depth_bound() << ", " << compared << " comparisons, "
    << mismatches << " mismatches";
  return {u.size() <= 12 && s.depth_bound() == 2 && compared > 0 && mismatches == 0, d.str()};
}

Outcome realizer_check() {
  Session s = lab_session();
  std::size_t validated = 0;
  std::string refuted;
  for (const SuiteEntry& e : realiz::realizer_suite()) {
    const Term* t = s.pool().find(e.realizer);
    if (t != nullptr && s.realizes(*t, parse_eps(e.formula)).validated())
      ++validated;
    else
      refuted += " " + e.name;
  }
  std::ostringstream d;
  d << validated << "/" << realiz::realizer_suite().size() << " validated";
  if (!refuted.empty()) d << "; refuted:" << refuted;
  return {validated == realiz::realizer_suite().size(), d.str()};
}

Outcome mutation_suite() {
  Session full = adversarial_session();
  Session compact = adversarial_session(2, true);
  MutationSummary m = run_mutation_suite(full, realiz::realizer_suite(), &compact);
  std::map<std::string, std::size_t> per;
  for (const MutantOutcome& o : m.outcomes) ++per[o.theorem];
  std::size_t thin = 0;
  for (const SuiteEntry& e : realiz::realizer_suite()) thin += per[e.name] < 3;
  std::ostringstream d;
  d << std::fixed << std::setprecision(3) << m.refuted << "/" << (m.total - m.equivalent)
    << " non-equivalent mutants refuted (score " << m.score() << ", target 0.800); " << m.total
    << " mutants, " << m.equivalent << " head-equivalent, " << thin
    << " theorems with fewer than 3 mutants";
  if (!m.originals_validated) d << "; originals refuted";
  return {m.originals_validated && thin == 0 && m.score() >= 0.8, d.str()};
}

Outcome ultrafilter_laws() {
  std::size_t failures = 0, checks = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Session s = lab_session(lab_universe_spec(seed));
    failures += decide_D(B(false), s);
    failures += !decide_D(B(true), s);
    checks += 2;
    for (bool a : {false, true})
      for (bool b : {false, true}) {
        bool da = decide_D(B(a), s), db = decide_D(B(b), s);
        if (da && a <= b) failures += !db;
        if (decide_D(bool_op(BoolOp::Or, B(a), B(b)), s)) failures += !(da || db);
        failures += da && decide_D(bool_op(BoolOp::Not, B(a)), s);
        checks += 3;
      }
  }

  Session s = lab_session();
  const auto& pi = s.pi_d();
  auto pure = exhaustive_universe(3);
  std::mt19937_64 rng(11);
  auto random_name = [&] {
    std::size_t n = 1 + rng() % 4;
    std::vector<GroundSet> cells;
    for (std::size_t i = 0; i < n; ++i) cells.push_back(cell(pure[rng() % pure.size()], pi[rng() % pi.size()]));
    return GroundSet::set(cells);
  };
  std::size_t transfers = 0;
  for (int trial = 0; trial < 40; ++trial) {
    GroundSet a = random_name(), b = random_name();
    auto na = *entry_names(a, s);
    auto nb = *entry_names(b, s);
    for (auto [al, be] : {std::pair{false, false}, std::pair{true, false}, std::pair{false, true}})
      for (GroundSet a0 : na)
        for (GroundSet b0 : nb) {
          MixWitness w = mix_witness(B(al), B(be), a, a0, b, b0, s);
          failures += entry_stacks(w.c0, w.c, s).empty();
          ++checks;
          if (!has_minimal_entry(a, B(al), s) && !has_minimal_entry(b, B(be), s)) {
            failures += has_minimal_entry(w.c, B(al || be), s);
            ++transfers;
            ++checks;
          }
        }
  }
  std::ostringstream d;
  d << checks << " checks (" << transfers << " minimality transfers), " << failures << " failures";
  return {failures == 0 && transfers > 0, d.str()};
}

Outcome rank_oracles() {
  std::size_t mismatches = 0, compared = 0, fixpoints = 0, universes = 0;
  auto compare = [&](Session& s, std::size_t k) {
    ++universes;
    RelationGraph ge = relation_graph(RelationSpec::eps(), s);
    RankTable te = rank_fn(ge);
    for (std::size_t i = 0; i < te.nodes.size(); ++i, ++compared)
      mismatches += te.rank[i] != oracle::naive_eps_rank(te.nodes[i]);
    RelationGraph gi = relation_graph(RelationSpec::in(), s);
    RankTable ti = rank_fn(gi);
    for (std::size_t i = 0; i < ti.nodes.size(); ++i)
      if (is_pure(ti.nodes[i]) && ti.nodes[i].rank() < k) {
        mismatches += ti.rank[i] != oracle::naive_zf_rank(ti.nodes[i]);
        ++compared;
      }
    RelationGraph gl = relation_graph(RelationSpec::less_alpha(B(true)), s);
    for (auto* pair : {&ge, &gi, &gl}) {
      mismatches += !rank_fixpoint_holds(*pair, rank_fn(*pair));
      ++fixpoints;
    }
  };
  for (std::size_t k = 1; k <= 3; ++k) {
    Session p = pure_session(exhaustive_universe(k));
    compare(p, k);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      UniverseSpec spec = lab_universe_spec(seed);
      spec.rank = k;
      Session s = lab_session(spec);
      compare(s, k);
    }
  }
  std::ostringstream d;
  d << universes << " universes, " << compared << " ranks and " << fixpoints << " fixpoints compared, "
    << mismatches << " mismatches";
  return {mismatches == 0 && compared > 0, d.str()};
}

Outcome wellfoundedness_preservation() {
  std::mt19937_64 rng(2024);
  Session s(exhaustive_universe(4), lab_pool(), TerminationPole{1000});
  std::size_t misclassified = 0, controls = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 9;
    std::vector<GroundSet> u(s.universe().begin(), s.universe().begin() + static_cast<long>(n));
    auto edges = oracle::random_dag(n, rng);
    RelationSpec base = RelationSpec::explicit_edges(edges);
    misclassified += oracle::has_cycle_dfs(n, edges);
    misclassified += !is_wellfounded(relation_graph(base, s, u)).wellfounded;
    RelationSpec sum = RelationSpec::direct_sum(RelationSpec::less_alpha(B(true)), base);
    misclassified += !is_wellfounded(relation_graph(sum, s, u)).wellfounded;
    misclassified += !is_wellfounded(relation_graph(RelationSpec::d_rel(base), s, u)).wellfounded;

    oracle::inject_cycle(edges, n, rng);
    RelationSpec bad = RelationSpec::explicit_edges(edges);
    auto gs = relation_graph(RelationSpec::direct_sum(RelationSpec::less_alpha(B(true)), bad), s, u);
    auto gd = relation_graph(RelationSpec::d_rel(bad), s, u);
    auto ws = is_wellfounded(gs);
    auto wd = is_wellfounded(gd);
    misclassified += ws.wellfounded || !oracle::cycle_is_genuine(gs, ws.cycle);
    misclassified += wd.wellfounded || !oracle::cycle_is_genuine(gd, wd.cycle);
    controls += 2;
  }
  std::ostringstream d;
  d << "100 random well-founded relations, " << controls << " cyclic controls, " << misclassified
    << " misclassifications";
  return {misclassified == 0, d.str()};
}

Outcome md_end_to_end() {
  std::size_t los_failures = 0, disagreements = 0, sentences = 0, collapse_failures = 0;
  Session v3 = pure_session(exhaustive_universe(3));
  Session lab = lab_session();
  for (Session* s : {&v3, &lab}) {
    MDStructure md(*s);
    for (const std::string& text : md_corpus()) {
      los_failures += !los_check(md, parse_zf(text)).ok;
      ++sentences;
    }
    for (const ElementarityRecord& r : elementarity_suite(md, md_corpus())) disagreements += !r.agree();
  }
  for (std::size_t k : {2, 3}) {
    Session s = pure_session(exhaustive_universe(k));
    MDStructure md(s);
    collapse_failures += !verify_collapse(md, collapse_phi(md)).ok();
  }
  std::vector<GroundSet> pure;
  for (GroundSet g : lab.universe())
    if (is_pure(g)) pure.push_back(g);
  Session part = pure_session(pure);
  MDStructure md(part);
  collapse_failures += !verify_collapse(md, collapse_phi(md)).ok();
  std::ostringstream d;
  d << md_corpus().size() << "-sentence corpus on V_3 and the lab universe: " << los_failures
    << " Los failures, " << disagreements << " disagreements; " << collapse_failures
    << " collapse failures on 3 pure universes";
  return {md_corpus().size() >= 20 && los_failures == 0 && disagreements == 0 && collapse_failures == 0,
          d.str()};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("cannot run " + command);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  if (status != 0) throw std::runtime_error(command + " exited with status " + std::to_string(status));
  return out;
}

Outcome determinism(const std::string& binary) {
  std::string command = "'" + binary + "' report 2>/dev/null";
  std::string first = capture(command);
  std::string second = capture(command);
  std::ostringstream d;
  d << "two report runs of " << first.size() << " and " << second.size() << " bytes, "
    << (first == second ? "identical" : "different");
  return {!first.empty() && first == second, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <realiz binary>\n";
    return 2;
  }
  std::string binary = argv[1];
  struct Criterion {
    int id;
    const char* title;
    double budget;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "machine conformance", 1, machine_conformance},
      {2, "truth-value identities", 30, truth_value_identities},
      {3, "realizer suite", 300, realizer_check},
      {4, "mutation suite", 600, mutation_suite},
      {5, "ultrafilter laws", 0, ultrafilter_laws},
      {6, "rank oracle equivalence", 0, rank_oracles},
      {7, "well-foundedness preservation", 0, wellfoundedness_preservation},
      {8, "M_D end to end", 120, md_end_to_end},
      {9, "determinism", 0, [&] { return determinism(binary); }},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.budget == 0 || secs < c.budget;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail
              << " [" << std::fixed << std::setprecision(2) << secs << " s";
    if (c.budget > 0) std::cout << ", budget " << std::setprecision(0) << c.budget << " s";
    std::cout << "]" << (in_time ? "" : " over budget") << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
