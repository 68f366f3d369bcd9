#include "realiz/lab.hpp"

#include <algorithm>

#include "realiz/errors.hpp"

namespace realiz {

TermPool lab_pool(std::size_t d) {
  TermPool pool;
  pool.terms = {{"I", identity_term()},
                {"Y", turing_y()},
                {"AI", apply_to_i()},
                {"W", omega_term()},
                {"P2", parse_term("\\x.\\y.(\\u.(u)u)\\u.(u)u")},
                {"P3", parse_term("\\x.\\y.\\z.(\\u.(u)u)\\u.(u)u")}};
  pool.depth = d;
  return pool;
}

UniverseSpec lab_universe_spec(std::uint64_t seed) {
  UniverseSpec spec;
  spec.strategy = UniverseSpec::Strategy::Exhaustive;
  spec.rank = 3;
  spec.gimel_names = 2;
  spec.random_names = 3;
  spec.seed = seed;
  return spec;
}

Session lab_session(const UniverseSpec& spec, TermPool pool, Pole pole) {
  auto pi = enumerate_stacks(pool);
  return Session(build_universe(spec, pi), std::move(pool), std::move(pole));
}

Pole stop_pole(std::size_t fuel) { return ExplicitPole{{}, fuel, {kStopTag}}; }

TermPool adversarial_pool(std::size_t d) {
  TermPool pool = lab_pool(d);
  const std::pair<const char*, const char*> extra[] = {
      {"ok", "#ok"},
      {"no", "#no"},
      {"K", "\\x.\\y.x"},
      {"KI", "\\x.\\y.y"},
      {"Aok", "\\x.(x)#ok"},
      {"T", "\\x.\\y.(y)x"},
      {"AAok", "\\x.(x)\\y.(y)#ok"}};
  for (const auto& [name, text] : extra) pool.terms.emplace_back(name, parse_term(text));
  return pool;
}

std::vector<GroundSet> adversarial_names(const TermPool& pool) {
  GroundSet b0;
  GroundSet b1 = GroundSet::set({b0});
  GroundSet b2 = GroundSet::set({b1});
  auto cell = [](GroundSet b, const Term& t) {
    return kuratowski_pair(b, GroundSet::atom(Stack(std::vector<Term>{t}, "pi0")));
  };
  auto term = [&](const char* name) {
    const Term* t = pool.find(name);
    if (t == nullptr) throw PreconditionError(std::string("pool lacks ") + name);
    return *t;
  };
  std::vector<Term> heads{term(kStopTag), term("Aok"), term("I")};
  std::vector<GroundSet> out;
  for (const auto& [name, t] : pool.terms) out.push_back(GroundSet::set({cell(b0, t)}));
  for (const auto& h : heads)
    for (const auto& [name, t] : pool.terms) out.push_back(GroundSet::set({cell(b0, h), cell(b1, t)}));
  for (const auto& h : heads)
    for (const auto& [name, t] : pool.terms)
      out.push_back(GroundSet::set({cell(b0, heads[0]), cell(b1, h), cell(b2, t)}));
  return out;
}

Session adversarial_session(std::size_t d, bool compact) {
  TermPool pool = adversarial_pool(d);
  UniverseSpec spec = lab_universe_spec();
  spec.random_names = 0;
  auto universe = build_universe(spec, enumerate_stacks(pool));
  if (!compact) {
    auto names = adversarial_names(pool);
    universe.insert(universe.end(), names.begin(), names.end());
  }
  return Session(std::move(universe), std::move(pool), stop_pole());
}

const std::vector<SuiteEntry>& realizer_suite() {
  static const std::vector<SuiteEntry> suite = {
      {"parties_i", "I", "forall x y z. z eps y, z epsnot vset(x) -> y epsnot x"},
      {"parties_ii", "I", "forall x z. compr[y. y epsnot z](x) eps qset(x)"},
      {"collection", "AI",
       "forall a. (forall x. x eps gimel(psi()) -> x epsnot a) -> forall x. x epsnot a"},
      {"sqcup_i_kpair", "I",
       "forall a : gimel(2). forall x y. scale(a, kpair(x,y)) = scale(a, kpair(scale(a,x), y))"},
      {"sqcup_i_join", "I",
       "forall a : gimel(2). forall x y. scale(a, join(x,y)) = scale(a, join(scale(a,x), y))"},
      {"sqcup_ii", "I",
       "forall a : gimel(2). forall b : gimel(2). forall x u y v. [band(a,b) = 0] ~> "
       "join(join(scale(a,x), scale(b,u)), join(scale(a,y), scale(b,v))) = "
       "join(scale(a, join(x,y)), scale(b, join(u,v)))",
       true},
      {"ppt_i", "I", "forall x y. chi[u,v. u < v](x,y) != 1 -> x epsnot y"},
      {"ppt_ii", "I", "forall u v. [u in v] ~> u eps gimel(v)"},
      {"ppt_iii", "I",
       "forall x y. forall a : gimel(2). [a <= chi[u,v. u < v](x,y)] ~> "
       "scale(a,x) eps gimel(cl(sing(y)))"},
      {"ppt_iv_a", "I", "forall x y. x epsnot gimel(cl(y)) -> chi[u,v. u < v](x,y) != 1"},
      {"ppt_iv_b", "I", "forall x y. chi[u,v. u < v](x,y) != 1 -> x epsnot gimel(cl(y))"},
      {"choix_faible", "I",
       "forall x y. (forall w : gimel(stacks()). x epsnot wchoice[p,q. p epsnot q](x,w)) -> "
       "x epsnot y"},
      {"cons_bf", "Y",
       "forall X. (forall x. (forall y. [chi[u,v. u < v](y,x) = 1] ~> y epsnot X) -> "
       "x epsnot X) -> forall x. x epsnot X"},
      {"D1", "Y", "D(1)"},
      {"notD0", "AI", "not D(0)"},
      {"Ff_i", "I", "forall x y. [chi[x. forall y. y in x](x) <= chi[x,y. y in x](x,y)]"},
      {"Ff_ii", "I",
       "forall x. chi[x. forall y. y in x](x) = "
       "chi[x,y. y in x](x, skolem[x;y. y in x](x))"},
  };
  return suite;
}

double MutationSummary::score() const {
  std::size_t live = total - equivalent;
  return live == 0 ? 1.0 : static_cast<double>(refuted) / static_cast<double>(live);
}

MutationSummary run_mutation_suite(Session& main, const std::vector<SuiteEntry>& suite,
                                   Session* compact) {
  MutationSummary out;
  for (const auto& e : suite) {
    Session& session = e.wide && compact != nullptr ? *compact : main;
    const Term* xi = session.pool().find(e.realizer);
    if (xi == nullptr) throw PreconditionError("pool lacks realizer " + e.realizer);
    FormulaEps f = parse_eps(e.formula);
    if (!session.realizes(*xi, f).validated()) {
      out.originals_validated = false;
      out.invalid_originals.push_back(e.name);
    }
    for (const auto& m : single_edit_mutants(*xi)) {
      MutantOutcome r{e.name, m};
      r.refuted = session.realizes(m, f).refuted();
      if (!r.refuted) r.equivalent = head_equivalent(m, *xi);
      ++out.total;
      out.refuted += r.refuted;
      out.equivalent += r.equivalent;
      out.outcomes.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace realiz
