#include <algorithm>
#include <chrono>

#include "doctest.h"
#include "realiz/errors.hpp"
#include "realiz/lab.hpp"

using namespace realiz;

namespace {

FormulaEps F(const char* text) { return parse_eps(text); }

}  // namespace

TEST_CASE("atomic truth values") {
  Session s = lab_session(lab_universe_spec());
  CHECK(s.universe().size() <= 12);
  CHECK(s.truth_value(F("0 epsnot 0")).empty());
  CHECK(s.truth_value(F("bot")).stacks == s.pi_d());
  CHECK(s.truth_value(F("top")).empty());
  for (GroundSet u : s.universe())
    for (GroundSet v : s.universe()) {
      if (v.is_symbolic() || !v.is_set()) continue;
      Env env{{"u", u}, {"v", v}};
      auto tv = s.truth_value(F("u epsnot gimel(v)"), env);
      if (v.contains(u))
        CHECK(tv.stacks == s.pi_d());
      else
        CHECK(tv.empty());
    }
}

TEST_CASE("theorem parties realizers") {
  auto t0 = std::chrono::steady_clock::now();
  Session s = lab_session(lab_universe_spec());
  auto v = s.realizes(identity_term(), F("forall x y z. z eps y, z epsnot vset(x) -> y epsnot x"));
  CHECK(v.validated());
  MESSAGE("tests " << v.tests << " evals " << s.stats().truth_evaluations << " poles "
                   << s.stats().pole_checks << " ms "
                   << std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count());
}

TEST_CASE("empty pole refutes bottom at the empty stack") {
  Session s(exhaustive_universe(2), lab_pool(), ExplicitPole{{}, 1000, {}});
  Verdict v = s.realizes(identity_term(), F("bot"));
  REQUIRE(v.refuted());
  CHECK(*v.stack == Stack("pi0"));
  CHECK(s.truth_value(F("bot")).stacks == s.pi_d());
  for (const auto& [name, t] : s.pool().terms) CHECK(s.realizes(t, F("0 epsnot 1 -> bot")).refuted());
}

TEST_CASE("force report") {
  Session s = lab_session();
  GroundSet a = s.universe()[1];
  GroundSet b = s.universe().back();
  auto id = s.force_report(F("a epsnot b -> a epsnot b"), {{"a", a}, {"b", b}});
  REQUIRE(id.has_value());
  CHECK(print_term(*id) == print_term(identity_term()));
  auto d1 = s.force_report(F("D(1)"));
  REQUIRE(d1.has_value());
  Session adv = adversarial_session();
  auto y = adv.force_report(F("D(1)"));
  REQUIRE(y.has_value());
  CHECK(print_term(*y) == print_term(turing_y()));
  CHECK(s.realizes(turing_y(), F("D(1)")).validated());
  TermPool diverging;
  diverging.terms = {{"W", omega_term()}};
  diverging.depth = 2;
  Session w(exhaustive_universe(2), diverging, TerminationPole{1000});
  CHECK_FALSE(w.force_report(F("bot")).has_value());
}

TEST_CASE("restricted quantifiers are unions") {
  Session s = lab_session();
  FormulaEps body = F("x epsnot b");
  for (GroundSet e : exhaustive_universe(3))
    for (GroundSet b : s.universe()) {
      Env env{{"e", e}, {"b", b}};
      std::vector<Stack> u;
      for (GroundSet x : e.elements()) {
        auto part = s.truth_value(body, {{"x", x}, {"b", b}}).stacks;
        u.insert(u.end(), part.begin(), part.end());
      }
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      CHECK(s.truth_value(F("forall x : gimel(e). x epsnot b"), env).stacks == u);
    }
}

TEST_CASE("hook transparency") {
  Session s = lab_session();
  for (GroundSet a : s.universe())
    for (GroundSet b : s.universe()) {
      Env env{{"a", a}, {"b", b}};
      auto guarded = s.truth_value(F("[a in b] ~> a epsnot b"), env);
      auto plain = s.truth_value(F("a epsnot b"), env);
      if (s.m_models(parse_zf("a in b"), env))
        CHECK(guarded == plain);
      else
        CHECK(guarded.empty());
      CHECK(std::includes(plain.stacks.begin(), plain.stacks.end(), guarded.stacks.begin(),
                          guarded.stacks.end()));
    }
}

TEST_CASE("refutations persist in larger pools") {
  TermPool small;
  small.terms = {{"I", identity_term()}, {"Y", turing_y()}, {"AI", apply_to_i()}};
  small.depth = 2;
  auto pure = exhaustive_universe(3);
  Session s0(pure, small, TerminationPole{10000});
  Session s1(pure, lab_pool(), TerminationPole{10000});
  std::size_t refuted = 0;
  for (const auto& e : realizer_suite()) {
    if (e.wide) continue;
    FormulaEps f = F(e.formula.c_str());
    for (const auto& m : single_edit_mutants(*s0.pool().find(e.realizer))) {
      if (!s0.realizes(m, f).refuted()) continue;
      ++refuted;
      CHECK_MESSAGE(s1.realizes(m, f).refuted(), e.name << " " << print_term(m));
    }
  }
  CHECK(refuted > 0);
}

TEST_CASE("realizer suite") {
  auto t0 = std::chrono::steady_clock::now();
  Session s = lab_session();
  for (const auto& e : realizer_suite()) {
    const Term* xi = s.pool().find(e.realizer);
    REQUIRE(xi != nullptr);
    Verdict v = s.realizes(*xi, F(e.formula.c_str()));
    CHECK_MESSAGE(v.validated(), e.name);
    CHECK(v.tests > 0);
  }
  CHECK(s.stats().max_depth < s.max_depth);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::minutes(5));
}

TEST_CASE("mutation machinery") {
  Session s = adversarial_session();
  Session compact = adversarial_session(2, true);
  for (const auto& e : realizer_suite())
    CHECK(single_edit_mutants(*s.pool().find(e.realizer)).size() >= 3);
  MutationSummary m = run_mutation_suite(s, realizer_suite(), &compact);
  CHECK(m.originals_validated);
  CHECK(m.total == m.outcomes.size());
  CHECK(m.refuted + m.equivalent <= m.total);
  for (const auto& o : m.outcomes)
    if (o.equivalent) CHECK_FALSE(o.refuted);
  CHECK(m.refuted > 0);
  MESSAGE("mutants " << m.total << " refuted " << m.refuted << " equivalent " << m.equivalent
                     << " score " << m.score());
}

TEST_CASE("arrow truth values at depth zero") {
  Session s = lab_session(lab_universe_spec(), lab_pool(0));
  CHECK(s.pi_d().size() == 1);
  CHECK(s.truth_value(F("bot -> bot")).empty());
  CHECK(s.realizes(identity_term(), F("forall x. x epsnot x -> x epsnot x")).validated());
}
