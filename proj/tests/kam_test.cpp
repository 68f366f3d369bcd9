#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "realiz/errors.hpp"
#include "realiz/kam.hpp"

using namespace realiz;

namespace {

const Stack pi0{"pi0"};

Term random_term(std::mt19937& rng, std::size_t depth, int budget) {
  std::uniform_int_distribution<int> pick(0, budget <= 0 ? 2 : 6);
  switch (pick(rng)) {
    case 0:
      if (depth > 0) return make_var(std::uniform_int_distribution<std::size_t>(0, depth - 1)(rng));
      return make_instr("a");
    case 1:
      return make_callcc();
    case 2:
      return make_instr(std::uniform_int_distribution<int>(0, 1)(rng) ? "a" : "b");
    case 3:
    case 4:
      return make_lam(random_term(rng, depth + 1, budget - 1));
    case 5:
      return make_app(random_term(rng, depth, budget - 1), random_term(rng, depth, budget - 1));
    default:
      return make_cont(Stack({random_term(rng, 0, budget - 2)}, "pi1"));
  }
}

}  // namespace

TEST_CASE("identity grabs one argument") {
  Term xi = make_instr("xi");
  auto next = step({identity_term(), pi0.push(xi)});
  REQUIRE(next);
  CHECK(term_equal(next->term, xi));
  CHECK(next->stack == pi0);
}

TEST_CASE("Y unfolds to xi * (Y)xi.pi within five steps") {
  Term xi = make_instr("xi");
  Process p{turing_y(), pi0.push(xi)};
  Process target{xi, pi0.push(make_app(turing_y(), xi))};
  auto r = run(p, 5);
  bool reached = false;
  for (const auto& q : r.trace) reached = reached || q == target;
  CHECK(reached);
  CHECK(r.trace.size() - 1 == 4);
}

TEST_CASE("callcc saves the current stack") {
  Term xi = make_instr("xi");
  Stack rest = pi0.push(make_instr("b"));
  auto next = step({make_callcc(), rest.push(xi)});
  REQUIRE(next);
  CHECK(term_equal(next->term, xi));
  CHECK(next->stack == rest.push(make_cont(rest)));
}

TEST_CASE("run examples") {
  auto r1 = run({identity_term(), pi0.push(identity_term())}, 10);
  CHECK(r1.trace.size() == 2);
  CHECK(r1.status == RunStatus::Stuck);

  // Y * k[pi0].pi0: 4 steps to k[pi0] * ((Y)k[pi0]).pi0, the restore gives (Y)k[pi0] * pi0
  Term k0 = make_cont(pi0);
  auto r2 = run({turing_y(), pi0.push(k0)}, 10);
  REQUIRE(r2.trace.size() == 11);
  CHECK(r2.trace[4] == Process{k0, pi0.push(make_app(turing_y(), k0))});
  CHECK(r2.trace[5] == Process{make_app(turing_y(), k0), pi0});
  CHECK(r2.trace[6] == Process{turing_y(), pi0.push(k0)});
  CHECK(r2.status == RunStatus::FuelExhausted);

  auto r3 = run({omega_term(), pi0}, 100);
  CHECK(r3.status == RunStatus::FuelExhausted);
  CHECK(r3.trace.size() == 101);

  auto r4 = run({identity_term(), pi0}, 0);
  CHECK(r4.trace.size() == 1);
  CHECK(r4.status == RunStatus::Stuck);
}

TEST_CASE("golden traces") {
  std::ifstream in(std::string(REALIZ_TEST_DATA) + "/golden_traces.txt");
  REQUIRE(in);
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '|')) cols.push_back(col);
    REQUIRE(cols.size() == 6);
    INFO(line);
    Term t = parse_term(cols[0]);
    Stack s = parse_stack(cols[1]);
    auto r = run({t, s}, std::stoul(cols[2]));
    CHECK((r.status == RunStatus::Stuck ? "stuck" : "fuel") ==
          cols[3].substr(1, cols[3].size() - 2));
    CHECK(r.trace.size() - 1 == std::stoul(cols[4]));
    CHECK(r.trace.back() == parse_process(cols[5]));
    ++cases;
  }
  CHECK(cases == 30);
}

TEST_CASE("termination pole") {
  TerminationPole pole{100};
  CHECK(pole_member(pole, {identity_term(), pi0.push(identity_term())}));
  CHECK_FALSE(pole_member(pole, {omega_term(), pi0}));
  // fuel-exhausted counts as outside even if the run would stop later
  Process slow{make_app(identity_term(), make_app(identity_term(), make_instr("a"))), pi0};
  CHECK(pole_member(TerminationPole{4}, slow));
  CHECK_FALSE(pole_member(TerminationPole{3}, slow));
}

TEST_CASE("explicit pole is closed under anti-reduction") {
  Term xi = make_instr("xi");
  Stack pi = pi0.push(make_instr("b"));
  ExplicitPole pole{{Process{xi, pi}}, 100};
  Process query{make_app(identity_term(), xi), pi};
  // one anti-reduction step: (I)xi * pi -> I * xi.pi -> xi * pi
  auto next = step(query);
  REQUIRE(next);
  CHECK(pole_member(pole, query));
  CHECK(pole_member(pole, *next));
  CHECK_FALSE(pole_member(pole, {make_instr("other"), pi}));
  CHECK_FALSE(pole_member(ExplicitPole{}, {xi, pi}));
}

TEST_CASE("stack enumeration") {
  TermPool p1;
  p1.terms = {{"I", identity_term()}};
  p1.depth = 1;
  auto s1 = enumerate_stacks(p1);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == pi0);
  CHECK(s1[1] == pi0.push(identity_term()));

  TermPool p2;
  p2.terms = {{"I", identity_term()}, {"Y", turing_y()}};
  p2.depth = 2;
  CHECK(enumerate_stacks(p2).size() == 7);
  CHECK(count_stacks(2, 1, 2) == 7);

  TermPool p3;
  p3.depth = 3;
  auto s3 = enumerate_stacks(p3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0] == pi0);

  TermPool big = p2;
  big.depth = 20;
  big.stack_ceiling = 1000;
  CHECK_THROWS_AS(enumerate_stacks(big), ResourceError);
}

TEST_CASE("pool standard terms") {
  TermPool p;
  p.ensure_standard();
  REQUIRE(p.terms.size() == 2);
  CHECK(term_equal(*p.find("I"), identity_term()));
  CHECK(term_equal(*p.find("Y"), turing_y()));
}

TEST_CASE("parser and printer") {
  CHECK(term_equal(parse_term("\\x.x"), identity_term()));
  CHECK(term_equal(parse_term("(\\x.\\f.(f)(x)x f)\\x.\\f.(f)(x)x f"), turing_y()));
  CHECK(term_equal(parse_term("\\x.(x)\\y.y"), apply_to_i()));
  CHECK(term_equal(parse_term("\\x.(x)x"), parse_term("\\x.x x")));
  NamedTerms named{{"Y", turing_y()}};
  CHECK(term_equal(parse_term("<Y>", &named), turing_y()));
  CHECK(parse_stack("k[pi0].pi0") == pi0.push(make_cont(pi0)));
  CHECK_THROWS_AS(parse_term("\\x.y"), ParseError);
  CHECK_THROWS_AS(parse_term("(\\x.x"), ParseError);
  CHECK_THROWS_AS(parse_term("<Z>", &named), ParseError);
  try {
    parse_term("(x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
}

TEST_CASE("print/parse round trip on generated terms") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Term t = random_term(rng, 0, 6);
    std::string text = print_term(t);
    INFO(text);
    Term back = parse_term(text);
    CHECK(term_equal(back, t));
    CHECK(print_term(back) == text);
    Stack s({t, identity_term()}, "pi3");
    CHECK(parse_stack(print_stack(s)) == s);
  }
}

TEST_CASE("substitution avoids capture") {
  // (\y.\z.(y)z)[\w.w] and a body whose inner binder would capture a free index
  Term body = make_lam(make_app(make_var(1), make_var(0)));  // \z.(x)z with x = index 0 outside
  Term u = make_lam(make_var(0));
  Term r = substitute(body, u);
  CHECK(term_equal(r, make_lam(make_app(u, make_var(0)))));

  // open argument: its free index must be lifted under the binder
  Term open = make_var(3);
  Term r2 = substitute(body, open);
  CHECK(term_equal(r2, make_lam(make_app(make_var(4), make_var(0)))));

  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    Term b = random_term(rng, 1, 5);
    Term arg = random_term(rng, 0, 3);
    Term out = substitute(b, arg);
    CHECK(is_closed(out));
  }
}

TEST_CASE("machine properties on generated processes") {
  std::mt19937 rng(3);
  TerminationPole pole{200};
  for (int i = 0; i < 400; ++i) {
    Term t = random_term(rng, 0, 5);
    Stack s({random_term(rng, 0, 3), random_term(rng, 0, 3)}, "pi0");
    Process p{t, s};
    // determinism: stepping twice gives equal results
    auto a = step(p);
    auto b = step(p);
    CHECK(a.has_value() == b.has_value());
    if (!a) continue;
    CHECK(*a == *b);
    // anti-reduction for the termination pole
    auto len = steps_to_halt(*a, pole.fuel);
    if (len && *len < pole.fuel) CHECK(pole_member(pole, p) == pole_member(pole, *a));
    // continuations appear in head position only after cc or a restore
    if (a->term->has_cont && !p.term->has_cont) {
      bool consumed = p.term->kind == TermKind::CallCC || s.top()->has_cont;
      CHECK(consumed);
    }
  }
}

TEST_CASE("proof-like predicate") {
  CHECK(is_proof_like(turing_y()));
  CHECK(is_proof_like(make_callcc()));
  CHECK_FALSE(is_proof_like(make_cont(pi0)));
  CHECK_FALSE(is_proof_like(make_instr("a")));
  CHECK(is_proof_like(make_instr("a"), {"a"}));
}

TEST_CASE("single-edit mutants") {
  auto ms = single_edit_mutants(identity_term());
  CHECK(ms.size() >= 3);
  for (const auto& m : ms) {
    CHECK(is_closed(m));
    CHECK_FALSE(term_equal(m, identity_term()));
  }
  CHECK(single_edit_mutants(turing_y()).size() >= 3);
  CHECK(single_edit_mutants(apply_to_i()).size() >= 3);
}
