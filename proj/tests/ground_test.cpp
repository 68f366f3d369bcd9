#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "realiz/errors.hpp"
#include "realiz/ground.hpp"

using namespace realiz;

namespace {

const GroundSet E;  // ∅
const Stack pi0{"pi0"};

GroundSet S(std::initializer_list<GroundSet> es) { return GroundSet::set(es); }

PlainGroundContext small_ctx() {
  TermPool pool;
  pool.terms = {{"I", identity_term()}};
  pool.depth = 1;
  return PlainGroundContext(enumerate_stacks(pool), 1);
}

// Denotation used by the extensionality check: nested std::set of ranks-free codes.
std::string denote(GroundSet g) {
  std::set<std::string> inner;
  for (GroundSet e : g.elements()) inner.insert(denote(e));
  std::string out = "{";
  for (const auto& s : inner) out += s + ",";
  return out + "}";
}

}  // namespace

TEST_CASE("interning gives structural equality") {
  CHECK(S({E, S({E})}) == S({S({E}), E, E}));
  CHECK(S({}) == E);
  CHECK(GroundSet::atom(pi0) == GroundSet::atom(Stack("pi0")));
  CHECK(GroundSet::times_pi(E) == GroundSet::times_pi(S({})));
}

TEST_CASE("kuratowski pairs") {
  CHECK(kuratowski_pair(E, E) == S({S({E})}));
  CHECK(kuratowski_pair(E, S({E})) == S({S({E}), S({E, S({E})})}));
  auto v3 = exhaustive_universe(2);  // rank <= 1 : {∅, {∅}}
  auto v = exhaustive_universe(3);
  for (GroundSet a : v)
    for (GroundSet b : v)
      for (GroundSet c : v)
        for (GroundSet d : v)
          CHECK((kuratowski_pair(a, b) == kuratowski_pair(c, d)) == (a == c && b == d));
  for (GroundSet a : v)
    for (GroundSet b : v) {
      auto p = unpair(kuratowski_pair(a, b));
      REQUIRE(p);
      CHECK(p->first == a);
      CHECK(p->second == b);
    }
  CHECK(v3.size() == 2);
}

TEST_CASE("transitive closure") {
  CHECK(transitive_closure(S({E})) == S({E}));
  CHECK(transitive_closure(S({S({E})})) == S({S({E}), E}));
  GroundSet p = kuratowski_pair(E, S({E}));
  CHECK(transitive_closure(p) == transitive_closure_fixpoint(p));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    GroundSet x = random_pure_set(rng, 4, 3);
    GroundSet c = transitive_closure(x);
    CHECK(c == transitive_closure_fixpoint(x));
    CHECK(transitive_closure(c) == c);
    for (GroundSet e : x.elements()) CHECK(c.contains(e));
  }
}

TEST_CASE("less relation") {
  CHECK(less(E, S({E})));
  auto v = exhaustive_universe(4);
  for (GroundSet x : v) CHECK_FALSE(less(x, x));
  // < is transitive and acyclic: rank strictly decreases along it
  for (GroundSet x : v)
    for (GroundSet y : v)
      if (less(y, x)) CHECK(y.rank() < x.rank());

  auto ctx = small_ctx();
  GroundSet gimel2 = GroundSet::times_pi(nat(2));
  CHECK(less(E, gimel2, ctx));
  CHECK(less(nat(1), gimel2, ctx));
  CHECK(less(GroundSet::atom(pi0), gimel2, ctx));
}

TEST_CASE("canonical order") {
  auto v = exhaustive_universe(4);
  REQUIRE(v.size() == 16);
  CHECK(v[0] == E);
  CHECK(v[1] == S({E}));
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    CHECK(v[i] < v[i + 1]);
    CHECK_FALSE(v[i + 1] < v[i]);
  }
  // atoms come after every set
  GroundSet a = GroundSet::atom(pi0);
  for (GroundSet x : v) CHECK(x < a);
  // transitivity on a random sample
  std::mt19937_64 rng(9);
  std::vector<GroundSet> xs;
  for (int i = 0; i < 60; ++i) xs.push_back(random_pure_set(rng, 4, 3));
  for (GroundSet x : xs)
    for (GroundSet y : xs)
      for (GroundSet z : xs)
        if (x < y && y < z) CHECK(x < z);
}

TEST_CASE("universes") {
  CHECK(exhaustive_universe(0).empty());
  CHECK(exhaustive_universe(1).size() == 1);
  CHECK(exhaustive_universe(2).size() == 2);
  CHECK(exhaustive_universe(3).size() == 4);
  CHECK_THROWS_AS(exhaustive_universe(5), ResourceError);
  for (GroundSet x : exhaustive_universe(4)) CHECK(x.rank() < 4);

  auto u = seeded_universe({E}, {SeedOp::Singleton, SeedOp::Pair}, 12);
  CHECK(u.size() == 12);
  CHECK(std::is_sorted(u.begin(), u.end()));
  CHECK(seeded_universe({E}, {SeedOp::Singleton, SeedOp::Pair}, 12) == u);
  auto closed = seeded_universe({nat(2)}, {SeedOp::Closure}, 50);
  CHECK(closed.size() == 1);  // Cl(2) = 2
}

TEST_CASE("literal syntax round trip") {
  CHECK(parse_ground("{}") == E);
  CHECK(parse_ground("{{}}") == nat(1));
  CHECK(parse_ground("2") == S({E, S({E})}));
  CHECK(parse_ground("pair(0,1)") == kuratowski_pair(E, nat(1)));
  CHECK(parse_ground("timespi(2)") == GroundSet::times_pi(nat(2)));
  CHECK(parse_ground("atom[pi0]") == GroundSet::atom(pi0));
  CHECK(print_ground(E) == "0");
  CHECK(print_ground(S({S({E})})) == "{1}");
  CHECK_THROWS_AS(parse_ground("{0,"), ParseError);
  CHECK_THROWS_AS(parse_ground("pair(0)"), ParseError);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    GroundSet x = random_pure_set(rng, 4, 4);
    if (i % 3 == 0) x = kuratowski_pair(x, GroundSet::atom(Stack({identity_term()}, "pi0")));
    if (i % 7 == 0) x = GroundSet::subsets_times_pi(x);
    CHECK(parse_ground(print_ground(x)) == x);
  }
}

TEST_CASE("canonical equality is extensional equality") {
  auto v = exhaustive_universe(4);
  std::vector<GroundSet> ranked;
  for (GroundSet a : v)
    for (GroundSet b : v) ranked.push_back(S({a, b}));
  for (GroundSet a : ranked)
    for (GroundSet b : ranked) CHECK((a == b) == (denote(a) == denote(b)));
}

TEST_CASE("symbolic shapes agree with their expansions") {
  auto ctx = small_ctx();
  REQUIRE(ctx.pi_d().size() == 2);
  GroundSet g = GroundSet::times_pi(nat(2));
  GroundSet eg = expand(g, ctx);
  CHECK(eg.size() == 4);
  CHECK(expand(eg, ctx) == eg);
  for (GroundSet u : exhaustive_universe(3)) {
    for (const auto& s : ctx.pi_d()) {
      GroundSet cell = kuratowski_pair(u, GroundSet::atom(s));
      CHECK(ground_member(cell, g, ctx) == eg.contains(cell));
    }
    CHECK(entry_stacks(u, g, ctx) == entry_stacks(u, eg, ctx));
  }

  // P(1 × Π_1) × Π_1 has 2^2 subsets and 2 stacks
  GroundSet q = GroundSet::subsets_times_pi(nat(1));
  GroundSet eq = expand(q, ctx);
  CHECK(eq.size() == 8);
  for (GroundSet cell : eq.elements()) CHECK(ground_member(cell, q, ctx));
  CHECK_FALSE(ground_member(kuratowski_pair(nat(1), GroundSet::atom(pi0)), q, ctx));
  GroundSet sub = S({kuratowski_pair(E, GroundSet::atom(pi0))});
  CHECK(entry_stacks(sub, q, ctx) == ctx.pi_d());
  CHECK(entry_stacks(sub, q, ctx) == entry_stacks(sub, eq, ctx));
  CHECK(entry_stacks(nat(1), q, ctx).empty());

  GroundSet big = GroundSet::subsets_times_pi(nat(5));
  TermPool pool;
  pool.terms = {{"I", identity_term()}, {"Y", turing_y()}};
  PlainGroundContext wide(enumerate_stacks(pool), 2);
  CHECK_THROWS_AS(expand(big, wide), ResourceError);
}

TEST_CASE("guarded entries and patterns") {
  auto ctx = small_ctx();
  GroundSet n = make_guarded({{E, pattern_push_marker("1", pattern_all())},
                              {nat(1), pattern_push_marker("0", pattern_all())}});
  auto s0 = entry_stacks(E, n, ctx);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0] == pi0.push(make_instr("1")));
  CHECK(entry_names(n, ctx) == std::optional<std::vector<GroundSet>>({E, nat(1)}));
  GroundSet en = expand(n, ctx);
  CHECK(en.size() == 2);
  CHECK(entry_stacks(nat(1), en, ctx) == entry_stacks(nat(1), n, ctx));
  CHECK(ground_member(kuratowski_pair(E, GroundSet::atom(s0[0])), n, ctx));

  GroundSet only = make_guarded({{E, pattern_only({pi0})}});
  CHECK(expand(only, ctx) == S({kuratowski_pair(E, GroundSet::atom(pi0))}));
}
