#include "doctest.h"
#include "realiz/errors.hpp"
#include "realiz/syntax.hpp"

using namespace realiz;

TEST_CASE("name terms") {
  auto t = parse_name_term("{0, 1}");
  CHECK(t->kind == NameKind::Const);
  CHECK(t->value == nat(2));
  auto u = parse_name_term("kpair(x, {y, 0})");
  CHECK(u->kind == NameKind::Apply);
  CHECK(u->free == std::vector<std::string>{"x", "y"});
  CHECK(parse_name_term("pair(0, 1)")->value == kuratowski_pair(nat(0), nat(1)));
  auto c = parse_name_term("compr[y. y epsnot a](b)");
  CHECK(c->free == std::vector<std::string>{"a", "b"});
  auto k = parse_name_term("skolem[x; y. x in y](z)");
  CHECK(k->binders == std::vector<std::string>{"x", "y"});
  CHECK(k->free == std::vector<std::string>{"z"});
  Constants consts{{"a", nat(3)}};
  CHECK(parse_name_term("a", &consts)->value == nat(3));
  CHECK_THROWS_AS(parse_name_term("kpair(x)"), ParseError);
  CHECK_THROWS_AS(parse_name_term("nosuch(x)"), ParseError);
  CHECK_THROWS_AS(parse_name_term("chi[x. x in y]()"), ParseError);
}

TEST_CASE("ground formulas") {
  auto f = parse_zf("exists x. forall y. y notin x");
  CHECK(f->kind == ZfKind::Exists);
  CHECK(f->free.empty());
  auto g = parse_zf("x >= y");
  CHECK(g->kind == ZfKind::Sub);
  CHECK(g->lhs->text == "y");
  auto h = parse_zf("forall z in x. z in y -> z = z");
  CHECK(h->kind == ZfKind::ForallIn);
  CHECK(h->free == std::vector<std::string>{"x", "y"});
  CHECK_THROWS_AS(parse_zf("x in"), ParseError);
  CHECK_THROWS_AS(parse_zf("x ~ y"), ParseError);
}

TEST_CASE("eps formulas desugar to the primitive language") {
  auto f = parse_eps("not a epsnot b");
  REQUIRE(f->kind == EpsKind::Arrow);
  CHECK(f->b->kind == EpsKind::Bot);
  CHECK(parse_eps("a eps b")->text == f->text);
  auto g = parse_eps("z eps y, z epsnot V -> y epsnot x");
  REQUIRE(g->kind == EpsKind::Arrow);
  CHECK(g->b->kind == EpsKind::Arrow);
  CHECK(parse_eps("forall x y. x epsnot y")->a->kind == EpsKind::Forall);
  auto r = parse_eps("forall a : gimel(2). a epsnot b");
  CHECK(r->kind == EpsKind::ForallIn);
  CHECK(r->free == std::vector<std::string>{"b"});
  auto h = parse_eps("[x = y] ~> x epsnot a");
  CHECK(h->kind == EpsKind::Hook);
  CHECK(parse_eps("x != y")->kind == EpsKind::Hook);
  CHECK(parse_eps("D(1)")->kind == EpsKind::D);
  CHECK(parse_eps("x notin y")->kind == EpsKind::NotIn);
  CHECK(parse_eps("top")->kind == EpsKind::Hook);
  CHECK_THROWS_AS(parse_eps("a, b"), ParseError);
  CHECK_THROWS_AS(parse_eps("x in y"), ParseError);
  CHECK_THROWS_AS(parse_eps("forall bot. x epsnot y"), ParseError);
}

TEST_CASE("printing round trips") {
  const char* corpus[] = {
      "forall x y z. z eps y, z epsnot vset(x) -> y epsnot x",
      "forall x. compr[y. y = y](x) eps qset(x)",
      "forall a : gimel(2). forall x y. [a = 1] ~> x epsnot scale(a, y)",
      "not D(0)",
      "exists y eps x. z eps y",
      "forall x. (x subset x) & (x simeq x) or x cong x",
      "forall x y. [chi[u,v. u < v](x,y) != 1] ~> x epsnot gimel(cl(y))",
      "forall w : gimel(stacks()). wchoice[x,y. x epsnot y](a, w) epsnot b",
      "image[x. kpair(x, x)](a) subseteq phi[x. x epsnot a]()",
      "skolem[x;y. x in y](a) notin gamma[y. y epsnot a]()",
  };
  for (const char* src : corpus) {
    INFO(src);
    auto f = parse_eps(src);
    CHECK(parse_eps(f->text)->text == f->text);
  }
  auto z = parse_zf("forall x. exists y. (x in y & not y = x) <-> x <= y");
  CHECK(parse_zf(z->text)->text == z->text);
}

TEST_CASE("substitution and closures") {
  auto f = parse_eps("forall y. x epsnot y");
  auto g = substitute(f, "x", nt_const(nat(1)));
  CHECK(g->free.empty());
  CHECK(g->text == parse_eps("forall y. 1 epsnot y")->text);
  CHECK(substitute(f, "y", nt_const(nat(1))) == f);
  CHECK_THROWS_AS(substitute(f, "x", nt_var("y")), PreconditionError);
  auto c = make_closure(f, {{"x", nat(2)}, {"q", nat(0)}});
  REQUIRE(c.env.size() == 1);
  CHECK(c.env[0].second == nat(2));
  CHECK_THROWS_AS(make_closure(f, {}), PreconditionError);
}

TEST_CASE("D unfolds to the induction scheme") {
  auto d = unfold_d(nt_const(nat(1)));
  CHECK(d->kind == EpsKind::Forall);
  CHECK(d->free.empty());
  CHECK(d->a->kind == EpsKind::Arrow);
}
