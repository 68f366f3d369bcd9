// Recursive-descent parsers for name terms, ground formulas and ZF_ε formulas.
//
//   eps     := quant | imp
//   quant   := ('forall' | 'exists') ident+ [':' 'gimel' '(' term ')' | 'eps' term] '.' eps
//   imp     := iff (',' iff)* ['->' eps]
//   iff     := or ['<->' or]
//   or      := and ('or' and)*
//   and     := unary ('&' unary)*
//   unary   := 'not' unary | quant | '(' eps ')' | '[' zf ']' ['~>' eps] | 'bot' | 'top'
//            | 'D' '(' term ')' | term rel term
//
// The ground grammar has the same shape with 'in' bounds and the relations
// in, notin, =, !=, <, <=, >=.

#include <cctype>

#include "realiz/errors.hpp"
#include "realiz/syntax.hpp"

namespace realiz {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

const std::vector<std::string_view> kKeywords = {
    "bot", "top", "in", "notin", "epsnot", "eps", "subset", "simeq", "subseteq", "cong",
    "not", "or", "forall", "exists"};

bool is_keyword(std::string_view w) {
  for (auto k : kKeywords)
    if (k == w) return true;
  return false;
}

class Parser {
 public:
  Parser(std::string_view src, const Constants* constants) : src_(src), constants_(constants) {}

  template <class F>
  auto whole(F&& f) {
    auto r = f();
    skip();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return r;
  }

  // ---- lexing helpers
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at(std::string_view s) {
    skip();
    return src_.substr(pos_, s.size()) == s;
  }

  bool eat(std::string_view s) {
    if (!at(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!eat(s)) fail("expected '" + std::string(s) + "'");
  }

  std::string peek_word() {
    skip();
    std::size_t p = pos_;
    if (p >= src_.size() || !ident_start(src_[p])) return {};
    while (p < src_.size() && ident_char(src_[p])) ++p;
    return std::string(src_.substr(pos_, p - pos_));
  }

  bool eat_word(std::string_view w) {
    if (peek_word() != w) return false;
    pos_ += w.size();
    return true;
  }

  std::string ident() {
    std::string w = peek_word();
    if (w.empty()) fail("expected identifier");
    if (is_keyword(w)) fail("keyword '" + w + "' used as identifier");
    pos_ += w.size();
    return w;
  }

  bool followed_by_paren(std::size_t p) const {
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    return p < src_.size() && src_[p] == '(';
  }

  // ---- name terms
  NameTerm term() {
    skip();
    if (pos_ >= src_.size()) fail("expected a term");
    char c = src_[pos_];
    std::size_t start = pos_;
    if (c == '{') {
      ++pos_;
      std::vector<NameTerm> es;
      if (!eat("}")) {
        do es.push_back(term());
        while (eat(","));
        expect("}");
      }
      return wrap(start, [&] { return nt_apply("set", std::move(es)); });
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::size_t n = std::stoul(std::string(src_.substr(b, pos_ - b)));
      if (n > 64) fail("numeral too large");
      return nt_const(nat(n));
    }
    std::string w = peek_word();
    if (w.empty()) fail("expected a term");
    if (w == "atom" && src_.substr(pos_ + 4, 1) == "[") {
      pos_ += 5;
      int nest = 1;
      while (pos_ < src_.size() && nest > 0) {
        if (src_[pos_] == '[') ++nest;
        if (src_[pos_] == ']') --nest;
        ++pos_;
      }
      if (nest != 0) fail("unterminated atom");
      return nt_const(parse_ground(src_.substr(start, pos_ - start)));
    }
    if (is_keyword(w)) fail("keyword '" + w + "' where a term was expected");
    pos_ += w.size();
    if (is_binder_symbol(w) && at("[")) return binder_term(start, w);
    if (at("(")) {
      ++pos_;
      std::vector<NameTerm> args;
      if (!eat(")")) {
        do args.push_back(term());
        while (eat(","));
        expect(")");
      }
      return wrap(start, [&] { return nt_apply(w, std::move(args)); });
    }
    if (constants_ != nullptr)
      for (const auto& [name, value] : *constants_)
        if (name == w) return nt_const(value);
    return nt_var(w);
  }

  template <class F>
  NameTerm wrap(std::size_t start, F&& f) {
    try {
      return f();
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), start);
    }
  }

  NameTerm binder_term(std::size_t start, const std::string& symbol) {
    expect("[");
    std::vector<std::string> binders;
    binders.push_back(ident());
    for (;;) {
      if (eat(",")) {
        binders.push_back(ident());
      } else if (symbol == "skolem" && eat(";")) {
        binders.push_back(ident());
        break;
      } else {
        break;
      }
    }
    expect(".");
    FormulaEps eps;
    FormulaZF zf;
    NameTerm body;
    if (symbol == "chi" || symbol == "skolem") {
      zf = zf_formula();
    } else if (symbol == "image") {
      body = term();
    } else {
      eps = eps_formula();
    }
    expect("]");
    std::vector<NameTerm> args;
    if (eat("(")) {
      if (!eat(")")) {
        do args.push_back(term());
        while (eat(","));
        expect(")");
      }
    }
    return wrap(start, [&] {
      return nt_binder(symbol, std::move(binders), std::move(eps), std::move(zf), std::move(body),
                       std::move(args));
    });
  }

  // ---- ground formulas
  FormulaZF zf_formula() {
    std::string w = peek_word();
    if (w == "forall" || w == "exists") return zf_quantifier();
    FormulaZF lhs = zf_iff();
    if (eat("->")) return zf_binary(ZfKind::Imp, lhs, zf_formula());
    return lhs;
  }

  FormulaZF zf_quantifier() {
    bool all = peek_word() == "forall";
    pos_ += 6;  // "forall" and "exists" have the same length
    std::vector<std::string> vars;
    do vars.push_back(ident());
    while (!at(".") && peek_word() != "in");
    NameTerm bound;
    if (eat_word("in")) bound = term();
    expect(".");
    FormulaZF body = zf_formula();
    ZfKind k = bound ? (all ? ZfKind::ForallIn : ZfKind::ExistsIn)
                     : (all ? ZfKind::Forall : ZfKind::Exists);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = zf_quant(k, *it, body, bound);
    return body;
  }

  FormulaZF zf_iff() {
    FormulaZF lhs = zf_or();
    if (eat("<->")) return zf_binary(ZfKind::Iff, lhs, zf_or());
    return lhs;
  }

  FormulaZF zf_or() {
    FormulaZF lhs = zf_and();
    while (eat_word("or")) lhs = zf_binary(ZfKind::Or, lhs, zf_and());
    return lhs;
  }

  FormulaZF zf_and() {
    FormulaZF lhs = zf_unary();
    while (eat("&")) lhs = zf_binary(ZfKind::And, lhs, zf_unary());
    return lhs;
  }

  FormulaZF zf_unary() {
    std::string w = peek_word();
    if (w == "not") {
      pos_ += 3;
      return zf_not(zf_unary());
    }
    if (w == "forall" || w == "exists") return zf_quantifier();
    if (w == "bot" || w == "top") {
      pos_ += 3;
      return zf_const(w == "top");
    }
    if (eat("(")) {
      FormulaZF f = zf_formula();
      expect(")");
      return f;
    }
    NameTerm lhs = term();
    if (eat_word("in")) return zf_atom(ZfKind::In, lhs, term());
    if (eat_word("notin")) return zf_not(zf_atom(ZfKind::In, lhs, term()));
    if (eat("!=")) return zf_not(zf_atom(ZfKind::Eq, lhs, term()));
    if (eat("<=")) return zf_atom(ZfKind::Sub, lhs, term());
    if (eat(">=")) {
      NameTerm rhs = term();
      return zf_atom(ZfKind::Sub, rhs, lhs);
    }
    if (eat("<")) return zf_atom(ZfKind::Less, lhs, term());
    if (eat("=")) return zf_atom(ZfKind::Eq, lhs, term());
    fail("expected a ground relation");
  }

  // ---- ZF_ε formulas
  FormulaEps eps_formula() {
    std::string w = peek_word();
    if (w == "forall" || w == "exists") return eps_quantifier();
    std::vector<FormulaEps> hyps{eps_iff_level()};
    while (eat(",")) hyps.push_back(eps_iff_level());
    if (eat("->")) {
      FormulaEps concl = eps_formula();
      for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) concl = eps_arrow(*it, concl);
      return concl;
    }
    if (hyps.size() > 1) fail("comma-separated hypotheses need '->'");
    return hyps[0];
  }

  FormulaEps eps_quantifier() {
    bool all = peek_word() == "forall";
    pos_ += 6;
    std::vector<std::string> vars;
    do vars.push_back(ident());
    while (!at(".") && !at(":") && peek_word() != "eps");
    NameTerm gimel_dom, eps_dom;
    if (eat(":")) {
      if (!eat_word("gimel")) fail("expected 'gimel' in restricted quantifier");
      expect("(");
      gimel_dom = term();
      expect(")");
    } else if (eat_word("eps")) {
      eps_dom = term();
    }
    expect(".");
    FormulaEps body = eps_formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      const std::string& v = *it;
      if (gimel_dom) {
        body = all ? eps_forall_in(v, gimel_dom, body)
                   : eps_not(eps_forall_in(v, gimel_dom, eps_not(body)));
      } else if (eps_dom) {
        // (∀v ε a) F ≡ ∀v(¬F → v ε̸ a);  (∃v ε a) F ≡ ¬∀v(F → v ε̸ a)
        FormulaEps rel = eps_rel(EpsKind::EpsNot, nt_var(v), eps_dom);
        body = all ? eps_forall(v, eps_arrow(eps_not(body), rel))
                   : eps_not(eps_forall(v, eps_arrow(body, rel)));
      } else {
        body = all ? eps_forall(v, body) : eps_exists(v, body);
      }
    }
    return body;
  }

  FormulaEps eps_iff_level() {
    FormulaEps lhs = eps_or_level();
    if (eat("<->")) return eps_iff(lhs, eps_or_level());
    return lhs;
  }

  FormulaEps eps_or_level() {
    FormulaEps lhs = eps_and_level();
    while (eat_word("or")) lhs = eps_or(lhs, eps_and_level());
    return lhs;
  }

  FormulaEps eps_and_level() {
    FormulaEps lhs = eps_unary();
    while (eat("&")) lhs = eps_and(lhs, eps_unary());
    return lhs;
  }

  FormulaEps eps_unary() {
    std::string w = peek_word();
    if (w == "not") {
      pos_ += 3;
      return eps_not(eps_unary());
    }
    if (w == "forall" || w == "exists") return eps_quantifier();
    if (w == "bot") {
      pos_ += 3;
      return eps_bot();
    }
    if (w == "top") {
      pos_ += 3;
      return eps_hook(zf_const(false), eps_bot());
    }
    if (w == "D" && followed_by_paren(pos_ + 1)) {
      pos_ += 1;
      expect("(");
      NameTerm a = term();
      expect(")");
      return eps_d(a);
    }
    if (eat("(")) {
      FormulaEps f = eps_formula();
      expect(")");
      return f;
    }
    if (eat("[")) {
      FormulaZF c = zf_formula();
      expect("]");
      if (eat("~>")) return eps_hook(c, eps_formula());
      return eps_not(eps_hook(c, eps_bot()));
    }
    NameTerm lhs = term();
    std::string op = peek_word();
    if (op == "epsnot" || op == "eps" || op == "notin" || op == "subset" || op == "simeq" ||
        op == "subseteq" || op == "cong") {
      pos_ += op.size();
      NameTerm rhs = term();
      if (op == "epsnot") return eps_rel(EpsKind::EpsNot, lhs, rhs);
      if (op == "eps") return eps_member(lhs, rhs);
      if (op == "notin") return eps_rel(EpsKind::NotIn, lhs, rhs);
      if (op == "subset") return eps_rel(EpsKind::Incl, lhs, rhs);
      if (op == "simeq") return eps_rel(EpsKind::Simeq, lhs, rhs);
      if (op == "subseteq") return eps_rel(EpsKind::StrongIncl, lhs, rhs);
      return eps_rel(EpsKind::Cong, lhs, rhs);
    }
    if (eat("!=")) return eps_neq(lhs, term());
    if (eat("=")) return eps_eq(lhs, term());
    if (eat("in")) fail("use 'eps' or a bracketed ground condition for membership");
    fail("expected a relation");
  }

 private:
  std::string_view src_;
  const Constants* constants_;
  std::size_t pos_ = 0;
};

}  // namespace

NameTerm parse_name_term(std::string_view text, const Constants* constants) {
  Parser p(text, constants);
  return p.whole([&] { return p.term(); });
}

FormulaZF parse_zf(std::string_view text, const Constants* constants) {
  Parser p(text, constants);
  return p.whole([&] { return p.zf_formula(); });
}

FormulaEps parse_eps(std::string_view text, const Constants* constants) {
  Parser p(text, constants);
  return p.whole([&] { return p.eps_formula(); });
}

}  // namespace realiz
