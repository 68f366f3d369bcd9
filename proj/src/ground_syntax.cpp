// Ground literals:
//   value := '{' [value (',' value)*] '}' | digits | 'pair(' value ',' value ')'
//          | 'timespi(' value ')' | 'subsetspi(' value ')' | 'atom[' stack ']'
// Digits are von Neumann numerals.

#include <cctype>

#include "realiz/errors.hpp"
#include "realiz/ground.hpp"

namespace realiz {

namespace {

class GroundParser {
 public:
  GroundParser(std::string_view src, const NamedTerms* terms) : src_(src), terms_(terms) {}

  GroundSet whole() {
    GroundSet g = value();
    skip();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  std::string_view src_;
  const NamedTerms* terms_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool keyword(std::string_view kw) {
    skip();
    if (src_.substr(pos_, kw.size()) != kw) return false;
    pos_ += kw.size();
    return true;
  }

  GroundSet value() {
    skip();
    if (pos_ >= src_.size()) fail("expected a ground value");
    char c = src_[pos_];
    if (c == '{') {
      ++pos_;
      std::vector<GroundSet> es;
      if (!eat('}')) {
        do es.push_back(value());
        while (eat(','));
        expect('}');
      }
      return GroundSet::set(std::move(es));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::size_t n = std::stoul(std::string(src_.substr(b, pos_ - b)));
      if (n > 64) fail("numeral too large");
      return nat(n);
    }
    if (keyword("pair(")) {
      GroundSet a = value();
      expect(',');
      GroundSet b = value();
      expect(')');
      return kuratowski_pair(a, b);
    }
    if (keyword("timespi(")) {
      GroundSet a = value();
      expect(')');
      return GroundSet::times_pi(a);
    }
    if (keyword("subsetspi(")) {
      GroundSet a = value();
      expect(')');
      return GroundSet::subsets_times_pi(a);
    }
    if (keyword("atom[")) {
      std::size_t b = pos_;
      int nest = 1;
      while (pos_ < src_.size() && nest > 0) {
        if (src_[pos_] == '[') ++nest;
        if (src_[pos_] == ']') --nest;
        ++pos_;
      }
      if (nest != 0) fail("unterminated atom");
      try {
        return GroundSet::atom(parse_stack(src_.substr(b, pos_ - 1 - b), terms_));
      } catch (const ParseError& e) {
        throw ParseError(std::string("in atom: ") + e.what(), b + e.position());
      }
    }
    fail("expected a ground value");
  }
};

void print_into(std::string& out, GroundSet g);

void print_pattern_into(std::string& out, const StackPattern& p) { out += p->key; }

void print_into(std::string& out, GroundSet g) {
  switch (g.kind()) {
    case GKind::Atom:
      out += "atom[" + print_stack(g.stack()) + "]";
      return;
    case GKind::TimesPi:
      out += "timespi(";
      print_into(out, g.base());
      out += ')';
      return;
    case GKind::SubsetsTimesPi:
      out += "subsetspi(";
      print_into(out, g.base());
      out += ')';
      return;
    case GKind::Guarded: {
      out += "guarded(";
      bool first = true;
      for (const auto& e : guarded_entries(g)) {
        if (!first) out += ", ";
        first = false;
        print_into(out, e.name);
        out += " : ";
        print_pattern_into(out, e.pattern);
      }
      out += ')';
      return;
    }
    case GKind::Compr:
      out += "compr(";
      print_into(out, g.base());
      out += "; " + lazy_compr_var(g) + ". " + lazy_compr_closure(g).key + ")";
      return;
    case GKind::Set:
      break;
  }
  // numerals print as digits
  const auto& es = g.elements();
  bool numeral = true;
  for (std::size_t i = 0; i < es.size() && numeral; ++i) numeral = es[i] == nat(i);
  if (numeral && es.size() <= 16) {
    out += std::to_string(es.size());
    return;
  }
  if (auto p = unpair(g); p && p->second.is_atom()) {
    out += "pair(";
    print_into(out, p->first);
    out += ',';
    print_into(out, p->second);
    out += ')';
    return;
  }
  out += '{';
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0) out += ',';
    print_into(out, es[i]);
  }
  out += '}';
}

}  // namespace

GroundSet parse_ground(std::string_view text, const NamedTerms* terms) {
  return GroundParser(text, terms).whole();
}

std::string print_ground(GroundSet g) {
  std::string out;
  print_into(out, g);
  return out;
}

}  // namespace realiz
