// Surface syntax for terms, stacks and processes.
//
//   term   := '\' ident '.' term | head arg*
//   head   := '(' term ')' | atom
//   arg    := atom | '(' term ')' arg* | '\' ident '.' term
//   atom   := ident | 'cc' | 'k[' stack ']' | '#' tag | '<' name '>'
//   stack  := (term '.')* constant
//
// An argument that opens with '(' or '\' extends as far right as possible, so
// (f)(x)x f reads as f applied to ((x)x)f.

#include <cctype>

#include "realiz/errors.hpp"
#include "realiz/kam.hpp"

namespace realiz {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class TermParser {
 public:
  TermParser(std::string_view src, const NamedTerms* named) : src_(src), named_(named) {}

  Term parse_whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  Stack parse_whole_stack() {
    Stack s = stack();
    expect_end();
    return s;
  }

  Process parse_whole_process() {
    Term t = term();
    skip();
    if (!eat('*')) fail("expected '*' between term and stack");
    Stack s = stack();
    expect_end();
    return Process{t, s};
  }

 private:
  std::string_view src_;
  const NamedTerms* named_;
  std::size_t pos_ = 0;
  std::vector<std::string> binders_;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_end() {
    if (peek() != '\0') fail("unexpected trailing input");
  }

  std::string ident() {
    skip();
    if (pos_ >= src_.size() || !ident_start(src_[pos_])) fail("expected identifier");
    std::size_t b = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(b, pos_ - b));
  }

  bool at_atom() {
    char c = peek();
    return ident_start(c) || c == '#' || c == '<';
  }

  Term term() {
    if (peek() == '\\') return lambda();
    Term head;
    if (eat('(')) {
      head = term();
      if (!eat(')')) fail("expected ')'");
    } else if (at_atom()) {
      head = atom();
    } else {
      fail("expected a term");
    }
    return args(head);
  }

  Term args(Term head) {
    for (;;) {
      char c = peek();
      if (c == '(' || c == '\\') return make_app(head, term());
      if (!at_atom()) return head;
      head = make_app(head, atom());
    }
  }

  Term lambda() {
    eat('\\');
    std::string name = ident();
    if (!eat('.')) fail("expected '.' after binder");
    binders_.push_back(name);
    Term body = term();
    binders_.pop_back();
    return make_lam(body);
  }

  Term atom() {
    char c = peek();
    if (c == '#') {
      ++pos_;
      std::size_t b = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      if (b == pos_) fail("empty instruction tag");
      return make_instr(std::string(src_.substr(b, pos_ - b)));
    }
    if (c == '<') {
      ++pos_;
      std::size_t b = pos_;
      while (pos_ < src_.size() && src_[pos_] != '>') ++pos_;
      if (pos_ >= src_.size()) fail("unterminated <name>");
      std::string name(src_.substr(b, pos_ - b));
      ++pos_;
      if (named_ != nullptr) {
        auto it = named_->find(name);
        if (it != named_->end()) return shift(it->second, binders_.size());
      }
      fail("unknown term <" + name + ">");
    }
    std::size_t start = pos_;
    std::string name = ident();
    if (name == "cc") return make_callcc();
    if (name == "k" && peek() == '[') {
      ++pos_;
      Stack s = stack();
      if (!eat(']')) fail("expected ']'");
      return make_cont(s);
    }
    for (std::size_t i = binders_.size(); i-- > 0;) {
      if (binders_[i] == name) return make_var(binders_.size() - 1 - i);
    }
    if (name.size() > 1 && name[0] == '_' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      return make_var(std::stoul(name.substr(1)) + binders_.size());
    }
    pos_ = start;
    fail("unbound variable '" + name + "'");
  }

  bool at_base() {
    skip();
    if (pos_ >= src_.size() || !ident_start(src_[pos_])) return false;
    std::size_t p = pos_;
    while (p < src_.size() && ident_char(src_[p])) ++p;
    std::string_view word = src_.substr(pos_, p - pos_);
    if (word == "cc" || word == "k") return false;
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    return p >= src_.size() || src_[p] == ']' || src_[p] == ')';
  }

  Stack stack() {
    std::vector<Term> entries;
    while (!at_base()) {
      entries.push_back(term());
      if (!eat('.')) fail("expected '.' in stack");
    }
    return Stack(entries, ident());
  }
};

void print_term_into(std::string& out, const Term& t, std::size_t depth);

void print_stack_into(std::string& out, const Stack& s) {
  for (const auto& e : s.entries()) {
    print_term_into(out, e, 0);
    out += '.';
  }
  out += s.base();
}

void print_term_into(std::string& out, const Term& t, std::size_t depth) {
  switch (t->kind) {
    case TermKind::Var:
      if (t->index < depth) {
        out += 'x';
        out += std::to_string(depth - 1 - t->index);
      } else {
        out += '_';
        out += std::to_string(t->index - depth);
      }
      break;
    case TermKind::Lam:
      out += "\\x" + std::to_string(depth) + '.';
      print_term_into(out, t->left, depth + 1);
      break;
    case TermKind::App:
      out += '(';
      print_term_into(out, t->left, depth);
      out += ')';
      print_term_into(out, t->right, depth);
      break;
    case TermKind::CallCC:
      out += "cc";
      break;
    case TermKind::Cont:
      out += "k[";
      print_stack_into(out, t->stack);
      out += ']';
      break;
    case TermKind::Instr:
      out += '#';
      out += t->tag;
      break;
  }
}

}  // namespace

Term parse_term(std::string_view text, const NamedTerms* named) {
  return TermParser(text, named).parse_whole_term();
}

Stack parse_stack(std::string_view text, const NamedTerms* named) {
  return TermParser(text, named).parse_whole_stack();
}

Process parse_process(std::string_view text, const NamedTerms* named) {
  return TermParser(text, named).parse_whole_process();
}

std::string print_term(const Term& t) {
  std::string out;
  print_term_into(out, t, 0);
  return out;
}

std::string print_stack(const Stack& s) {
  std::string out;
  print_stack_into(out, s);
  return out;
}

std::string print_process(const Process& p) { return print_term(p.term) + " * " + print_stack(p.stack); }

}  // namespace realiz
