#pragma once

// Terms, stacks and processes of the lambda-c calculus, and the Krivine
// abstract machine that executes them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace realiz {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct StackCell;

/// A stack: a finite sequence of terms (top first) sitting on a stack constant.
class Stack {
 public:
  Stack() = default;
  explicit Stack(std::string base);
  Stack(const std::vector<Term>& entries, std::string base);

  Stack push(Term t) const;
  Stack pop() const;
  const Term& top() const;

  bool empty() const { return cells_ == nullptr; }
  std::size_t depth() const;
  const std::string& base() const { return base_; }
  std::vector<Term> entries() const;
  std::size_t hash() const;

  friend bool operator==(const Stack& a, const Stack& b);
  friend bool operator!=(const Stack& a, const Stack& b) { return !(a == b); }
  friend bool operator<(const Stack& a, const Stack& b);

 private:
  std::shared_ptr<const StackCell> cells_;
  std::string base_;
};

enum class TermKind : std::uint8_t { Var, Lam, App, CallCC, Cont, Instr };

struct TermNode {
  TermKind kind = TermKind::Var;
  std::size_t index = 0;   // Var: de Bruijn index
  Term left;               // Lam: body, App: function
  Term right;              // App: argument
  Stack stack;             // Cont
  std::string tag;         // Instr
  std::size_t hash = 0;
  std::size_t free_bound = 0;  // number of enclosing binders needed to close the term
  bool has_cont = false;
  std::size_t size = 1;
};

struct StackCell {
  Term head;
  std::shared_ptr<const StackCell> tail;
  std::size_t depth;
  std::size_t hash;
};

Term make_var(std::size_t index);
Term make_lam(Term body);
Term make_app(Term fn, Term arg);
Term make_app(Term fn, std::initializer_list<Term> args);
Term make_callcc();
Term make_cont(Stack stack);
Term make_instr(std::string tag);

bool term_equal(const Term& a, const Term& b);
int term_compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_compare(a, b) < 0; }
};

bool is_closed(const Term& t);

/// No Continuation node, and every instruction tag belongs to `allowed`.
bool is_proof_like(const Term& t, const std::set<std::string>& allowed = {});

/// body[u/0]: replaces de Bruijn index 0 of `body` by `u`, lowering the others.
Term substitute(const Term& body, const Term& u);

/// Adds `by` to every free index of `t` that is >= `cutoff`.
Term shift(const Term& t, std::size_t by, std::size_t cutoff = 0);

struct Process {
  Term term;
  Stack stack;

  std::size_t hash() const;
  friend bool operator==(const Process& a, const Process& b) {
    return term_equal(a.term, b.term) && a.stack == b.stack;
  }
  friend bool operator<(const Process& a, const Process& b);
};

struct ProcessHash {
  std::size_t operator()(const Process& p) const { return p.hash(); }
};

/// One machine step (push, grab, save, restore). Empty when the process is stuck.
std::optional<Process> step(const Process& p);

enum class RunStatus { Stuck, FuelExhausted };

struct RunResult {
  std::vector<Process> trace;
  RunStatus status;
};

RunResult run(const Process& p, std::size_t fuel);

/// Number of steps until the machine stops, or empty if it does not within fuel.
/// A repeated state proves divergence and ends the run early.
std::optional<std::size_t> steps_to_halt(const Process& p, std::size_t fuel);

// ---------------------------------------------------------------------------
// Poles

struct TerminationPole {
  std::size_t fuel = 10000;
};

/// Anti-reduction closure of a finite set of processes. Tags in `stop` add
/// every process headed by that instruction to the base.
struct ExplicitPole {
  std::vector<Process> base;
  std::size_t fuel = 10000;
  std::set<std::string> stop;
};

using Pole = std::variant<TerminationPole, ExplicitPole>;

bool pole_member(const Pole& pole, const Process& p);
std::string describe(const Pole& pole);

// ---------------------------------------------------------------------------
// Term pool: the finite stand-in for Lambda and Pi.

struct TermPool {
  std::vector<std::pair<std::string, Term>> terms;
  std::vector<std::string> constants{"pi0"};
  std::size_t depth = 2;
  std::size_t fuel = 10000;
  std::size_t stack_ceiling = 200000;

  const Term* find(std::string_view name) const;
  /// Adds I and Y when missing.
  void ensure_standard();
};

/// Every stack of depth <= d built from pool terms over pool constants.
/// Ordered by depth, then by pool index of the entries, then by constant.
std::vector<Stack> enumerate_stacks(const TermPool& pool);

std::size_t count_stacks(std::size_t pool_size, std::size_t constants, std::size_t d);

// ---------------------------------------------------------------------------
// Standard terms

Term identity_term();    // I = \x.x
Term turing_y();         // Y = (A)A, A = \x\f(f)(x)x f
Term turing_a();
Term omega_term();       // (\x(x)x)\x(x)x
Term apply_to_i();       // \x(x)I

// ---------------------------------------------------------------------------
// Surface syntax

using NamedTerms = std::map<std::string, Term, std::less<>>;

Term parse_term(std::string_view text, const NamedTerms* named = nullptr);
Stack parse_stack(std::string_view text, const NamedTerms* named = nullptr);
Process parse_process(std::string_view text, const NamedTerms* named = nullptr);

std::string print_term(const Term& t);
std::string print_stack(const Stack& s);
std::string print_process(const Process& p);

/// Single-node edits of a term, in a fixed order, without duplicates or the original.
std::vector<Term> single_edit_mutants(const Term& t);

/// Sound test that `a` and `b` are interchangeable on stacks of at most
/// `max_args` entries: with the entries replaced by opaque instructions over
/// π0, the two runs meet in a common state within fuel, or both run out of
/// arguments at a non-instruction head. The second case assumes a pole that
/// contains all or none of those argument-starved processes, as the
/// termination pole and stop-instruction poles do.
bool head_equivalent(const Term& a, const Term& b, std::size_t max_args = 8,
                     std::size_t fuel = 1000);

}  // namespace realiz
