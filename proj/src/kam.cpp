#include "realiz/kam.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "realiz/errors.hpp"

namespace realiz {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term finish(TermNode n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 1315423911u;
  switch (n.kind) {
    case TermKind::Var:
      h = mix(h, n.index);
      n.free_bound = n.index + 1;
      break;
    case TermKind::Lam:
      h = mix(h, n.left->hash);
      n.free_bound = n.left->free_bound == 0 ? 0 : n.left->free_bound - 1;
      n.has_cont = n.left->has_cont;
      n.size = 1 + n.left->size;
      break;
    case TermKind::App:
      h = mix(mix(h, n.left->hash), n.right->hash);
      n.free_bound = std::max(n.left->free_bound, n.right->free_bound);
      n.has_cont = n.left->has_cont || n.right->has_cont;
      n.size = 1 + n.left->size + n.right->size;
      break;
    case TermKind::CallCC:
      break;
    case TermKind::Cont:
      h = mix(h, n.stack.hash());
      n.has_cont = true;
      break;
    case TermKind::Instr:
      h = mix(h, std::hash<std::string>{}(n.tag));
      break;
  }
  n.hash = h;
  return std::make_shared<const TermNode>(std::move(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// Stack

Stack::Stack(std::string base) : base_(std::move(base)) {}

Stack::Stack(const std::vector<Term>& entries, std::string base) : base_(std::move(base)) {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) *this = push(*it);
}

Stack Stack::push(Term t) const {
  Stack s;
  s.base_ = base_;
  std::size_t tail_hash = cells_ ? cells_->hash : std::hash<std::string>{}(base_);
  std::size_t depth = cells_ ? cells_->depth + 1 : 1;
  std::size_t h = mix(tail_hash, t->hash);
  s.cells_ = std::make_shared<const StackCell>(StackCell{std::move(t), cells_, depth, h});
  return s;
}

Stack Stack::pop() const {
  Stack s;
  s.base_ = base_;
  s.cells_ = cells_ ? cells_->tail : nullptr;
  return s;
}

const Term& Stack::top() const { return cells_->head; }

std::size_t Stack::depth() const { return cells_ ? cells_->depth : 0; }

std::vector<Term> Stack::entries() const {
  std::vector<Term> out;
  for (auto c = cells_.get(); c != nullptr; c = c->tail.get()) out.push_back(c->head);
  return out;
}

std::size_t Stack::hash() const {
  return cells_ ? cells_->hash : std::hash<std::string>{}(base_);
}

bool operator==(const Stack& a, const Stack& b) {
  if (a.depth() != b.depth() || a.hash() != b.hash() || a.base_ != b.base_) return false;
  const StackCell* x = a.cells_.get();
  const StackCell* y = b.cells_.get();
  while (x != nullptr) {
    if (x == y) return true;
    if (!term_equal(x->head, y->head)) return false;
    x = x->tail.get();
    y = y->tail.get();
  }
  return true;
}

bool operator<(const Stack& a, const Stack& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  const StackCell* x = a.cells_.get();
  const StackCell* y = b.cells_.get();
  while (x != nullptr && x != y) {
    int c = term_compare(x->head, y->head);
    if (c != 0) return c < 0;
    x = x->tail.get();
    y = y->tail.get();
  }
  return a.base_ < b.base_;
}

// ---------------------------------------------------------------------------
// Terms

Term make_var(std::size_t index) {
  TermNode n;
  n.kind = TermKind::Var;
  n.index = index;
  return finish(std::move(n));
}

Term make_lam(Term body) {
  TermNode n;
  n.kind = TermKind::Lam;
  n.left = std::move(body);
  return finish(std::move(n));
}

Term make_app(Term fn, Term arg) {
  TermNode n;
  n.kind = TermKind::App;
  n.left = std::move(fn);
  n.right = std::move(arg);
  return finish(std::move(n));
}

Term make_app(Term fn, std::initializer_list<Term> args) {
  for (const auto& a : args) fn = make_app(fn, a);
  return fn;
}

Term make_callcc() {
  static const Term cc = finish([] { TermNode n; n.kind = TermKind::CallCC; return n; }());
  return cc;
}

Term make_cont(Stack stack) {
  TermNode n;
  n.kind = TermKind::Cont;
  n.stack = std::move(stack);
  return finish(std::move(n));
}

Term make_instr(std::string tag) {
  TermNode n;
  n.kind = TermKind::Instr;
  n.tag = std::move(tag);
  return finish(std::move(n));
}

int term_compare(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TermKind::Var:
      return a->index == b->index ? 0 : (a->index < b->index ? -1 : 1);
    case TermKind::Lam:
      return term_compare(a->left, b->left);
    case TermKind::App: {
      int c = term_compare(a->left, b->left);
      return c != 0 ? c : term_compare(a->right, b->right);
    }
    case TermKind::CallCC:
      return 0;
    case TermKind::Cont:
      if (a->stack == b->stack) return 0;
      return a->stack < b->stack ? -1 : 1;
    case TermKind::Instr:
      return a->tag.compare(b->tag) < 0 ? -1 : (a->tag == b->tag ? 0 : 1);
  }
  return 0;
}

bool term_equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->size != b->size) return false;
  return term_compare(a, b) == 0;
}

bool is_closed(const Term& t) { return t->free_bound == 0; }

bool is_proof_like(const Term& t, const std::set<std::string>& allowed) {
  switch (t->kind) {
    case TermKind::Cont:
      return false;
    case TermKind::Instr:
      return allowed.count(t->tag) > 0;
    case TermKind::Lam:
      return is_proof_like(t->left, allowed);
    case TermKind::App:
      return is_proof_like(t->left, allowed) && is_proof_like(t->right, allowed);
    default:
      return true;
  }
}

Term shift(const Term& t, std::size_t by, std::size_t cutoff) {
  if (by == 0 || t->free_bound <= cutoff) return t;
  switch (t->kind) {
    case TermKind::Var:
      return make_var(t->index + by);
    case TermKind::Lam:
      return make_lam(shift(t->left, by, cutoff + 1));
    case TermKind::App:
      return make_app(shift(t->left, by, cutoff), shift(t->right, by, cutoff));
    default:
      return t;
  }
}

namespace {

Term subst_at(const Term& t, std::size_t k, const Term& u) {
  if (t->free_bound <= k) return t;
  switch (t->kind) {
    case TermKind::Var:
      if (t->index == k) return shift(u, k);
      return make_var(t->index - 1);
    case TermKind::Lam:
      return make_lam(subst_at(t->left, k + 1, u));
    case TermKind::App:
      return make_app(subst_at(t->left, k, u), subst_at(t->right, k, u));
    default:
      return t;
  }
}

}  // namespace

Term substitute(const Term& body, const Term& u) { return subst_at(body, 0, u); }

// ---------------------------------------------------------------------------
// Machine

std::size_t Process::hash() const { return mix(term->hash, stack.hash()); }

bool operator<(const Process& a, const Process& b) {
  int c = term_compare(a.term, b.term);
  if (c != 0) return c < 0;
  return a.stack < b.stack;
}

std::optional<Process> step(const Process& p) {
  const TermNode& t = *p.term;
  switch (t.kind) {
    case TermKind::App:
      return Process{t.left, p.stack.push(t.right)};
    case TermKind::Lam:
      if (p.stack.empty()) return std::nullopt;
      return Process{substitute(t.left, p.stack.top()), p.stack.pop()};
    case TermKind::CallCC:
      if (p.stack.empty()) return std::nullopt;
      return Process{p.stack.top(), p.stack.pop().push(make_cont(p.stack.pop()))};
    case TermKind::Cont:
      if (p.stack.empty()) return std::nullopt;
      return Process{p.stack.top(), t.stack};
    case TermKind::Var:
    case TermKind::Instr:
      return std::nullopt;
  }
  return std::nullopt;
}

RunResult run(const Process& p, std::size_t fuel) {
  RunResult r{{p}, RunStatus::Stuck};
  for (std::size_t i = 0; i < fuel; ++i) {
    auto next = step(r.trace.back());
    if (!next) return r;
    r.trace.push_back(std::move(*next));
  }
  if (step(r.trace.back())) r.status = RunStatus::FuelExhausted;
  return r;
}

std::optional<std::size_t> steps_to_halt(const Process& p, std::size_t fuel) {
  std::unordered_set<Process, ProcessHash> seen;
  Process cur = p;
  for (std::size_t i = 0; i <= fuel; ++i) {
    auto next = step(cur);
    if (!next) return i;
    if (i == fuel) break;
    // a deterministic machine that revisits a state never stops
    if (!seen.insert(cur).second) return std::nullopt;
    cur = std::move(*next);
  }
  return std::nullopt;
}

bool pole_member(const Pole& pole, const Process& p) {
  if (const auto* tp = std::get_if<TerminationPole>(&pole)) {
    return steps_to_halt(p, tp->fuel).has_value();
  }
  const auto& ep = std::get<ExplicitPole>(pole);
  if (ep.base.empty() && ep.stop.empty()) return false;
  std::unordered_set<Process, ProcessHash> base(ep.base.begin(), ep.base.end());
  auto stopped = [&](const Process& q) {
    return q.term->kind == TermKind::Instr && ep.stop.count(q.term->tag) > 0;
  };
  std::unordered_set<Process, ProcessHash> seen;
  Process cur = p;
  for (std::size_t i = 0; i <= ep.fuel; ++i) {
    if (base.count(cur) || stopped(cur)) return true;
    if (!seen.insert(cur).second) return false;
    auto next = step(cur);
    if (!next) return false;
    cur = std::move(*next);
  }
  return false;
}

std::string describe(const Pole& pole) {
  if (const auto* tp = std::get_if<TerminationPole>(&pole)) {
    return "termination(fuel=" + std::to_string(tp->fuel) + ")";
  }
  const auto& ep = std::get<ExplicitPole>(pole);
  std::string out = "explicit(base=" + std::to_string(ep.base.size());
  for (const auto& t : ep.stop) out += ",stop=" + t;
  return out + ",fuel=" + std::to_string(ep.fuel) + ")";
}

// ---------------------------------------------------------------------------
// Pool

const Term* TermPool::find(std::string_view name) const {
  for (const auto& [n, t] : terms) {
    if (n == name) return &t;
  }
  return nullptr;
}

void TermPool::ensure_standard() {
  auto has = [&](const Term& t) {
    return std::any_of(terms.begin(), terms.end(),
                       [&](const auto& e) { return term_equal(e.second, t); });
  };
  if (!has(identity_term())) terms.insert(terms.begin(), {"I", identity_term()});
  if (!has(turing_y())) terms.insert(terms.begin() + 1, {"Y", turing_y()});
}

std::size_t count_stacks(std::size_t pool_size, std::size_t constants, std::size_t d) {
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t k = 0; k <= d; ++k) {
    total += layer;
    if (pool_size == 0) break;
    layer *= pool_size;
  }
  return total * constants;
}

std::vector<Stack> enumerate_stacks(const TermPool& pool) {
  std::size_t n = count_stacks(pool.terms.size(), pool.constants.size(), pool.depth);
  if (n > pool.stack_ceiling) {
    throw ResourceError("stack enumeration needs " + std::to_string(n) +
                        " stacks, ceiling is " + std::to_string(pool.stack_ceiling));
  }
  std::vector<Stack> out;
  out.reserve(n);
  for (const auto& c : pool.constants) out.emplace_back(c);
  std::size_t layer_begin = 0;
  for (std::size_t k = 1; k <= pool.depth && !pool.terms.empty(); ++k) {
    std::size_t layer_end = out.size();
    // entries of depth k: each pool term pushed on each depth k-1 stack,
    // ordered by top entry first so that the listing is lexicographic from the top
    for (const auto& [name, t] : pool.terms) {
      for (std::size_t i = layer_begin; i < layer_end; ++i) out.push_back(out[i].push(t));
    }
    layer_begin = layer_end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard terms

Term identity_term() {
  static const Term t = make_lam(make_var(0));
  return t;
}

Term turing_a() {
  // \x\f (f)(x)x f ; inside: f = 0, x = 1
  static const Term t =
      make_lam(make_lam(make_app(make_var(0), make_app(make_app(make_var(1), make_var(1)),
                                                         make_var(0)))));
  return t;
}

Term turing_y() {
  static const Term t = make_app(turing_a(), turing_a());
  return t;
}

Term omega_term() {
  static const Term d = make_lam(make_app(make_var(0), make_var(0)));
  static const Term t = make_app(d, d);
  return t;
}

Term apply_to_i() {
  static const Term t = make_lam(make_app(make_var(0), identity_term()));
  return t;
}

// ---------------------------------------------------------------------------
// Mutants

namespace {

// Rebuilds `t` with the subterm at preorder position `target` replaced via `edit`.
void collect_edits(const Term& t, std::size_t depth,
                   const std::function<void(const Term&, std::size_t,
                                            const std::function<Term(Term)>&)>& visit,
                   const std::function<Term(Term)>& rebuild) {
  visit(t, depth, rebuild);
  switch (t->kind) {
    case TermKind::Lam:
      collect_edits(t->left, depth + 1, visit,
                    [&rebuild](Term b) { return rebuild(make_lam(std::move(b))); });
      break;
    case TermKind::App: {
      Term right = t->right;
      Term left = t->left;
      collect_edits(t->left, depth, visit,
                    [&rebuild, right](Term f) { return rebuild(make_app(std::move(f), right)); });
      collect_edits(t->right, depth, visit,
                    [&rebuild, left](Term a) { return rebuild(make_app(left, std::move(a))); });
      break;
    }
    default:
      break;
  }
}

}  // namespace

std::vector<Term> single_edit_mutants(const Term& t) {
  std::vector<Term> out;
  auto add = [&](const Term& m) {
    if (!is_closed(m) || term_equal(m, t)) return;
    for (const auto& e : out) {
      if (term_equal(e, m)) return;
    }
    out.push_back(m);
  };
  collect_edits(
      t, 0,
      [&](const Term& sub, std::size_t depth, const std::function<Term(Term)>& rebuild) {
        // swap in another bound variable
        for (std::size_t i = 0; i < depth; ++i) {
          if (!(sub->kind == TermKind::Var && sub->index == i)) add(rebuild(make_var(i)));
        }
        if (sub->kind == TermKind::App) {
          add(rebuild(sub->left));
          add(rebuild(sub->right));
          add(rebuild(make_app(sub->right, sub->left)));
        }
        if (sub->kind == TermKind::Lam) {
          add(rebuild(make_lam(make_lam(shift(sub->left, 1, 0)))));
        }
        if (sub->kind != TermKind::CallCC) add(rebuild(make_callcc()));
        add(rebuild(make_app(sub, sub)));
      },
      [](Term x) { return x; });
  return out;
}

bool head_equivalent(const Term& a, const Term& b, std::size_t max_args, std::size_t fuel) {
  auto starved = [](const std::vector<Process>& trace) {
    const Process& last = trace.back();
    return !step(last) && last.stack.empty() && last.term->kind != TermKind::Instr;
  };
  std::vector<Term> args;
  for (std::size_t n = 0; n <= max_args; ++n) {
    Stack stack(args, "pi0");
    auto tb = run(Process{b, stack}, fuel).trace;
    auto ta = run(Process{a, stack}, fuel).trace;
    std::unordered_set<Process, ProcessHash> states(tb.begin(), tb.end());
    bool meet = std::any_of(ta.begin(), ta.end(),
                            [&](const Process& p) { return states.count(p) > 0; });
    if (!meet && !(starved(ta) && starved(tb))) return false;
    args.push_back(make_instr("?" + std::to_string(n)));
  }
  return true;
}

}  // namespace realiz
