#include "realiz/ground.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "realiz/errors.hpp"

namespace realiz {

struct GNode {
  GKind kind = GKind::Set;
  std::size_t id = 0;
  std::size_t rank = 0;
  std::vector<GroundSet> elems;
  Stack stack;
  const GNode* base = nullptr;
  std::vector<Entry> entries;
  std::string var;
  FormulaClosure closure;

  // (name, stack) for every element of a Set that is a pair with an atom on the right
  mutable std::once_flag index_once;
  mutable std::vector<std::pair<GroundSet, Stack>> entry_index;
};

namespace {

struct StackHash {
  std::size_t operator()(const Stack& s) const { return s.hash(); }
};

}  // namespace

struct GroundFactory {
  std::mutex mu;
  std::vector<std::unique_ptr<GNode>> nodes;
  std::unordered_map<std::string, const GNode*> by_key;
  std::unordered_map<Stack, const GNode*, StackHash> atoms;

  static GroundFactory& get() {
    static GroundFactory f;
    return f;
  }

  static GroundSet wrap(const GNode* n) { return GroundSet(n); }

  // Caller holds no lock; elements are already interned.
  const GNode* intern(std::string key, std::unique_ptr<GNode> n) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = by_key.find(key);
    if (it != by_key.end()) return it->second;
    n->id = nodes.size();
    const GNode* p = n.get();
    nodes.push_back(std::move(n));
    by_key.emplace(std::move(key), p);
    return p;
  }

  const GNode* intern_atom(const Stack& s) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = atoms.find(s);
    if (it != atoms.end()) return it->second;
    auto n = std::make_unique<GNode>();
    n->kind = GKind::Atom;
    n->stack = s;
    n->id = nodes.size();
    const GNode* p = n.get();
    nodes.push_back(std::move(n));
    atoms.emplace(s, p);
    return p;
  }

  static const GNode* empty_node() {
    static const GNode* e = [] {
      auto n = std::make_unique<GNode>();
      return get().intern("S", std::move(n));
    }();
    return e;
  }
};

GroundSet::GroundSet() : node_(GroundFactory::empty_node()) {}

GKind GroundSet::kind() const { return node_->kind; }
bool GroundSet::is_symbolic() const {
  return kind() == GKind::TimesPi || kind() == GKind::Guarded || kind() == GKind::Compr;
}
const std::vector<GroundSet>& GroundSet::elements() const { return node_->elems; }
const Stack& GroundSet::stack() const { return node_->stack; }
GroundSet GroundSet::base() const {
  if (node_->base == nullptr) throw PreconditionError("value has no base");
  return GroundFactory::wrap(node_->base);
}
std::size_t GroundSet::id() const { return node_->id; }
std::size_t GroundSet::rank() const { return node_->rank; }
std::size_t GroundSet::size() const { return node_->elems.size(); }

bool GroundSet::contains(GroundSet x) const {
  const auto& es = node_->elems;
  auto it = std::lower_bound(es.begin(), es.end(), x);
  return it != es.end() && *it == x;
}

int ground_compare(GroundSet a, GroundSet b) {
  if (a == b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case GKind::Set: {
      if (a.rank() != b.rank()) return a.rank() < b.rank() ? -1 : 1;
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      const auto& x = a.elements();
      const auto& y = b.elements();
      for (std::size_t i = 0; i < x.size(); ++i) {
        int c = ground_compare(x[i], y[i]);
        if (c != 0) return c;
      }
      return 0;
    }
    case GKind::Atom:
      if (a.stack() < b.stack()) return -1;
      return b.stack() < a.stack() ? 1 : 0;
    case GKind::TimesPi:
    case GKind::SubsetsTimesPi:
      return ground_compare(a.base(), b.base());
    case GKind::Guarded: {
      const auto& x = guarded_entries(a);
      const auto& y = guarded_entries(b);
      for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        int c = ground_compare(x[i].name, y[i].name);
        if (c != 0) return c;
        c = x[i].pattern->key.compare(y[i].pattern->key);
        if (c != 0) return c < 0 ? -1 : 1;
      }
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      return 0;
    }
    case GKind::Compr: {
      int c = ground_compare(a.base(), b.base());
      if (c != 0) return c;
      c = lazy_compr_var(a).compare(lazy_compr_var(b));
      if (c != 0) return c < 0 ? -1 : 1;
      c = lazy_compr_closure(a).key.compare(lazy_compr_closure(b).key);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
  }
  return 0;
}

bool operator<(GroundSet a, GroundSet b) { return ground_compare(a, b) < 0; }

GroundSet GroundSet::set(std::vector<GroundSet> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::string key = "S";
  std::size_t rank = 0;
  for (GroundSet e : elements) {
    key += std::to_string(e.id());
    key += ',';
    rank = std::max(rank, e.rank() + 1);
  }
  auto n = std::make_unique<GNode>();
  n->kind = GKind::Set;
  n->rank = rank;
  n->elems = std::move(elements);
  return GroundSet(GroundFactory::get().intern(std::move(key), std::move(n)));
}

GroundSet GroundSet::atom(const Stack& s) { return GroundSet(GroundFactory::get().intern_atom(s)); }

namespace {

GroundSet make_unary(GKind kind, char tag, GroundSet base) {
  auto n = std::make_unique<GNode>();
  n->kind = kind;
  n->base = base.node();
  n->rank = base.rank() + 3;
  return GroundFactory::wrap(
      GroundFactory::get().intern(std::string(1, tag) + std::to_string(base.id()), std::move(n)));
}

}  // namespace

GroundSet GroundSet::times_pi(GroundSet base) { return make_unary(GKind::TimesPi, 'T', base); }
GroundSet GroundSet::subsets_times_pi(GroundSet base) {
  return make_unary(GKind::SubsetsTimesPi, 'Q', base);
}

// ---------------------------------------------------------------------------
// Patterns

StackPattern pattern_all() {
  static const StackPattern all = [] {
    auto p = std::make_shared<PatternNode>();
    p->kind = PatternKind::All;
    p->key = "all";
    return p;
  }();
  return all;
}

StackPattern pattern_only(std::vector<Stack> stacks) {
  std::sort(stacks.begin(), stacks.end());
  stacks.erase(std::unique(stacks.begin(), stacks.end()), stacks.end());
  auto p = std::make_shared<PatternNode>();
  p->kind = PatternKind::Only;
  p->key = "only[";
  for (std::size_t i = 0; i < stacks.size(); ++i) {
    if (i > 0) p->key += ';';
    p->key += print_stack(stacks[i]);
  }
  p->key += ']';
  p->only = std::move(stacks);
  return p;
}

StackPattern pattern_push_realizer(FormulaClosure closure, StackPattern rest) {
  auto p = std::make_shared<PatternNode>();
  p->kind = PatternKind::PushRealizer;
  p->key = "realizer(" + closure.key + ")." + rest->key;
  p->closure = std::move(closure);
  p->rest = std::move(rest);
  return p;
}

StackPattern pattern_push_marker(std::string tag, StackPattern rest) {
  auto p = std::make_shared<PatternNode>();
  p->kind = PatternKind::PushMarker;
  p->key = "#" + tag + "." + rest->key;
  p->tag = std::move(tag);
  p->rest = std::move(rest);
  return p;
}

GroundSet make_guarded(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    int c = ground_compare(a.name, b.name);
    return c != 0 ? c < 0 : a.pattern->key < b.pattern->key;
  });
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const Entry& a, const Entry& b) {
                              return a.name == b.name && a.pattern->key == b.pattern->key;
                            }),
                entries.end());
  std::string key = "G";
  std::size_t rank = 0;
  for (const auto& e : entries) {
    key += std::to_string(e.name.id()) + ":" + e.pattern->key + ",";
    rank = std::max(rank, e.name.rank() + 3);
  }
  auto n = std::make_unique<GNode>();
  n->kind = GKind::Guarded;
  n->rank = rank;
  n->entries = std::move(entries);
  return GroundFactory::wrap(GroundFactory::get().intern(std::move(key), std::move(n)));
}

const std::vector<Entry>& guarded_entries(GroundSet g) { return g.node()->entries; }

GroundSet make_lazy_compr(GroundSet base, std::string var, FormulaClosure closure) {
  std::string key = "C" + std::to_string(base.id()) + ":" + var + ":" + closure.key;
  auto n = std::make_unique<GNode>();
  n->kind = GKind::Compr;
  n->base = base.node();
  n->rank = base.rank();
  n->var = std::move(var);
  n->closure = std::move(closure);
  return GroundFactory::wrap(GroundFactory::get().intern(std::move(key), std::move(n)));
}

const FormulaClosure& lazy_compr_closure(GroundSet g) { return g.node()->closure; }
const std::string& lazy_compr_var(GroundSet g) { return g.node()->var; }

bool GroundContext::in_pi_d(const Stack& s) const {
  const auto& all = pi_d();
  return std::find(all.begin(), all.end(), s) != all.end();
}

std::vector<Term> PlainGroundContext::realizers_of(const FormulaClosure& c) {
  throw PreconditionError("realizer-guarded pattern needs an evaluation session: " + c.key);
}

FormulaClosure bind_closure(const FormulaClosure& c, const std::string& var, GroundSet value) {
  FormulaClosure out = c;
  out.env.emplace_back(var, value);
  out.key += ";" + var + "=" + print_ground(value);
  return out;
}

std::vector<Stack> pattern_stacks(const StackPattern& p, GroundContext& ctx) {
  std::vector<Stack> out;
  switch (p->kind) {
    case PatternKind::All:
      out = ctx.pi_d();
      break;
    case PatternKind::Only:
      return p->only;
    case PatternKind::PushRealizer: {
      auto rest = pattern_stacks(p->rest, ctx);
      auto xs = ctx.realizers_of(p->closure);
      for (const auto& xi : xs)
        for (const auto& s : rest)
          if (s.depth() < ctx.depth_bound()) out.push_back(s.push(xi));
      break;
    }
    case PatternKind::PushMarker: {
      auto rest = pattern_stacks(p->rest, ctx);
      Term m = make_instr(p->tag);
      for (const auto& s : rest)
        if (s.depth() < ctx.depth_bound()) out.push_back(s.push(m));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool pattern_contains(const StackPattern& p, const Stack& s, GroundContext& ctx) {
  switch (p->kind) {
    case PatternKind::All:
      return ctx.in_pi_d(s);
    case PatternKind::Only:
      return std::binary_search(p->only.begin(), p->only.end(), s);
    case PatternKind::PushRealizer: {
      if (s.empty() || s.depth() > ctx.depth_bound()) return false;
      if (!pattern_contains(p->rest, s.pop(), ctx)) return false;
      for (const auto& xi : ctx.realizers_of(p->closure))
        if (term_equal(xi, s.top())) return true;
      return false;
    }
    case PatternKind::PushMarker:
      return !s.empty() && s.depth() <= ctx.depth_bound() && s.top()->kind == TermKind::Instr &&
             s.top()->tag == p->tag && pattern_contains(p->rest, s.pop(), ctx);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Basic operations

GroundSet singleton(GroundSet a) { return GroundSet::set({a}); }

GroundSet kuratowski_pair(GroundSet a, GroundSet b) {
  return GroundSet::set({singleton(a), GroundSet::set({a, b})});
}

std::optional<std::pair<GroundSet, GroundSet>> unpair(GroundSet x) {
  if (!x.is_set()) return std::nullopt;
  const auto& es = x.elements();
  if (es.size() == 1) {
    const auto& inner = es[0];
    if (inner.is_set() && inner.size() == 1) return std::make_pair(inner.elements()[0], inner.elements()[0]);
    return std::nullopt;
  }
  if (es.size() != 2) return std::nullopt;
  // one element is {a}, the other {a, b}
  for (int i = 0; i < 2; ++i) {
    GroundSet s = es[i], t = es[1 - i];
    if (!s.is_set() || !t.is_set() || s.size() != 1 || t.size() != 2) continue;
    GroundSet a = s.elements()[0];
    if (!t.contains(a)) continue;
    GroundSet b = t.elements()[0] == a ? t.elements()[1] : t.elements()[0];
    return std::make_pair(a, b);
  }
  return std::nullopt;
}

GroundSet set_union(GroundSet a, GroundSet b) {
  if (!a.is_set() || !b.is_set()) throw PreconditionError("union of non-sets");
  std::vector<GroundSet> es = a.elements();
  es.insert(es.end(), b.elements().begin(), b.elements().end());
  return GroundSet::set(std::move(es));
}

bool subset_of(GroundSet a, GroundSet b) {
  if (!a.is_set() || !b.is_set()) throw PreconditionError("inclusion of non-sets");
  for (GroundSet e : a.elements())
    if (!b.contains(e)) return false;
  return true;
}

GroundSet boolean(bool b) { return b ? singleton(GroundSet()) : GroundSet(); }

bool is_boolean(GroundSet g) { return g == boolean(false) || g == boolean(true); }

GroundSet nat(std::size_t n) {
  std::vector<GroundSet> es;
  for (std::size_t i = 0; i < n; ++i) es.push_back(GroundSet::set(es));
  return GroundSet::set(std::move(es));
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

std::vector<GroundSet> expand_subsets(GroundSet x, GroundContext& ctx) {
  GroundSet b = expand(x.base(), ctx);
  std::vector<GroundSet> cells;
  for (GroundSet u : b.elements())
    for (const auto& s : ctx.pi_d()) cells.push_back(kuratowski_pair(u, GroundSet::atom(s)));
  if (cells.size() >= 63 || (std::size_t{1} << cells.size()) > ctx.subset_ceiling())
    throw ResourceError("subset expansion of " + std::to_string(cells.size()) +
                        " cells exceeds the ceiling");
  std::vector<GroundSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
    std::vector<GroundSet> sub;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(cells[i]);
    GroundSet s = GroundSet::set(std::move(sub));
    for (const auto& st : ctx.pi_d()) out.push_back(kuratowski_pair(s, GroundSet::atom(st)));
  }
  return out;
}

}  // namespace

GroundSet expand(GroundSet x, GroundContext& ctx) {
  switch (x.kind()) {
    case GKind::Set:
    case GKind::Atom:
      return x;
    case GKind::TimesPi: {
      GroundSet b = expand(x.base(), ctx);
      std::vector<GroundSet> out;
      for (GroundSet u : b.elements()) {
        GroundSet nu = normalize(u, ctx);
        for (const auto& s : ctx.pi_d()) out.push_back(kuratowski_pair(nu, GroundSet::atom(s)));
      }
      return GroundSet::set(std::move(out));
    }
    case GKind::SubsetsTimesPi:
      return GroundSet::set(expand_subsets(x, ctx));
    case GKind::Guarded: {
      std::vector<GroundSet> out;
      for (const auto& e : guarded_entries(x)) {
        GroundSet n = normalize(e.name, ctx);
        for (const auto& s : pattern_stacks(e.pattern, ctx))
          out.push_back(kuratowski_pair(n, GroundSet::atom(s)));
      }
      return GroundSet::set(std::move(out));
    }
    case GKind::Compr: {
      auto names = entry_names(x.base(), ctx);
      if (!names) throw ResourceError("comprehension over a non-enumerable base");
      std::vector<GroundSet> out;
      for (GroundSet n : *names)
        for (const auto& s : entry_stacks(n, x, ctx))
          out.push_back(kuratowski_pair(n, GroundSet::atom(s)));
      return GroundSet::set(std::move(out));
    }
  }
  return x;
}

GroundSet normalize(GroundSet x, GroundContext& ctx) {
  if (x.kind() == GKind::SubsetsTimesPi || x.kind() == GKind::Atom || x.kind() == GKind::Set)
    return x;
  if (x.kind() == GKind::Compr && !entry_names(x.base(), ctx)) return x;
  return expand(x, ctx);
}

std::vector<GroundSet> ground_elements(GroundSet x, GroundContext& ctx) {
  if (x.is_atom()) return {};
  return expand(x, ctx).elements();
}

bool ground_member(GroundSet y, GroundSet x, GroundContext& ctx) {
  switch (x.kind()) {
    case GKind::Set:
      return x.contains(normalize(y, ctx));
    case GKind::Atom:
      return false;
    default:
      break;
  }
  auto p = unpair(normalize(y, ctx));
  if (!p || !p->second.is_atom()) return false;
  auto st = entry_stacks(p->first, x, ctx);
  return std::binary_search(st.begin(), st.end(), p->second.stack());
}

namespace {

const std::vector<std::pair<GroundSet, Stack>>& set_entry_index(GroundSet a) {
  const GNode* n = a.node();
  std::call_once(n->index_once, [n] {
    for (GroundSet e : n->elems) {
      auto p = unpair(e);
      if (p && p->second.is_atom()) n->entry_index.emplace_back(p->first, p->second.stack());
    }
    std::sort(n->entry_index.begin(), n->entry_index.end(), [](const auto& l, const auto& r) {
      return l.first.id() != r.first.id() ? l.first.id() < r.first.id() : l.second < r.second;
    });
  });
  return n->entry_index;
}

bool is_subset_of_cells(GroundSet b, GroundSet cell_base, GroundContext& ctx) {
  GroundSet eb = expand(b, ctx);
  GroundSet base = expand(cell_base, ctx);
  for (GroundSet e : eb.elements()) {
    auto p = unpair(e);
    if (!p || !p->second.is_atom()) return false;
    if (!base.contains(normalize(p->first, ctx))) return false;
    if (!ctx.in_pi_d(p->second.stack())) return false;
  }
  return true;
}

}  // namespace

std::vector<Stack> entry_stacks(GroundSet b, GroundSet a, GroundContext& ctx) {
  b = normalize(b, ctx);
  std::vector<Stack> out;
  switch (a.kind()) {
    case GKind::Atom:
      return out;
    case GKind::Set: {
      const auto& idx = set_entry_index(a);
      auto it = std::lower_bound(idx.begin(), idx.end(), b.id(),
                                 [](const auto& e, std::size_t id) { return e.first.id() < id; });
      for (; it != idx.end() && it->first == b; ++it) out.push_back(it->second);
      return out;  // already sorted by stack
    }
    case GKind::TimesPi:
      if (ground_member(b, a.base(), ctx)) out = ctx.pi_d();
      break;
    case GKind::SubsetsTimesPi:
      if (is_subset_of_cells(b, a.base(), ctx)) out = ctx.pi_d();
      break;
    case GKind::Guarded:
      for (const auto& e : guarded_entries(a)) {
        if (normalize(e.name, ctx) != b) continue;
        auto s = pattern_stacks(e.pattern, ctx);
        out.insert(out.end(), s.begin(), s.end());
      }
      break;
    case GKind::Compr: {
      auto rest = entry_stacks(b, a.base(), ctx);
      bool any = false;
      for (const auto& s : rest) any = any || s.depth() < ctx.depth_bound();
      if (!any) break;
      auto xs = ctx.realizers_of(bind_closure(lazy_compr_closure(a), lazy_compr_var(a), b));
      for (const auto& xi : xs)
        for (const auto& s : rest)
          if (s.depth() < ctx.depth_bound()) out.push_back(s.push(xi));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<GroundSet>> entry_names(GroundSet a, GroundContext& ctx) {
  std::vector<GroundSet> out;
  switch (a.kind()) {
    case GKind::Atom:
      return out;
    case GKind::Set:
      for (const auto& e : set_entry_index(a)) out.push_back(e.first);
      break;
    case GKind::TimesPi:
      for (GroundSet u : expand(a.base(), ctx).elements()) out.push_back(normalize(u, ctx));
      break;
    case GKind::SubsetsTimesPi:
      return std::nullopt;
    case GKind::Guarded:
      for (const auto& e : guarded_entries(a)) out.push_back(normalize(e.name, ctx));
      break;
    case GKind::Compr:
      return entry_names(a.base(), ctx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Transitive closure and <

GroundSet transitive_closure(GroundSet a) {
  std::unordered_set<GroundSet, GroundSetHash> seen;
  std::vector<GroundSet> work;
  if (a.is_symbolic()) throw PreconditionError("closure of a symbolic value needs a context");
  for (GroundSet e : a.elements()) work.push_back(e);
  while (!work.empty()) {
    GroundSet x = work.back();
    work.pop_back();
    if (!seen.insert(x).second) continue;
    if (x.is_symbolic()) throw PreconditionError("closure of a symbolic value needs a context");
    for (GroundSet e : x.elements()) work.push_back(e);
  }
  return GroundSet::set(std::vector<GroundSet>(seen.begin(), seen.end()));
}

GroundSet transitive_closure_fixpoint(GroundSet a) {
  GroundSet c = GroundSet::set(a.elements());
  for (;;) {
    std::vector<GroundSet> next = c.elements();
    for (GroundSet y : c.elements())
      next.insert(next.end(), y.elements().begin(), y.elements().end());
    GroundSet n = GroundSet::set(std::move(next));
    if (n == c) return c;
    c = n;
  }
}

GroundSet transitive_closure(GroundSet a, GroundContext& ctx) {
  std::unordered_set<GroundSet, GroundSetHash> seen;
  std::vector<GroundSet> work = ground_elements(a, ctx);
  std::vector<GroundSet> out;
  while (!work.empty()) {
    GroundSet x = normalize(work.back(), ctx);
    work.pop_back();
    if (!seen.insert(x).second) continue;
    out.push_back(x);
    for (GroundSet e : ground_elements(x, ctx)) work.push_back(e);
  }
  return GroundSet::set(std::move(out));
}

bool less(GroundSet y, GroundSet x) { return transitive_closure(x).contains(y); }

bool less(GroundSet y, GroundSet x, GroundContext& ctx) {
  return transitive_closure(x, ctx).contains(normalize(y, ctx));
}

// ---------------------------------------------------------------------------
// Universes

std::vector<GroundSet> exhaustive_universe(std::size_t k, std::size_t ceiling) {
  std::vector<GroundSet> v;  // V_0
  for (std::size_t level = 0; level < k; ++level) {
    if (v.size() >= 63 || (std::size_t{1} << v.size()) > ceiling)
      throw ResourceError("V_" + std::to_string(level + 1) + " exceeds the universe ceiling");
    std::vector<GroundSet> next;
    for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
      std::vector<GroundSet> sub;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(v[i]);
      next.push_back(GroundSet::set(std::move(sub)));
    }
    v = std::move(next);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<GroundSet> seeded_universe(const std::vector<GroundSet>& seeds,
                                       const std::vector<SeedOp>& ops, std::size_t ceiling,
                                       std::size_t max_rank) {
  std::vector<GroundSet> cur(seeds.begin(), seeds.end());
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  if (cur.size() > ceiling) cur.resize(ceiling);
  for (;;) {
    std::vector<GroundSet> fresh;
    auto offer = [&](GroundSet g) {
      if (g.rank() <= max_rank && !std::binary_search(cur.begin(), cur.end(), g)) fresh.push_back(g);
    };
    for (SeedOp op : ops) {
      for (std::size_t i = 0; i < cur.size(); ++i) {
        GroundSet x = cur[i];
        if (op == SeedOp::Singleton) offer(singleton(x));
        if (op == SeedOp::Closure && x.is_set()) offer(transitive_closure(x));
        for (std::size_t j = 0; j < cur.size(); ++j) {
          GroundSet y = cur[j];
          if (op == SeedOp::Pair && i < j) offer(GroundSet::set({x, y}));
          if (op == SeedOp::Kuratowski) offer(kuratowski_pair(x, y));
          if (op == SeedOp::Union && i < j && x.is_set() && y.is_set()) offer(set_union(x, y));
        }
      }
    }
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    if (fresh.empty()) return cur;
    std::size_t room = ceiling - cur.size();
    if (fresh.size() > room) fresh.resize(room);
    cur.insert(cur.end(), fresh.begin(), fresh.end());
    std::sort(cur.begin(), cur.end());
    if (cur.size() >= ceiling) return cur;
  }
}

GroundSet random_pure_set(std::mt19937_64& rng, std::size_t max_rank, std::size_t max_width) {
  if (max_rank == 0) return GroundSet();
  std::uniform_int_distribution<std::size_t> width(0, max_width);
  std::uniform_int_distribution<std::size_t> depth(0, max_rank - 1);
  std::vector<GroundSet> es;
  std::size_t n = width(rng);
  for (std::size_t i = 0; i < n; ++i) es.push_back(random_pure_set(rng, depth(rng), max_width));
  return GroundSet::set(std::move(es));
}

}  // namespace realiz
