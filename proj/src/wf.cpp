#include "realiz/wf.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "realiz/errors.hpp"
#include "realiz/symbols.hpp"

namespace realiz {

// ---------------------------------------------------------------------------
// Relation specs

RelationSpec RelationSpec::eps() { return RelationSpec{}; }

RelationSpec RelationSpec::in() {
  RelationSpec r;
  r.kind = Kind::In;
  return r;
}

RelationSpec RelationSpec::less_alpha(GroundSet alpha) {
  if (!is_boolean(alpha)) throw PreconditionError("less(alpha) expects a ground boolean");
  RelationSpec r;
  r.kind = Kind::LessAlpha;
  r.alpha = alpha;
  return r;
}

RelationSpec RelationSpec::char_rel(FormulaZF rel, GroundSet alpha) {
  if (!is_boolean(alpha)) throw PreconditionError("chi(R, alpha) expects a ground boolean");
  RelationSpec r;
  r.kind = Kind::CharRel;
  r.rel = std::move(rel);
  r.alpha = alpha;
  return r;
}

RelationSpec RelationSpec::direct_sum(RelationSpec r0, RelationSpec r1) {
  RelationSpec r;
  r.kind = Kind::DirectSum;
  r.r0 = std::make_shared<const RelationSpec>(std::move(r0));
  r.r1 = std::make_shared<const RelationSpec>(std::move(r1));
  return r;
}

RelationSpec RelationSpec::d_rel(FormulaZF base) {
  RelationSpec r;
  r.kind = Kind::DRel;
  r.rel = std::move(base);
  return r;
}

RelationSpec RelationSpec::d_rel(RelationSpec base) {
  RelationSpec r;
  r.kind = Kind::DRel;
  r.r0 = std::make_shared<const RelationSpec>(std::move(base));
  return r;
}

RelationSpec RelationSpec::explicit_edges(std::vector<std::pair<std::size_t, std::size_t>> edges) {
  RelationSpec r;
  r.kind = Kind::Explicit;
  r.edges = std::move(edges);
  return r;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

GroundSet parse_alpha(std::string_view text) {
  std::string t = trim(text);
  if (t == "0") return boolean(false);
  if (t == "1") return boolean(true);
  throw ParseError("relation threshold must be 0 or 1, got '" + t + "'", 0);
}

// Position of the last top-level comma, for chi(R, alpha).
std::size_t last_top_comma(std::string_view s) {
  int depth = 0;
  std::size_t found = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) found = i;
  }
  return found;
}

}  // namespace

RelationSpec parse_relation(std::string_view text) {
  std::string t = trim(text);
  if (t == "eps") return RelationSpec::eps();
  if (t == "in") return RelationSpec::in();
  auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw ParseError("unknown relation '" + t + "'", 0);
  std::string head = trim(std::string_view(t).substr(0, open));
  std::string_view inner = std::string_view(t).substr(open + 1, t.size() - open - 2);
  if (head == "less") return RelationSpec::less_alpha(parse_alpha(inner));
  if (head == "chi") {
    auto comma = last_top_comma(inner);
    if (comma == std::string_view::npos) throw ParseError("chi expects (R, alpha)", open + 1);
    return RelationSpec::char_rel(parse_zf(inner.substr(0, comma)),
                                  parse_alpha(inner.substr(comma + 1)));
  }
  if (head == "dsum")
    return RelationSpec::direct_sum(RelationSpec::less_alpha(boolean(true)),
                                    RelationSpec::char_rel(parse_zf(inner), boolean(true)));
  if (head == "drel") return RelationSpec::d_rel(parse_zf(inner));
  throw ParseError("unknown relation '" + head + "'", 0);
}

std::string print_relation(const RelationSpec& r) {
  auto a = [&] { return r.alpha == boolean(true) ? std::string("1") : std::string("0"); };
  switch (r.kind) {
    case RelationSpec::Kind::Eps:
      return "eps";
    case RelationSpec::Kind::In:
      return "in";
    case RelationSpec::Kind::LessAlpha:
      return "less(" + a() + ")";
    case RelationSpec::Kind::CharRel:
      return "chi(" + print(r.rel) + ", " + a() + ")";
    case RelationSpec::Kind::DirectSum:
      if (r.r0->kind == RelationSpec::Kind::LessAlpha && r.r0->alpha == boolean(true) &&
          r.r1->kind == RelationSpec::Kind::CharRel && r.r1->alpha == boolean(true))
        return "dsum(" + print(r.r1->rel) + ")";
      return "dsum(" + print_relation(*r.r0) + ", " + print_relation(*r.r1) + ")";
    case RelationSpec::Kind::DRel:
      return "drel(" + (r.rel ? print(r.rel) : print_relation(*r.r0)) + ")";
    case RelationSpec::Kind::Explicit:
      return "explicit(" + std::to_string(r.edges.size()) + " edges)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Graphs

std::size_t RelationGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& p : preds) n += p.size();
  return n;
}

namespace {

bool zf_holds(Session& s, const FormulaZF& r, GroundSet x, GroundSet y) {
  return s.m_models(r, Env{{"x", x}, {"y", y}});
}

class EdgeEval {
 public:
  EdgeEval(Session& s, const std::vector<GroundSet>& universe) : s_(s), universe_(universe) {}

  bool edge(const RelationSpec& r, GroundSet x, GroundSet y) {
    using K = RelationSpec::Kind;
    switch (r.kind) {
      case K::Eps:
        return !entry_stacks(x, y, s_).empty();
      case K::In:
        return ground_member(x, y, s_);
      case K::LessAlpha:
        return r.alpha == boolean(false) || less(x, y, s_);
      case K::CharRel:
        return r.alpha == boolean(false) || zf_holds(s_, r.rel, x, y);
      case K::DRel:
        return d(boolean(r.rel ? zf_holds(s_, r.rel, x, y) : edge(*r.r0, x, y)));
      case K::DirectSum: {
        auto px = unpair(x);
        auto py = unpair(y);
        if (!px || !py) return false;
        bool a1 = px->first == boolean(true);
        bool a = py->first == boolean(true);
        if (!a1 && a) return true;
        if (!a1 && !a) return edge(*r.r0, px->second, py->second);
        if (a1 && a) return edge(*r.r1, px->second, py->second);
        return false;
      }
      case K::Explicit: {
        auto ix = index(x);
        auto iy = index(y);
        if (!ix || !iy) return false;
        return std::find(r.edges.begin(), r.edges.end(), std::make_pair(*ix, *iy)) !=
               r.edges.end();
      }
    }
    return false;
  }

 private:
  bool d(GroundSet alpha) {
    auto it = d_memo_.find(alpha.id());
    if (it != d_memo_.end()) return it->second;
    bool v = decide_D(alpha, s_);
    d_memo_.emplace(alpha.id(), v);
    return v;
  }

  std::optional<std::size_t> index(GroundSet g) const {
    auto it = std::find(universe_.begin(), universe_.end(), g);
    if (it == universe_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - universe_.begin());
  }

  Session& s_;
  const std::vector<GroundSet>& universe_;
  std::map<std::size_t, bool> d_memo_;
};

}  // namespace

RelationGraph relation_graph(const RelationSpec& rel, Session& s,
                             const std::vector<GroundSet>& universe) {
  RelationGraph g;
  if (rel.kind == RelationSpec::Kind::DirectSum) {
    for (bool b : {false, true})
      for (GroundSet a : universe) g.nodes.push_back(kuratowski_pair(boolean(b), a));
  } else {
    g.nodes = universe;
  }
  g.preds.resize(g.nodes.size());
  EdgeEval ev(s, universe);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t j = 0; j < g.nodes.size(); ++j)
      if (ev.edge(rel, g.nodes[j], g.nodes[i])) g.preds[i].push_back(j);
  return g;
}

RelationGraph relation_graph(const RelationSpec& rel, Session& s) {
  return relation_graph(rel, s, s.universe());
}

WfResult is_wellfounded(const RelationGraph& g) {
  std::size_t n = g.nodes.size();
  std::vector<std::size_t> missing(n);
  std::vector<std::vector<std::size_t>> succs(n);
  for (std::size_t i = 0; i < n; ++i) {
    missing[i] = g.preds[i].size();
    for (auto j : g.preds[i]) succs[j].push_back(i);
  }
  WfResult r;
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (missing[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    std::size_t i = ready.front();
    ready.erase(ready.begin());
    r.order.push_back(i);
    for (auto k : succs[i])
      if (--missing[k] == 0) ready.push_back(k);
  }
  if (r.order.size() == n) {
    r.wellfounded = true;
    return r;
  }
  // every unfinished node has an unfinished predecessor: walk back until a repeat
  std::vector<int> seen_at(n, -1);
  std::vector<std::size_t> walk;
  std::size_t cur = 0;
  while (missing[cur] == 0) ++cur;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    for (auto j : g.preds[cur]) {
      if (missing[j] > 0) {
        cur = j;
        break;
      }
    }
  }
  // walk holds x ≻ pred ≻ …; reverse the loop so each element precedes the next
  std::vector<std::size_t> loop(walk.begin() + seen_at[cur], walk.end());
  std::reverse(loop.begin(), loop.end());
  r.cycle = std::move(loop);
  r.order.clear();
  return r;
}

bool minimal_element_scheme(const RelationGraph& g) {
  std::size_t n = g.nodes.size();
  if (n > 20) throw ResourceError("minimal-element scheme is exhaustive; at most 20 nodes");
  std::vector<std::uint32_t> pred_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : g.preds[i]) pred_mask[i] |= std::uint32_t{1} << j;
  for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << n); ++sub) {
    bool has_min = false;
    for (std::size_t i = 0; i < n && !has_min; ++i)
      if ((sub >> i & 1U) && (pred_mask[i] & sub) == 0) has_min = true;
    if (!has_min) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Induction realizer

std::optional<FormulaZF> relation_formula(const RelationSpec& rel) {
  using K = RelationSpec::Kind;
  switch (rel.kind) {
    case K::In:
      return parse_zf("x in y");
    case K::LessAlpha:
      return rel.alpha == boolean(true) ? parse_zf("x < y") : zf_const(true);
    case K::CharRel:
      return rel.alpha == boolean(true) ? rel.rel : zf_const(true);
    case K::DRel:
      if (rel.rel) return rel.rel;
      return rel.r0 ? relation_formula(*rel.r0) : std::nullopt;
    default:
      return std::nullopt;
  }
}

FormulaEps induction_formula(const FormulaZF& rel) {
  // R(y, x) from R(x, y), through a fresh variable
  FormulaZF swapped = substitute(rel, "x", nt_var("x#r"));
  swapped = substitute(swapped, "y", nt_var("x"));
  swapped = substitute(swapped, "x#r", nt_var("y"));
  auto x = nt_var("x");
  auto y = nt_var("y");
  auto big_x = nt_var("X");
  FormulaEps step = eps_forall(
      "x", eps_arrow(eps_forall("y", eps_hook(swapped, eps_rel(EpsKind::EpsNot, y, big_x))),
                     eps_rel(EpsKind::EpsNot, x, big_x)));
  return eps_forall("X",
                    eps_arrow(step, eps_forall("x", eps_rel(EpsKind::EpsNot, x, big_x))));
}

Verdict check_induction_realizer(Session& s, const RelationSpec& rel, const Term& realizer) {
  auto f = relation_formula(rel);
  if (!f) throw PreconditionError("relation " + print_relation(rel) + " has no ground formula");
  return s.realizes(realizer, induction_formula(*f));
}

// ---------------------------------------------------------------------------
// Ranks

std::optional<std::size_t> RankTable::find(GroundSet x) const {
  auto it = std::find(nodes.begin(), nodes.end(), x);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

namespace {

std::string cycle_text(const RelationGraph& g, const std::vector<std::size_t>& cycle) {
  std::string out;
  for (auto i : cycle) out += print_ground(g.nodes[i]) + " < ";
  if (!cycle.empty()) out += print_ground(g.nodes[cycle.front()]);
  return out;
}

}  // namespace

RankTable rank_fn(const RelationGraph& g) {
  WfResult wf = is_wellfounded(g);
  if (!wf.wellfounded) throw NotWellFoundedError("relation is not well founded: " + cycle_text(g, wf.cycle), wf.cycle);
  RankTable t;
  t.nodes = g.nodes;
  t.rank.assign(g.nodes.size(), 0);
  for (auto i : wf.order)
    for (auto j : g.preds[i]) t.rank[i] = std::max(t.rank[i], t.rank[j] + 1);
  return t;
}

bool rank_fixpoint_holds(const RelationGraph& g, const RankTable& t) {
  std::size_t n = g.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> todo(g.preds[i].begin(), g.preds[i].end());
    std::vector<GroundSet> ranks;
    while (!todo.empty()) {
      auto j = todo.back();
      todo.pop_back();
      if (seen[j]) continue;
      seen[j] = true;
      ranks.push_back(t.ordinal(j));
      todo.insert(todo.end(), g.preds[j].begin(), g.preds[j].end());
    }
    if (GroundSet::set(ranks) != t.ordinal(i)) return false;
  }
  return true;
}

MonotoneReport rank_monotone_check(const RelationGraph& g0, const RelationGraph& g1,
                                   const std::vector<std::size_t>& f) {
  if (f.size() != g0.nodes.size()) throw PreconditionError("map must cover every node");
  for (std::size_t x = 0; x < g0.nodes.size(); ++x) {
    for (auto y : g0.preds[x]) {
      const auto& p = g1.preds.at(f[x]);
      if (std::find(p.begin(), p.end(), f[y]) == p.end())
        throw PreconditionError("map does not preserve the edge " + print_ground(g0.nodes[y]) +
                                " < " + print_ground(g0.nodes[x]));
    }
  }
  RankTable t0 = rank_fn(g0);
  RankTable t1 = rank_fn(g1);
  MonotoneReport r;
  for (std::size_t x = 0; x < g0.nodes.size(); ++x) {
    if (t0.rank[x] > t1.rank[f[x]]) {
      r.ok = false;
      r.violation = x;
      r.message = "rank of " + print_ground(g0.nodes[x]) + " exceeds the rank of its image";
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Ultrafilter and mixing

bool decide_D(GroundSet alpha, Session& s) {
  return is_wellfounded(relation_graph(RelationSpec::less_alpha(alpha), s)).wellfounded;
}

namespace {

std::vector<std::pair<GroundSet, Stack>> entries_of(GroundSet a, Session& s) {
  auto names = entry_names(a, s);
  if (!names) throw PreconditionError("entries of " + print_ground(a) + " are not enumerable");
  std::vector<std::pair<GroundSet, Stack>> out;
  for (GroundSet b : *names)
    for (const auto& st : entry_stacks(b, a, s)) out.emplace_back(b, st);
  return out;
}

bool is_entry_name(GroundSet b, GroundSet a, Session& s) { return !entry_stacks(b, a, s).empty(); }

}  // namespace

MixWitness mix_witness(GroundSet alpha, GroundSet beta, GroundSet a, GroundSet a0, GroundSet b,
                       GroundSet b0, Session& s) {
  if (bool_op(BoolOp::And, alpha, beta) != boolean(false))
    throw PreconditionError("mix masks are not disjoint");
  if (!is_entry_name(a0, a, s)) throw PreconditionError("a0 is not an entry name of A");
  if (!is_entry_name(b0, b, s)) throw PreconditionError("b0 is not an entry name of B");
  bool use_b = beta == boolean(true);
  std::vector<GroundSet> cells;
  for (const auto& [x, px] : entries_of(a, s)) {
    for (const auto& [y, py] : entries_of(b, s)) {
      GroundSet name = join(scale(alpha, x), scale(beta, y), s);
      cells.push_back(kuratowski_pair(name, GroundSet::atom(use_b ? py : px)));
    }
  }
  MixWitness w;
  w.c = normalize(GroundSet::set(cells), s);
  w.c0 = join(scale(alpha, a0), scale(beta, b0), s);
  return w;
}

bool has_minimal_entry(GroundSet a, GroundSet alpha, Session& s) {
  auto names = entry_names(a, s);
  if (!names) throw PreconditionError("entries of " + print_ground(a) + " are not enumerable");
  bool all = alpha == boolean(false);
  for (GroundSet x : *names) {
    bool minimal = true;
    for (GroundSet y : *names) {
      if (all || less(y, x, s)) {
        minimal = false;
        break;
      }
    }
    if (minimal) return true;
  }
  return false;
}

namespace {

void require_wellfounded_base(const FormulaZF& base, Session& s) {
  RelationGraph g = relation_graph(RelationSpec::char_rel(base, boolean(true)), s);
  WfResult wf = is_wellfounded(g);
  if (!wf.wellfounded)
    throw PreconditionError("base relation " + print(base) +
                            " is not well founded: " + cycle_text(g, wf.cycle));
}

}  // namespace

GroundSet direct_sum_char(const FormulaZF& base, GroundSet alpha1, GroundSet a1, GroundSet alpha,
                          GroundSet a, Session& s) {
  require_wellfounded_base(base, s);
  auto neg = [](GroundSet v) { return bool_op(BoolOp::Not, v); };
  auto conj = [](GroundSet u, GroundSet v) { return bool_op(BoolOp::And, u, v); };
  auto disj = [](GroundSet u, GroundSet v) { return bool_op(BoolOp::Or, u, v); };
  GroundSet lt = boolean(less(a1, a, s));
  GroundSet sq = boolean(zf_holds(s, base, a1, a));
  return disj(disj(conj(neg(alpha1), alpha), conj(conj(neg(alpha1), neg(alpha)), lt)),
              conj(conj(alpha1, alpha), sq));
}

RelationSpec direct_sum(const FormulaZF& base, Session& s) {
  require_wellfounded_base(base, s);
  return RelationSpec::direct_sum(RelationSpec::less_alpha(boolean(true)),
                                  RelationSpec::char_rel(base, boolean(true)));
}

std::size_t kappa0(GroundSet a, Session& s) {
  auto names = entry_names(a, s);
  if (!names) throw PreconditionError("entries of " + print_ground(a) + " are not enumerable");
  std::size_t n = names->size();
  if (n > 5) throw ResourceError("kappa0 enumerates strict orders on at most 5 entry names");
  if (n == 0) return 0;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << slots.size()); ++mask) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1U) r[slots[k].first][slots[k].second] = true;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        if (r[i][j])
          for (std::size_t k = 0; k < n; ++k)
            if (r[j][k] && !r[i][k]) {
              transitive = false;
              break;
            }
    if (!transitive) continue;
    RelationGraph g;
    g.nodes = *names;
    g.preds.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[j][i]) g.preds[i].push_back(j);
    if (!is_wellfounded(g).wellfounded) continue;
    RankTable t = rank_fn(g);
    std::size_t image = *std::max_element(t.rank.begin(), t.rank.end()) + 1;
    best = std::max(best, image);
  }
  return best;
}

}  // namespace realiz
