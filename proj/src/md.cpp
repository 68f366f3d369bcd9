#include "realiz/md.hpp"

#include <algorithm>
#include <fstream>

#include "realiz/errors.hpp"
#include "realiz/symbols.hpp"

namespace realiz {

// ---------------------------------------------------------------------------
// Structure

namespace {

std::vector<std::vector<bool>> matrix_of(const RelationGraph& g) {
  std::size_t n = g.nodes.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t y = 0; y < n; ++y)
    for (auto x : g.preds[y]) m[x][y] = true;
  return m;
}

}  // namespace

MDStructure::MDStructure(Session& s) : s_(&s) {
  in_ = matrix_of(relation_graph(RelationSpec::d_rel(parse_zf("x in y")), s));
  eq_ = matrix_of(relation_graph(RelationSpec::d_rel(parse_zf("x = y")), s));
}

MDStructure::MDStructure(Session& s,
                         const std::vector<std::pair<std::size_t, std::size_t>>& in_edges)
    : s_(&s) {
  std::size_t n = s.universe().size();
  in_.assign(n, std::vector<bool>(n, false));
  eq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) eq_[i][i] = true;
  for (auto [x, y] : in_edges) {
    if (x >= n || y >= n) throw PreconditionError("fixture edge outside the universe");
    in_[x][y] = true;
  }
}

std::optional<std::size_t> MDStructure::index(GroundSet x) const {
  const auto& u = universe();
  auto it = std::find(u.begin(), u.end(), x);
  if (it == u.end()) return std::nullopt;
  return static_cast<std::size_t>(it - u.begin());
}

RelationGraph MDStructure::in_graph() const {
  RelationGraph g;
  g.nodes = universe();
  g.preds.resize(size());
  for (std::size_t y = 0; y < size(); ++y)
    for (std::size_t x = 0; x < size(); ++x)
      if (in_[x][y]) g.preds[y].push_back(x);
  return g;
}

GroundSet MDStructure::skolem(const FormulaZF& forall_g, const Env& env) {
  if (forall_g->kind != ZfKind::Forall) throw PreconditionError("skolem expects a universal formula");
  std::string key = print(forall_g);
  for (const auto& v : forall_g->free) {
    const GroundSet* g = env_lookup(env, v);
    if (g == nullptr) throw PreconditionError("unbound variable " + v);
    key += '|' + std::to_string(g->id());
  }
  auto it = skolem_cache_.find(key);
  if (it != skolem_cache_.end()) return it->second;
  GroundSet w = s_->skolem_select(forall_g->a, {}, forall_g->var, {}, env);
  skolem_cache_.emplace(std::move(key), w);
  return w;
}

bool MDStructure::d(GroundSet alpha) {
  auto it = d_cache_.find(alpha.id());
  if (it != d_cache_.end()) return it->second;
  bool v = decide_D(alpha, *s_);
  d_cache_.emplace(alpha.id(), v);
  return v;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

FormulaZF imp(FormulaZF a, FormulaZF b) { return zf_binary(ZfKind::Imp, std::move(a), std::move(b)); }
FormulaZF neg(FormulaZF a) { return imp(std::move(a), zf_const(false)); }

// Rewrites F over ⊥, ∈, =, → and ∀ only.
FormulaZF purify(const FormulaZF& f) {
  switch (f->kind) {
    case ZfKind::Bot:
    case ZfKind::In:
    case ZfKind::Eq:
      return f;
    case ZfKind::Top:
      return neg(zf_const(false));
    case ZfKind::Less:
    case ZfKind::Sub:
      throw PreconditionError("not in the pure ZF language: " + print(f));
    case ZfKind::Not:
      return neg(purify(f->a));
    case ZfKind::And:
      return neg(imp(purify(f->a), neg(purify(f->b))));
    case ZfKind::Or:
      return imp(neg(purify(f->a)), purify(f->b));
    case ZfKind::Imp:
      return imp(purify(f->a), purify(f->b));
    case ZfKind::Iff: {
      FormulaZF a = purify(f->a);
      FormulaZF b = purify(f->b);
      return neg(imp(imp(a, b), neg(imp(b, a))));
    }
    case ZfKind::Forall:
      return zf_quant(ZfKind::Forall, f->var, purify(f->a));
    case ZfKind::Exists:
      return neg(zf_quant(ZfKind::Forall, f->var, neg(purify(f->a))));
    case ZfKind::ForallIn:
      return zf_quant(ZfKind::Forall, f->var,
                      imp(zf_atom(ZfKind::In, nt_var(f->var), f->rhs), purify(f->a)));
    case ZfKind::ExistsIn:
      return neg(zf_quant(
          ZfKind::Forall, f->var,
          imp(zf_atom(ZfKind::In, nt_var(f->var), f->rhs), neg(purify(f->a)))));
  }
  return f;
}

// ⟨F⟩ as a name term over the free variables of F.
NameTerm char_term(const FormulaZF& f) {
  std::vector<std::string> vars = f->free;
  std::vector<NameTerm> args;
  for (const auto& v : vars) args.push_back(nt_var(v));
  if (vars.empty()) {
    vars.push_back("u");
    args.push_back(nt_const(GroundSet()));
  }
  return nt_binder("chi", vars, nullptr, f, nullptr, args);
}

NameTerm atom_char(const FormulaZF& f) {
  FormulaZF body = zf_atom(f->kind, nt_var("u"), nt_var("v"));
  return nt_binder("chi", {"u", "v"}, nullptr, body, nullptr, {f->lhs, f->rhs});
}

FormulaEps translate_pure(const FormulaZF& f) {
  switch (f->kind) {
    case ZfKind::Bot:
      return eps_bot();
    case ZfKind::In:
    case ZfKind::Eq:
      return eps_d(atom_char(f));
    case ZfKind::Imp:
      return eps_arrow(translate_pure(f->a), translate_pure(f->b));
    case ZfKind::Forall:
      return eps_forall(f->var, translate_pure(f->a));
    default:
      throw PreconditionError("unexpected connective in " + print(f));
  }
}

}  // namespace

FormulaEps md_translate(const FormulaZF& f) { return translate_pure(purify(f)); }

bool md_holds(MDStructure& md, const FormulaEps& f, const Env& env) {
  switch (f->kind) {
    case EpsKind::Bot:
      return false;
    case EpsKind::Arrow:
      return !md_holds(md, f->a, env) || md_holds(md, f->b, env);
    case EpsKind::Forall: {
      Env inner = env;
      inner.emplace_back(f->var, GroundSet());
      for (GroundSet u : md.universe()) {
        inner.back().second = u;
        if (!md_holds(md, f->a, inner)) return false;
      }
      return true;
    }
    case EpsKind::D:
      return md.d(md.session().eval(f->lhs, env));
    default:
      throw PreconditionError("not a translated formula: " + print(f));
  }
}

// ---------------------------------------------------------------------------
// Łoś harness

namespace {

class Los {
 public:
  Los(MDStructure& md, LosReport& r) : md_(md), r_(r) {}

  void check(const FormulaZF& g, const Env& env) {
    if (!r_.ok) return;
    ++r_.instances;
    bool left = md_holds(md_, translate_pure(g), env);
    bool right = md_.d(boolean(md_.session().m_models(g, env)));
    if (left != right) {
      fail(g, env);
      return;
    }
    switch (g->kind) {
      case ZfKind::Imp:
        check(g->a, env);
        check(g->b, env);
        break;
      case ZfKind::Forall: {
        GroundSet w = md_.skolem(g, env);
        Env inner = env;
        inner.emplace_back(g->var, w);
        ++r_.skolem_checks;
        if (md_.session().m_models(g, env) != md_.session().m_models(g->a, inner)) {
          fail(g, env);
          return;
        }
        check(g->a, inner);
        break;
      }
      default:
        break;
    }
  }

 private:
  void fail(const FormulaZF& g, const Env& env) {
    r_.ok = false;
    r_.failing = print(g);
    for (const auto& [v, x] : env) r_.failing += " [" + v + " := " + print_ground(x) + "]";
  }

  MDStructure& md_;
  LosReport& r_;
};

}  // namespace

LosReport los_check(MDStructure& md, const FormulaZF& f, const Env& args, bool force) {
  LosReport r;
  FormulaZF pure = purify(f);
  Los(md, r).check(pure, args);
  if (force) {
    FormulaEps lhs = translate_pure(pure);
    FormulaEps rhs = eps_d(char_term(f));
    if (auto t = md.session().force_report(eps_arrow(lhs, rhs), args)) r.forward = print_term(*t);
    if (auto t = md.session().force_report(eps_arrow(rhs, lhs), args)) r.backward = print_term(*t);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Elementarity

std::vector<ElementarityRecord> elementarity_suite(MDStructure& md,
                                                   const std::vector<std::string>& corpus) {
  std::vector<ElementarityRecord> out;
  for (const auto& text : corpus) {
    FormulaZF f = parse_zf(text);
    if (!f->free.empty()) throw PreconditionError("sentence has free variables: " + text);
    ElementarityRecord r;
    r.sentence = print(f);
    r.m_value = md.session().m_models(f);
    r.md_value = md_holds(md, md_translate(f));
    out.push_back(std::move(r));
  }
  return out;
}

const std::vector<std::string>& md_corpus() {
  static const std::vector<std::string> corpus = {
      "top",
      "bot",
      "exists x. forall y. y notin x",
      "forall x. forall y. (forall z. z in x <-> z in y) -> x = y",
      "forall x. exists y. x in y",
      "forall x. x notin x",
      "exists x. x in x",
      "forall x. forall y. x in y -> y notin x",
      "exists x. exists y. x in y",
      "exists x. exists y. not x = y",
      "forall x. forall y. x = y -> y = x",
      "forall x. forall y. forall z. x = y & y = z -> x = z",
      "exists x. forall y. y in x",
      "forall x. exists y. y notin x",
      "forall x. forall y. exists z. x in z & y in z",
      "forall x. (exists y. y in x) or (forall y. y notin x)",
      "forall x. forall y. x in y or not x in y",
      "exists x. exists y. x in y & y notin x",
      "forall x. exists y. forall z. z in y -> z in x",
      "exists x. forall y in x. bot",
      "forall x. forall y in x. exists z in x. z = y",
      "forall x. exists y. y = sing(x)",
      "forall x. forall y. kpair(x, y) = kpair(x, y)",
      "forall x. forall y. forall z. x in y & y in z -> z notin x",
  };
  return corpus;
}

std::vector<std::string> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read corpus " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Collapse

GroundSet CollapseTable::image_set() const { return GroundSet::set(image); }

CollapseTable collapse_phi(const MDStructure& md) {
  std::size_t n = md.size();
  CollapseTable t;
  t.class_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.class_of[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (md.eq_D(i, j)) {
        t.class_of[i] = t.class_of[j];
        break;
      }
  }
  RelationGraph g = md.in_graph();
  WfResult wf = is_wellfounded(g);
  if (!wf.wellfounded) throw NotWellFoundedError("the membership of M_D has a cycle", wf.cycle);

  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : g.preds[i]) members[i].push_back(t.class_of[j]);
    std::sort(members[i].begin(), members[i].end());
    members[i].erase(std::unique(members[i].begin(), members[i].end()), members[i].end());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t.class_of[i] == i && t.class_of[j] == j && members[i] == members[j])
        throw ExtensionalityError("classes of " + print_ground(md.universe()[j]) + " and " +
                                      print_ground(md.universe()[i]) + " have the same members",
                                  j, i);

  t.image.assign(n, GroundSet());
  for (auto i : wf.order) {
    std::vector<GroundSet> elems;
    for (auto j : g.preds[i]) elems.push_back(t.image[j]);
    t.image[i] = GroundSet::set(elems);
  }
  return t;
}

namespace {

// Hereditarily ∈_D-linear and ∈_D-transitive members, by index; memoized.
class OrdinalTest {
 public:
  explicit OrdinalTest(const MDStructure& md) : md_(md), memo_(md.size(), -1) {}

  bool operator()(std::size_t x) {
    if (memo_[x] >= 0) return memo_[x] == 1;
    bool ok = true;
    std::size_t n = md_.size();
    for (std::size_t y = 0; y < n && ok; ++y) {
      if (!md_.in_D(y, x)) continue;
      if (!(*this)(y)) ok = false;
      for (std::size_t z = 0; z < n && ok; ++z) {
        if (md_.in_D(z, y) && !md_.in_D(z, x)) ok = false;
        if (md_.in_D(z, x) && !md_.eq_D(y, z) && !md_.in_D(y, z) && !md_.in_D(z, y)) ok = false;
      }
    }
    memo_[x] = ok ? 1 : 0;
    return ok;
  }

 private:
  const MDStructure& md_;
  std::vector<int> memo_;
};

}  // namespace

CollapseCheck verify_collapse(const MDStructure& md, const CollapseTable& t) {
  CollapseCheck c;
  std::size_t n = md.size();
  GroundSet all = t.image_set();
  for (std::size_t x = 0; x < n; ++x) {
    for (GroundSet z : t.image[x].elements())
      if (!all.contains(z)) c.transitive = false;
    for (std::size_t y = 0; y < n; ++y) {
      bool same_class = t.class_of[x] == t.class_of[y];
      if (same_class != (t.image[x] == t.image[y])) c.injective = false;
      if (md.in_D(y, x) && !t.image[x].contains(t.image[y])) c.preserves_membership = false;
    }
    for (GroundSet z : t.image[x].elements()) {
      bool found = false;
      for (std::size_t y = 0; y < n && !found; ++y) found = md.in_D(y, x) && t.image[y] == z;
      if (!found) c.onto_members = false;
    }
  }
  OrdinalTest ordinal(md);
  for (std::size_t x = 0; x < n; ++x) {
    if (!ordinal(x)) continue;
    std::vector<std::size_t> classes;
    for (std::size_t y = 0; y < n; ++y)
      if (md.in_D(y, x)) classes.push_back(t.class_of[y]);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (t.image[x] != nat(classes.size())) c.ordinals_preserved = false;
  }
  return c;
}

bool wf_check_mD(const MDStructure& md) { return is_wellfounded(md.in_graph()).wellfounded; }

bool eq_congruence_holds(const MDStructure& md) {
  std::size_t n = md.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!md.eq_D(x, x)) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (md.eq_D(x, y) != md.eq_D(y, x)) return false;
      for (std::size_t z = 0; z < n; ++z)
        if (md.eq_D(x, y) && md.eq_D(y, z) && !md.eq_D(x, z)) return false;
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t x1 = 0; x1 < n; ++x1) {
      if (!md.eq_D(x, x1)) continue;
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t y1 = 0; y1 < n; ++y1)
          if (md.eq_D(y, y1) && md.in_D(x, y) != md.in_D(x1, y1)) return false;
    }
  return true;
}

}  // namespace realiz
