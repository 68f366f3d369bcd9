// Name evaluation and satisfaction in the ground model.

#include <algorithm>

#include "realiz/errors.hpp"
#include "realiz/logic.hpp"
#include "realiz/symbols.hpp"

namespace realiz {

namespace {

Env bind_all(Env env, const std::vector<std::string>& vars, const std::vector<GroundSet>& args) {
  if (vars.size() != args.size()) throw PreconditionError("arity mismatch");
  for (std::size_t i = 0; i < vars.size(); ++i) env.emplace_back(vars[i], args[i]);
  return env;
}

}  // namespace

GroundSet Session::eval(const NameTerm& t, const Env& env) {
  switch (t->kind) {
    case NameKind::Var: {
      const GroundSet* g = env_lookup(env, t->name);
      if (!g) throw PreconditionError("unbound variable " + t->name);
      return *g;
    }
    case NameKind::Const:
      return normalize(t->value, *this);
    case NameKind::Apply:
      break;
  }
  std::string key = memo_key(t.get(), t->free, env);
  auto it = eval_memo_.find(key);
  if (it != eval_memo_.end()) return it->second;
  Frame frame(*this);
  GroundSet value = t->binders.empty() && !is_binder_symbol(t->name) ? eval_apply(t, env)
                                                                       : eval_binder(t, env);
  value = normalize(value, *this);
  if (pinned_.insert(t.get()).second) pins_.push_back(t);
  eval_memo_.emplace(std::move(key), value);
  return value;
}

GroundSet Session::eval_apply(const NameTerm& t, const Env& env) {
  std::vector<GroundSet> a;
  for (const auto& arg : t->args) a.push_back(eval(arg, env));
  const std::string& f = t->name;
  auto bool2 = [&](BoolOp op) { return bool_op(op, a[0], a[1]); };
  if (f == "kpair") return kuratowski_pair(a[0], a[1]);
  if (f == "sing") return singleton(a[0]);
  if (f == "set") return GroundSet::set(a);
  if (f == "union") return set_union(expand(a[0], *this), expand(a[1], *this));
  if (f == "cl") return transitive_closure(a[0], *this);
  if (f == "dom") {
    auto names = entry_names(a[0], *this);
    if (!names) throw PreconditionError("entry names of " + print_ground(a[0]) + " are not enumerable");
    return GroundSet::set(*names);
  }
  if (f == "gimel") return gimel(a[0], *this);
  if (f == "subsetspi") return GroundSet::subsets_times_pi(a[0]);
  if (f == "band") return bool2(BoolOp::And);
  if (f == "bor") return bool2(BoolOp::Or);
  if (f == "bneg") return bool_op(BoolOp::Not, a[0]);
  if (f == "scale") return scale(a[0], a[1]);
  if (f == "join") return join(a[0], a[1], *this);
  if (f == "mix") {
    if (a.size() % 2 != 0) throw PreconditionError("mix expects mask/value pairs");
    std::vector<std::pair<GroundSet, GroundSet>> parts;
    for (std::size_t i = 0; i < a.size(); i += 2) parts.emplace_back(a[i], a[i + 1]);
    return mix(parts, *this);
  }
  if (f == "pairc") return pair_c(*this, a[0], a[1]);
  if (f == "paird") return pair_direct(a[0], a[1], *this);
  if (f == "vset") return v_of(a[0], *this);
  if (f == "qset") return q_of(a[0], *this);
  if (f == "unionbar") return big_union(*this, a[0]);
  if (f == "powbar") return power(*this, a[0]);
  if (f == "stacks") return stacks_set_;
  if (f == "psi") return universe_set_;
  throw PreconditionError("unknown function symbol " + f);
}

GroundSet Session::eval_binder(const NameTerm& t, const Env& env) {
  std::vector<GroundSet> a;
  for (const auto& arg : t->args) a.push_back(eval(arg, env));
  const std::string& f = t->name;
  const auto& bs = t->binders;
  if (f == "compr") return compr(*this, a[0], bs[0], t->eps_body, env);
  if (f == "chi") return char_eval(t->zf_body, bs, a, env);
  if (f == "skolem") {
    std::vector<std::string> xs(bs.begin(), bs.end() - 1);
    return skolem_select(t->zf_body, xs, bs.back(), a, env);
  }
  if (f == "image") return image_f(*this, bs[0], t->term_body, a[0], env);
  if (f == "phi") return collect_phi(*this, bs[0], t->eps_body, env);
  if (f == "gamma") return gamma(*this, bs[0], t->eps_body, env);
  if (f == "wchoice") return weak_choice_f(*this, bs[0], bs[1], t->eps_body, a[0], a[1], env);
  throw PreconditionError("unknown binder symbol " + f);
}

bool Session::zf_compare(const FormulaZF& f, const Env& env) {
  GroundSet l = eval(f->lhs, env);
  GroundSet r = eval(f->rhs, env);
  switch (f->kind) {
    case ZfKind::In:
      return ground_member(l, r, *this);
    case ZfKind::Eq:
      return l == r;
    case ZfKind::Less:
      return less(l, r, *this);
    case ZfKind::Sub: {
      if (l.is_set() && r.is_set()) return subset_of(l, r);
      for (GroundSet e : ground_elements(l, *this))
        if (!ground_member(e, r, *this)) return false;
      return true;
    }
    default:
      throw PreconditionError("not an atomic ground formula");
  }
}

bool Session::m_models(const FormulaZF& f, const Env& env) {
  Frame frame(*this);
  switch (f->kind) {
    case ZfKind::Bot:
      return false;
    case ZfKind::Top:
      return true;
    case ZfKind::In:
    case ZfKind::Eq:
    case ZfKind::Less:
    case ZfKind::Sub:
      return zf_compare(f, env);
    case ZfKind::Not:
      return !m_models(f->a, env);
    case ZfKind::And:
      return m_models(f->a, env) && m_models(f->b, env);
    case ZfKind::Or:
      return m_models(f->a, env) || m_models(f->b, env);
    case ZfKind::Imp:
      return !m_models(f->a, env) || m_models(f->b, env);
    case ZfKind::Iff:
      return m_models(f->a, env) == m_models(f->b, env);
    case ZfKind::Forall:
    case ZfKind::Exists:
    case ZfKind::ForallIn:
    case ZfKind::ExistsIn: {
      bool all = f->kind == ZfKind::Forall || f->kind == ZfKind::ForallIn;
      std::vector<GroundSet> dom = (f->kind == ZfKind::Forall || f->kind == ZfKind::Exists)
                                       ? universe_
                                       : ground_elements(eval(f->rhs, env), *this);
      Env inner = env;
      inner.emplace_back(f->var, GroundSet());
      for (GroundSet u : dom) {
        inner.back().second = u;
        if (m_models(f->a, inner) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

GroundSet Session::char_eval(const FormulaZF& r, const std::vector<std::string>& vars,
                             const std::vector<GroundSet>& args, const Env& env) {
  return boolean(m_models(r, bind_all(env, vars, args)));
}

GroundSet Session::skolem_select(const FormulaZF& f, const std::vector<std::string>& vars,
                                 const std::string& y, const std::vector<GroundSet>& args,
                                 const Env& env) {
  if (universe_.empty()) return GroundSet();
  Env inner = bind_all(env, vars, args);
  inner.emplace_back(y, GroundSet());
  for (GroundSet u : universe_) {
    inner.back().second = u;
    if (!m_models(f, inner)) return u;
  }
  return universe_.front();
}

GroundSet Session::least_witness(const FormulaZF& f, const std::vector<std::string>& vars,
                                 const std::string& y, const std::vector<GroundSet>& args,
                                 const Env& env) {
  if (universe_.empty()) return GroundSet();
  Env inner = bind_all(env, vars, args);
  inner.emplace_back(y, GroundSet());
  for (GroundSet u : universe_) {
    inner.back().second = u;
    if (m_models(f, inner)) return u;
  }
  return universe_.front();
}

}  // namespace realiz
