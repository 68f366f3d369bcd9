#include "realiz/symbols.hpp"

#include <algorithm>

#include "realiz/errors.hpp"

namespace realiz {

namespace {

Env with(Env env, const std::string& var, GroundSet value) {
  env.emplace_back(var, value);
  return env;
}

NameTerm v(const char* name) { return nt_var(name); }

// (∃y ε x) z ε y, as ¬∀y(z ε y → y ε̸ x)
const FormulaEps& union_body() {
  static const FormulaEps f = eps_not(eps_forall(
      "y#", eps_arrow(eps_member(v("z#"), v("y#")), eps_rel(EpsKind::EpsNot, v("y#"), v("x#")))));
  return f;
}

const FormulaEps& power_body() {
  static const FormulaEps f = eps_rel(EpsKind::StrongIncl, v("y#"), v("x#"));
  return f;
}

const FormulaEps& pair_body() {
  static const FormulaEps f = eps_or(eps_eq(v("z#"), v("x#")), eps_eq(v("z#"), v("y#")));
  return f;
}

GroundSet require_boolean(GroundSet a, const char* what) {
  if (!is_boolean(a)) throw PreconditionError(std::string(what) + " expects a ground boolean");
  return a;
}

}  // namespace

FormulaClosure partial_closure(const FormulaEps& f, const std::string& var, const Env& params) {
  FormulaClosure c;
  c.formula = f;
  c.key = f->text;
  for (const auto& name : f->free) {
    if (name == var) continue;
    const GroundSet* g = env_lookup(params, name);
    if (g == nullptr) throw PreconditionError("unbound variable " + name + " in " + f->text);
    c.env.emplace_back(name, *g);
    c.key += ";" + name + "=" + print_ground(*g);
  }
  return c;
}

GroundSet compr(Session& s, GroundSet a, const std::string& var, const FormulaEps& f,
                const Env& params) {
  auto names = entry_names(a, s);
  if (!names) return make_lazy_compr(a, var, partial_closure(f, var, params));
  std::vector<Entry> entries;
  for (GroundSet b : *names) {
    FormulaClosure c = make_closure(f, with(params, var, b));
    entries.push_back({b, pattern_push_realizer(c, pattern_only(entry_stacks(b, a, s)))});
  }
  return normalize(make_guarded(std::move(entries)), s);
}

GroundSet pair_direct(GroundSet x, GroundSet y, GroundContext& ctx) {
  return normalize(make_guarded({{x, pattern_push_marker("1", pattern_all())},
                                 {y, pattern_push_marker("0", pattern_all())}}),
                   ctx);
}

GroundSet pair_c(Session& s, GroundSet x, GroundSet y) {
  GroundSet base = gimel(GroundSet::set({x, y}), s);
  return compr(s, base, "z#", pair_body(), {{"x#", x}, {"y#", y}});
}

GroundSet v_of(GroundSet a, GroundContext& ctx) {
  return normalize(GroundSet::times_pi(transitive_closure(a, ctx)), ctx);
}

GroundSet q_of(GroundSet a, GroundContext& ctx) {
  return GroundSet::subsets_times_pi(transitive_closure(a, ctx));
}

GroundSet big_union(Session& s, GroundSet a) {
  return compr(s, v_of(a, s), "z#", union_body(), {{"x#", a}});
}

GroundSet power(Session& s, GroundSet a) {
  return compr(s, q_of(a, s), "y#", power_body(), {{"x#", a}});
}

GroundSet collect_phi(Session& s, const std::string& var, const FormulaEps& f,
                      const Env& params) {
  return compr(s, gimel(s.universe_set(), s), var, f, params);
}

GroundSet gamma(Session& s, const std::string& var, const FormulaEps& f, const Env& params) {
  // the set-defining hypothesis ∃x∀y(F → y ε x), with x a fresh name
  const std::string x = "x#g";
  FormulaEps bounded = eps_forall(var, eps_arrow(f, eps_member(nt_var(var), nt_var(x))));
  bool defines = false;
  for (GroundSet u : s.universe()) {
    if (s.force_report(bounded, with(params, x, u))) {
      defines = true;
      break;
    }
  }
  if (!defines) throw PreconditionError("not a set: no universe name contains every witness of " +
                                        f->text);
  GroundSet phi = collect_phi(s, x, bounded, params);
  return compr(s, big_union(s, phi), var, f, params);
}

GroundSet image_f(Session& s, const std::string& var, const NameTerm& f, GroundSet a,
                  const Env& params) {
  auto names = entry_names(a, s);
  if (!names) throw PreconditionError("image of a name whose entries cannot be enumerated");
  std::vector<Entry> entries;
  for (GroundSet b : *names) {
    GroundSet fb = s.eval(f, with(params, var, b));
    entries.push_back({fb, pattern_only(entry_stacks(b, a, s))});
  }
  return normalize(make_guarded(std::move(entries)), s);
}

GroundSet gimel(GroundSet e, GroundContext& ctx) {
  return normalize(GroundSet::times_pi(e), ctx);
}

GroundSet bool_op(BoolOp op, GroundSet a, GroundSet b) {
  bool x = require_boolean(a, "boolean operation") == boolean(true);
  if (op == BoolOp::Not) return boolean(!x);
  bool y = require_boolean(b, "boolean operation") == boolean(true);
  return boolean(op == BoolOp::And ? (x && y) : (x || y));
}

GroundSet scale(GroundSet alpha, GroundSet x) {
  return require_boolean(alpha, "scale") == boolean(true) ? x : GroundSet();
}

GroundSet join(GroundSet x, GroundSet y, GroundContext& ctx) {
  return set_union(expand(x, ctx), expand(y, ctx));
}

GroundSet mix(const std::vector<std::pair<GroundSet, GroundSet>>& parts, GroundContext& ctx) {
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (bool_op(BoolOp::And, parts[i].first, parts[j].first) != boolean(false))
        throw PreconditionError("mix masks are not pairwise disjoint");
  GroundSet out;
  for (const auto& [alpha, x] : parts) out = join(out, scale(alpha, x), ctx);
  return out;
}

GroundSet weak_choice_f(Session& s, const std::string& xvar, const std::string& yvar,
                        const FormulaEps& f, GroundSet x, GroundSet w, const Env& params) {
  const auto& u = s.universe();
  if (u.empty()) return GroundSet();
  if (w.is_atom()) {
    Env base = with(params, xvar, x);
    for (GroundSet y : u)
      if (s.truth_value(f, with(base, yvar, y)).contains(w.stack())) return y;
  }
  return u.front();
}

}  // namespace realiz
