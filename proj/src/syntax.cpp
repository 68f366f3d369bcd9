#include "realiz/syntax.hpp"

#include <algorithm>

#include "realiz/errors.hpp"

namespace realiz {

namespace {

using Vars = std::vector<std::string>;

Vars merge(Vars a, const Vars& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Vars without(Vars a, const Vars& bound) {
  a.erase(std::remove_if(a.begin(), a.end(),
                         [&](const std::string& v) {
                           return std::find(bound.begin(), bound.end(), v) != bound.end();
                         }),
          a.end());
  return a;
}

bool mentions(const Vars& vs, const std::string& v) {
  return std::binary_search(vs.begin(), vs.end(), v);
}

std::string join_args(const std::vector<NameTerm>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ',';
    out += args[i]->text;
  }
  return out;
}

struct SymbolInfo {
  std::string_view name;
  int arity;
};

constexpr SymbolInfo kSymbols[] = {
    {"kpair", 2},   {"sing", 1},     {"set", -2},    {"union", 2},  {"cl", 1},
    {"dom", 1},     {"gimel", 1},    {"subsetspi", 1}, {"band", 2}, {"bor", 2},
    {"bneg", 1},    {"scale", 2},    {"join", 2},    {"mix", -2},   {"pairc", 2},
    {"paird", 2},   {"vset", 1},     {"qset", 1},    {"unionbar", 1}, {"powbar", 1},
    {"stacks", 0},   {"psi", 0},
};

constexpr std::string_view kBinders[] = {"compr", "chi", "skolem", "image", "phi", "gamma",
                                         "wchoice"};

GroundSet fold_const(const std::string& symbol, const std::vector<NameTerm>& args, bool& ok) {
  ok = std::all_of(args.begin(), args.end(),
                   [](const NameTerm& a) { return a->kind == NameKind::Const; });
  if (!ok) return GroundSet();
  if (symbol == "set") {
    std::vector<GroundSet> es;
    for (const auto& a : args) es.push_back(a->value);
    return GroundSet::set(std::move(es));
  }
  if (symbol == "kpair") return kuratowski_pair(args[0]->value, args[1]->value);
  if (symbol == "gimel") return GroundSet::times_pi(args[0]->value);
  if (symbol == "subsetspi") return GroundSet::subsets_times_pi(args[0]->value);
  ok = false;
  return GroundSet();
}

}  // namespace

const GroundSet* env_lookup(const Env& env, std::string_view name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

int symbol_arity(std::string_view name) {
  for (const auto& s : kSymbols)
    if (s.name == name) return s.arity;
  return -1;
}

bool is_binder_symbol(std::string_view name) {
  return std::find(std::begin(kBinders), std::end(kBinders), name) != std::end(kBinders);
}

// ---------------------------------------------------------------------------
// Name terms

NameTerm nt_var(std::string name) {
  auto n = std::make_shared<NameTermNode>();
  n->kind = NameKind::Var;
  n->free = {name};
  n->text = name;
  n->name = std::move(name);
  return n;
}

NameTerm nt_const(GroundSet g) {
  auto n = std::make_shared<NameTermNode>();
  n->kind = NameKind::Const;
  n->value = g;
  n->text = print_ground(g);
  return n;
}

NameTerm nt_apply(std::string symbol, std::vector<NameTerm> args) {
  if (symbol == "pair") symbol = "kpair";
  if (symbol == "timespi") symbol = "gimel";
  int arity = symbol_arity(symbol);
  if (arity == -1) throw PreconditionError("unknown function symbol " + symbol);
  if (arity >= 0 && static_cast<std::size_t>(arity) != args.size())
    throw PreconditionError(symbol + " expects " + std::to_string(arity) + " arguments");
  bool ok = false;
  GroundSet folded = fold_const(symbol, args, ok);
  if (ok) return nt_const(folded);
  auto n = std::make_shared<NameTermNode>();
  n->kind = NameKind::Apply;
  for (const auto& a : args) n->free = merge(n->free, a->free);
  n->text = symbol == "set" ? "{" + join_args(args) + "}" : symbol + "(" + join_args(args) + ")";
  n->name = std::move(symbol);
  n->args = std::move(args);
  return n;
}

NameTerm nt_binder(std::string symbol, std::vector<std::string> binders, FormulaEps eps,
                   FormulaZF zf, NameTerm body, std::vector<NameTerm> args) {
  if (!is_binder_symbol(symbol)) throw PreconditionError("not a binder symbol: " + symbol);
  std::size_t want = 0;
  bool need_eps = false, need_zf = false, need_term = false;
  if (symbol == "compr") want = 1, need_eps = true;
  if (symbol == "chi") want = binders.size(), need_zf = true;
  if (symbol == "skolem") want = binders.size() - 1, need_zf = true;
  if (symbol == "image") want = 1, need_term = true;
  if (symbol == "phi" || symbol == "gamma") want = 0, need_eps = true;
  if (symbol == "wchoice") want = 2, need_eps = true;
  if (binders.empty()) throw PreconditionError(symbol + " needs a bound variable");
  if ((symbol == "compr" || symbol == "image" || symbol == "phi" || symbol == "gamma") &&
      binders.size() != 1)
    throw PreconditionError(symbol + " binds exactly one variable");
  if (symbol == "wchoice" && binders.size() != 2)
    throw PreconditionError("wchoice binds exactly two variables");
  if (args.size() != want)
    throw PreconditionError(symbol + " expects " + std::to_string(want) + " arguments");
  if ((need_eps && !eps) || (need_zf && !zf) || (need_term && !body))
    throw PreconditionError(symbol + " has the wrong kind of body");

  auto n = std::make_shared<NameTermNode>();
  n->kind = NameKind::Apply;
  Vars inner = eps ? eps->free : zf ? zf->free : body->free;
  n->free = without(inner, binders);
  for (const auto& a : args) n->free = merge(n->free, a->free);

  std::string bs;
  for (std::size_t i = 0; i < binders.size(); ++i) {
    if (i > 0) bs += (symbol == "skolem" && i + 1 == binders.size()) ? ";" : ",";
    bs += binders[i];
  }
  const std::string& body_text = eps ? eps->text : zf ? zf->text : body->text;
  n->text = symbol + "[" + bs + ". " + body_text + "](" + join_args(args) + ")";
  n->name = std::move(symbol);
  n->binders = std::move(binders);
  n->eps_body = std::move(eps);
  n->zf_body = std::move(zf);
  n->term_body = std::move(body);
  n->args = std::move(args);
  return n;
}

// ---------------------------------------------------------------------------
// Ground formulas

namespace {

std::string_view zf_op(ZfKind k) {
  switch (k) {
    case ZfKind::In: return " in ";
    case ZfKind::Eq: return " = ";
    case ZfKind::Less: return " < ";
    case ZfKind::Sub: return " <= ";
    case ZfKind::And: return " & ";
    case ZfKind::Or: return " or ";
    case ZfKind::Imp: return " -> ";
    case ZfKind::Iff: return " <-> ";
    default: return "";
  }
}

}  // namespace

FormulaZF zf_const(bool value) {
  auto n = std::make_shared<FormulaZFNode>();
  n->kind = value ? ZfKind::Top : ZfKind::Bot;
  n->text = value ? "top" : "bot";
  return n;
}

FormulaZF zf_atom(ZfKind kind, NameTerm lhs, NameTerm rhs) {
  auto n = std::make_shared<FormulaZFNode>();
  n->kind = kind;
  n->free = merge(lhs->free, rhs->free);
  n->text = "(" + lhs->text + std::string(zf_op(kind)) + rhs->text + ")";
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

FormulaZF zf_not(FormulaZF a) {
  auto n = std::make_shared<FormulaZFNode>();
  n->kind = ZfKind::Not;
  n->free = a->free;
  n->text = "not " + a->text;
  n->a = std::move(a);
  return n;
}

FormulaZF zf_binary(ZfKind kind, FormulaZF a, FormulaZF b) {
  auto n = std::make_shared<FormulaZFNode>();
  n->kind = kind;
  n->free = merge(a->free, b->free);
  n->text = "(" + a->text + std::string(zf_op(kind)) + b->text + ")";
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

FormulaZF zf_quant(ZfKind kind, std::string var, FormulaZF body, NameTerm bound) {
  auto n = std::make_shared<FormulaZFNode>();
  n->kind = kind;
  n->free = without(body->free, {var});
  std::string q = (kind == ZfKind::Forall || kind == ZfKind::ForallIn) ? "forall " : "exists ";
  if (bound) {
    n->free = merge(n->free, bound->free);
    n->text = "(" + q + var + " in " + bound->text + ". " + body->text + ")";
  } else {
    n->text = "(" + q + var + ". " + body->text + ")";
  }
  n->var = std::move(var);
  n->a = std::move(body);
  n->rhs = std::move(bound);
  return n;
}

// ---------------------------------------------------------------------------
// ZF_ε formulas

namespace {

std::string_view eps_op(EpsKind k) {
  switch (k) {
    case EpsKind::EpsNot: return " epsnot ";
    case EpsKind::NotIn: return " notin ";
    case EpsKind::Incl: return " subset ";
    case EpsKind::Simeq: return " simeq ";
    case EpsKind::StrongIncl: return " subseteq ";
    case EpsKind::Cong: return " cong ";
    default: return "";
  }
}

}  // namespace

FormulaEps eps_bot() {
  static const FormulaEps bot = [] {
    auto n = std::make_shared<FormulaEpsNode>();
    n->kind = EpsKind::Bot;
    n->text = "bot";
    return n;
  }();
  return bot;
}

FormulaEps eps_rel(EpsKind kind, NameTerm lhs, NameTerm rhs) {
  auto n = std::make_shared<FormulaEpsNode>();
  n->kind = kind;
  n->free = merge(lhs->free, rhs->free);
  n->text = "(" + lhs->text + std::string(eps_op(kind)) + rhs->text + ")";
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

FormulaEps eps_arrow(FormulaEps a, FormulaEps b) {
  auto n = std::make_shared<FormulaEpsNode>();
  n->kind = EpsKind::Arrow;
  n->free = merge(a->free, b->free);
  n->text = "(" + a->text + " -> " + b->text + ")";
  n->size = a->size + b->size + 1;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

FormulaEps eps_forall(std::string var, FormulaEps body) {
  auto n = std::make_shared<FormulaEpsNode>();
  n->kind = EpsKind::Forall;
  n->free = without(body->free, {var});
  n->text = "(forall " + var + ". " + body->text + ")";
  n->size = body->size + 1;
  n->var = std::move(var);
  n->a = std::move(body);
  return n;
}

FormulaEps eps_forall_in(std::string var, NameTerm domain, FormulaEps body) {
  auto n = std::make_shared<FormulaEpsNode>();
  n->kind = EpsKind::ForallIn;
  n->free = merge(without(body->free, {var}), domain->free);
  n->text = "(forall " + var + " : gimel(" + domain->text + "). " + body->text + ")";
  n->size = body->size + 1;
  n->var = std::move(var);
  n->rhs = std::move(domain);
  n->a = std::move(body);
  return n;
}

FormulaEps eps_hook(FormulaZF cond, FormulaEps body) {
  auto n = std::make_shared<FormulaEpsNode>();
  n->kind = EpsKind::Hook;
  n->free = merge(cond->free, body->free);
  n->text = "([" + cond->text + "] ~> " + body->text + ")";
  n->size = body->size + 1;
  n->cond = std::move(cond);
  n->a = std::move(body);
  return n;
}

FormulaEps eps_d(NameTerm alpha) {
  auto n = std::make_shared<FormulaEpsNode>();
  n->kind = EpsKind::D;
  n->free = alpha->free;
  n->text = "D(" + alpha->text + ")";
  n->size = 8;
  n->lhs = std::move(alpha);
  return n;
}

FormulaEps eps_not(FormulaEps a) { return eps_arrow(std::move(a), eps_bot()); }

FormulaEps eps_and(FormulaEps a, FormulaEps b) {
  return eps_not(eps_arrow(std::move(a), eps_not(std::move(b))));
}

FormulaEps eps_or(FormulaEps a, FormulaEps b) {
  return eps_arrow(eps_not(std::move(a)), eps_arrow(eps_not(std::move(b)), eps_bot()));
}

FormulaEps eps_iff(FormulaEps a, FormulaEps b) {
  return eps_and(eps_arrow(a, b), eps_arrow(b, a));
}

FormulaEps eps_exists(std::string var, FormulaEps body) {
  return eps_not(eps_forall(std::move(var), eps_not(std::move(body))));
}

FormulaEps eps_member(NameTerm lhs, NameTerm rhs) {
  return eps_not(eps_rel(EpsKind::EpsNot, std::move(lhs), std::move(rhs)));
}

FormulaEps eps_neq(NameTerm lhs, NameTerm rhs) {
  return eps_hook(zf_atom(ZfKind::Eq, std::move(lhs), std::move(rhs)), eps_bot());
}

FormulaEps eps_eq(NameTerm lhs, NameTerm rhs) { return eps_not(eps_neq(std::move(lhs), std::move(rhs))); }

FormulaEps unfold_d(const NameTerm& alpha) {
  // fresh names cannot clash: the parser never produces a trailing '#'
  const std::string X = "X#", x = "x#", y = "y#";
  NameTerm lt = nt_binder("chi", {"u#", "v#"}, nullptr,
                          zf_atom(ZfKind::Less, nt_var("u#"), nt_var("v#")), nullptr,
                          {nt_var(y), nt_var(x)});
  FormulaEps inner =
      eps_forall(y, eps_hook(zf_atom(ZfKind::Sub, alpha, lt),
                             eps_rel(EpsKind::EpsNot, nt_var(y), nt_var(X))));
  FormulaEps hyp = eps_forall(x, eps_arrow(inner, eps_rel(EpsKind::EpsNot, nt_var(x), nt_var(X))));
  FormulaEps concl = eps_forall(x, eps_rel(EpsKind::EpsNot, nt_var(x), nt_var(X)));
  return eps_forall(X, eps_arrow(hyp, concl));
}

std::size_t formula_size(const FormulaEps& f) { return f->size; }

// ---------------------------------------------------------------------------
// Substitution

namespace {

void check_capture(const std::vector<std::string>& binders, const NameTerm& t) {
  for (const auto& b : binders)
    if (mentions(t->free, b))
      throw PreconditionError("substitution would capture variable " + b);
}

}  // namespace

NameTerm substitute(const NameTerm& n, const std::string& var, const NameTerm& t) {
  if (!mentions(n->free, var)) return n;
  switch (n->kind) {
    case NameKind::Var:
      return t;
    case NameKind::Const:
      return n;
    case NameKind::Apply:
      break;
  }
  std::vector<NameTerm> args;
  for (const auto& a : n->args) args.push_back(substitute(a, var, t));
  if (!is_binder_symbol(n->name)) return nt_apply(n->name, std::move(args));
  bool bound = std::find(n->binders.begin(), n->binders.end(), var) != n->binders.end();
  if (bound)
    return nt_binder(n->name, n->binders, n->eps_body, n->zf_body, n->term_body, std::move(args));
  check_capture(n->binders, t);
  return nt_binder(n->name, n->binders, n->eps_body ? substitute(n->eps_body, var, t) : nullptr,
                   n->zf_body ? substitute(n->zf_body, var, t) : nullptr,
                   n->term_body ? substitute(n->term_body, var, t) : nullptr, std::move(args));
}

FormulaZF substitute(const FormulaZF& f, const std::string& var, const NameTerm& t) {
  if (!mentions(f->free, var)) return f;
  switch (f->kind) {
    case ZfKind::Bot:
    case ZfKind::Top:
      return f;
    case ZfKind::In:
    case ZfKind::Eq:
    case ZfKind::Less:
    case ZfKind::Sub:
      return zf_atom(f->kind, substitute(f->lhs, var, t), substitute(f->rhs, var, t));
    case ZfKind::Not:
      return zf_not(substitute(f->a, var, t));
    case ZfKind::And:
    case ZfKind::Or:
    case ZfKind::Imp:
    case ZfKind::Iff:
      return zf_binary(f->kind, substitute(f->a, var, t), substitute(f->b, var, t));
    case ZfKind::Forall:
    case ZfKind::Exists:
    case ZfKind::ForallIn:
    case ZfKind::ExistsIn: {
      NameTerm bound = f->rhs ? substitute(f->rhs, var, t) : nullptr;
      if (f->var == var) return zf_quant(f->kind, f->var, f->a, bound);
      check_capture({f->var}, t);
      return zf_quant(f->kind, f->var, substitute(f->a, var, t), bound);
    }
  }
  return f;
}

FormulaEps substitute(const FormulaEps& f, const std::string& var, const NameTerm& t) {
  if (!mentions(f->free, var)) return f;
  switch (f->kind) {
    case EpsKind::Bot:
      return f;
    case EpsKind::EpsNot:
    case EpsKind::NotIn:
    case EpsKind::Incl:
    case EpsKind::Simeq:
    case EpsKind::StrongIncl:
    case EpsKind::Cong:
      return eps_rel(f->kind, substitute(f->lhs, var, t), substitute(f->rhs, var, t));
    case EpsKind::Arrow:
      return eps_arrow(substitute(f->a, var, t), substitute(f->b, var, t));
    case EpsKind::Forall:
      if (f->var == var) return f;
      check_capture({f->var}, t);
      return eps_forall(f->var, substitute(f->a, var, t));
    case EpsKind::ForallIn: {
      NameTerm dom = substitute(f->rhs, var, t);
      if (f->var == var) return eps_forall_in(f->var, dom, f->a);
      check_capture({f->var}, t);
      return eps_forall_in(f->var, dom, substitute(f->a, var, t));
    }
    case EpsKind::Hook:
      return eps_hook(substitute(f->cond, var, t), substitute(f->a, var, t));
    case EpsKind::D:
      return eps_d(substitute(f->lhs, var, t));
  }
  return f;
}

FormulaClosure make_closure(const FormulaEps& f, const Env& env) {
  FormulaClosure c;
  c.formula = f;
  c.key = f->text;
  for (const auto& v : f->free) {
    const GroundSet* g = env_lookup(env, v);
    if (g == nullptr) throw PreconditionError("unbound variable " + v + " in " + f->text);
    c.env.emplace_back(v, *g);
    c.key += ";" + v + "=" + print_ground(*g);
  }
  return c;
}

}  // namespace realiz
