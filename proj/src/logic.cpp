#include "realiz/logic.hpp"

#include <algorithm>
#include <cstring>

#include "realiz/errors.hpp"

namespace realiz {

bool TruthValue::contains(const Stack& s) const {
  return std::binary_search(stacks.begin(), stacks.end(), s);
}

namespace {

constexpr std::size_t kTraceCap = 64;

std::uint64_t pack(std::uint64_t hi, std::uint64_t lo) { return (hi << 32) | lo; }

void sort_unique(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Env extend(const Env& env, const std::string& var, GroundSet value) {
  Env out = env;
  out.emplace_back(var, value);
  return out;
}

// Entry-name restricted definitions of the extensional relations. Each body
// is evaluated in a fresh environment binding a#, b# and the bound name.
FormulaEps tvar_rel(EpsKind k, const char* l, const char* r) {
  return eps_rel(k, nt_var(l), nt_var(r));
}

}  // namespace

Session::Session(std::vector<GroundSet> universe, TermPool pool, Pole pole)
    : pool_(std::move(pool)), pole_(std::move(pole)) {
  pool_.ensure_standard();
  pi_d_ = enumerate_stacks(pool_);
  std::sort(pi_d_.begin(), pi_d_.end());
  for (const auto& s : pi_d_) pi_ids_.push_back(intern(s));
  std::vector<GroundSet> atoms;
  for (const auto& s : pi_d_) atoms.push_back(GroundSet::atom(s));
  stacks_set_ = GroundSet::set(atoms);
  for (auto& u : universe) u = normalize(u, *this);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  universe_ = std::move(universe);
  universe_set_ = GroundSet::set(universe_);

  templates_["notin"] = eps_arrow(
      tvar_rel(EpsKind::Incl, "a#", "c#"),
      eps_arrow(tvar_rel(EpsKind::Incl, "c#", "a#"), tvar_rel(EpsKind::EpsNot, "c#", "b#")));
  templates_["incl"] =
      eps_arrow(tvar_rel(EpsKind::NotIn, "c#", "b#"), tvar_rel(EpsKind::EpsNot, "c#", "a#"));
  templates_["sincl"] =
      eps_arrow(tvar_rel(EpsKind::EpsNot, "c#", "b#"), tvar_rel(EpsKind::EpsNot, "c#", "a#"));
  templates_["simeq"] =
      eps_and(tvar_rel(EpsKind::Incl, "a#", "b#"), tvar_rel(EpsKind::Incl, "b#", "a#"));
  templates_["cong"] = eps_and(tvar_rel(EpsKind::StrongIncl, "a#", "b#"),
                               tvar_rel(EpsKind::StrongIncl, "b#", "a#"));
}

// ---------------------------------------------------------------------------
// Stack table

std::uint32_t Session::intern(const Stack& s) {
  auto it = stack_ids_.find(s);
  if (it != stack_ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(stacks_.size());
  stacks_.push_back(s);
  stack_depth_.push_back(static_cast<std::uint8_t>(std::min<std::size_t>(s.depth(), 255)));
  stack_ids_.emplace(s, id);
  return id;
}

std::uint32_t Session::push_id(std::size_t term_index, std::uint32_t stack) {
  auto key = pack(term_index, stack);
  auto it = push_memo_.find(key);
  if (it != push_memo_.end()) return it->second;
  Stack pushed = stacks_[stack].push(pool_.terms[term_index].second);
  auto id = intern(pushed);
  push_memo_.emplace(key, id);
  return id;
}

bool Session::pool_pole(std::size_t term_index, std::uint32_t stack) {
  auto key = pack(term_index, stack);
  auto it = pole_memo_.find(key);
  if (it != pole_memo_.end()) return it->second;
  ++stats_.pole_checks;
  bool r = pole_member(pole_, Process{pool_.terms[term_index].second, stacks_[stack]});
  pole_memo_.emplace(key, r);
  return r;
}

Session::IdSet Session::to_ids(const std::vector<Stack>& stacks) {
  IdSet out;
  out.reserve(stacks.size());
  for (const auto& s : stacks) out.push_back(intern(s));
  sort_unique(out);
  return out;
}

bool Session::in_pi_d(const Stack& s) const {
  auto it = stack_ids_.find(s);
  return it != stack_ids_.end() && it->second < pi_d_.size();
}

// ---------------------------------------------------------------------------
// Truth values

std::string Session::memo_key(const void* node, const std::vector<std::string>& free,
                              const Env& env) {
  std::string key(sizeof node, '\0');
  std::memcpy(key.data(), &node, sizeof node);
  for (const auto& v : free) {
    const GroundSet* g = env_lookup(env, v);
    if (!g) throw PreconditionError("unbound variable " + v);
    std::size_t id = g->id();
    key.append(reinterpret_cast<const char*>(&id), sizeof id);
  }
  return key;
}

const Session::IdSet& Session::tv(const FormulaEps& f, const Env& env) {
  std::string key = memo_key(f.get(), f->free, env);
  auto it = tv_memo_.find(key);
  if (it != tv_memo_.end()) return it->second;
  if (!in_progress_.insert(key).second)
    throw CycleError("truth value depends on itself: " + f->text);
  Frame frame(*this);
  ++stats_.truth_evaluations;
  if (pinned_.insert(f.get()).second) pins_.push_back(f);
  IdSet value;
  try {
    value = tv_compute(f, env);
  } catch (...) {
    in_progress_.erase(key);
    throw;
  }
  in_progress_.erase(key);
  return tv_memo_.emplace(std::move(key), std::move(value)).first->second;
}

Session::IdSet Session::tv_compute(const FormulaEps& f, const Env& env) {
  switch (f->kind) {
    case EpsKind::Bot:
      return pi_ids_;
    case EpsKind::EpsNot: {
      GroundSet a = eval(f->lhs, env);
      GroundSet b = eval(f->rhs, env);
      return to_ids(entry_stacks(a, b, *this));
    }
    case EpsKind::Arrow: {
      std::vector<std::size_t> xs = realizer_indices(f->a, env);
      IdSet g = tv(f->b, env);
      IdSet out;
      for (auto p : g) {
        if (stack_depth_[p] >= pool_.depth) continue;
        for (auto x : xs) out.push_back(push_id(x, p));
      }
      sort_unique(out);
      return out;
    }
    case EpsKind::Forall:
    case EpsKind::ForallIn: {
      std::vector<GroundSet> dom;
      if (f->kind == EpsKind::Forall) {
        dom = universe_;
      } else {
        dom = ground_elements(eval(f->rhs, env), *this);
      }
      IdSet out;
      for (GroundSet u : dom) {
        const IdSet& part = tv(f->a, extend(env, f->var, u));
        out.insert(out.end(), part.begin(), part.end());
      }
      sort_unique(out);
      return out;
    }
    case EpsKind::Hook:
      if (m_models(f->cond, env)) return tv(f->a, env);
      return {};
    case EpsKind::D: {
      auto it = unfolded_.find(f.get());
      if (it == unfolded_.end()) it = unfolded_.emplace(f.get(), unfold_d(f->lhs)).first;
      return tv(it->second, env);
    }
    default:
      return tv_derived(f, env);
  }
}

Session::IdSet Session::tv_derived(const FormulaEps& f, const Env& env) {
  GroundSet a = eval(f->lhs, env);
  GroundSet b = eval(f->rhs, env);
  Env local{{"a#", a}, {"b#", b}};
  auto over = [&](const FormulaEps& body, GroundSet source) {
    IdSet out;
    for (GroundSet c : entry_domain(source)) {
      const IdSet& part = tv(body, extend(local, "c#", c));
      out.insert(out.end(), part.begin(), part.end());
    }
    sort_unique(out);
    return out;
  };
  switch (f->kind) {
    case EpsKind::NotIn:
      return over(templates_.at("notin"), b);
    case EpsKind::Incl:
      return over(templates_.at("incl"), a);
    case EpsKind::StrongIncl:
      return over(templates_.at("sincl"), a);
    case EpsKind::Simeq:
      return tv(templates_.at("simeq"), local);
    case EpsKind::Cong:
      return tv(templates_.at("cong"), local);
    default:
      throw PreconditionError("unexpected formula node: " + f->text);
  }
}

std::vector<GroundSet> Session::entry_domain(GroundSet a) {
  auto names = entry_names(a, *this);
  if (names) return *names;
  return universe_;
}

const std::vector<std::size_t>& Session::realizer_indices(const FormulaEps& f, const Env& env) {
  std::string key = "R" + memo_key(f.get(), f->free, env);
  auto it = realizer_memo_.find(key);
  if (it != realizer_memo_.end()) return it->second;
  IdSet value = tv(f, env);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pool_.terms.size(); ++i) {
    bool ok = true;
    for (auto p : value) {
      if (!pool_pole(i, p)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(i);
  }
  return realizer_memo_.emplace(std::move(key), std::move(out)).first->second;
}

std::vector<Term> Session::realizers_of(const FormulaClosure& c) {
  std::vector<Term> out;
  for (auto i : realizer_indices(c.formula, c.env)) out.push_back(pool_.terms[i].second);
  return out;
}

TruthValue Session::truth_value(const FormulaEps& f, const Env& env) {
  TruthValue out;
  for (auto id : tv(f, env)) out.stacks.push_back(stacks_[id]);
  std::sort(out.stacks.begin(), out.stacks.end());
  return out;
}

Verdict Session::realizes(const Term& xi, const FormulaEps& f, const Env& env) {
  TruthValue value = truth_value(f, env);
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < pool_.terms.size(); ++i)
    if (term_equal(pool_.terms[i].second, xi)) index = i;
  Verdict v;
  for (const auto& s : value.stacks) {
    ++v.tests;
    bool in = index ? pool_pole(*index, intern(s)) : pole_member(pole_, Process{xi, s});
    if (!in) {
      v.kind = Verdict::Kind::Refuted;
      v.stack = s;
      v.trace = run(Process{xi, s}, kTraceCap).trace;
      return v;
    }
  }
  return v;
}

std::optional<Term> Session::force_report(const FormulaEps& f, const Env& env) {
  const auto& xs = realizer_indices(f, env);
  for (auto i : xs)
    if (is_proof_like(pool_.terms[i].second)) return pool_.terms[i].second;
  return std::nullopt;
}

}  // namespace realiz
