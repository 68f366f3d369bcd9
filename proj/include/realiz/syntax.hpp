#pragma once

// Abstract syntax for name terms, ground (ZF) formulas and ZF_ε formulas.
//
// ZF_ε formulas are kept in the primitive language ⊥, ε̸, →, ∀, ∀^{ℷE}, ↪ and
// D[·]. The extensional relations ∉, ⊂, ≃ and the strong relations ⊆, ≅ stay as
// nodes because their defining quantifier is evaluated over the entry names of
// the right-hand side. Everything else is sugar removed by the parser.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realiz/ground.hpp"

namespace realiz {

struct NameTermNode;
struct FormulaZFNode;
using NameTerm = std::shared_ptr<const NameTermNode>;
using FormulaZF = std::shared_ptr<const FormulaZFNode>;
using FormulaEps = std::shared_ptr<const FormulaEpsNode>;

using Env = std::vector<std::pair<std::string, GroundSet>>;

/// Looks a variable up, innermost binding first.
const GroundSet* env_lookup(const Env& env, std::string_view name);

// ---------------------------------------------------------------------------
// Name terms

enum class NameKind : std::uint8_t { Var, Const, Apply };

struct NameTermNode {
  NameKind kind = NameKind::Var;
  std::string name;  // variable or symbol
  GroundSet value;   // Const
  std::vector<NameTerm> args;
  // binder symbols (compr, chi, skolem, image, phi, gamma, wchoice)
  std::vector<std::string> binders;
  FormulaEps eps_body;
  FormulaZF zf_body;
  NameTerm term_body;

  std::vector<std::string> free;  // sorted free variables
  std::string text;               // canonical rendering
};

NameTerm nt_var(std::string name);
NameTerm nt_const(GroundSet g);
NameTerm nt_apply(std::string symbol, std::vector<NameTerm> args);
NameTerm nt_binder(std::string symbol, std::vector<std::string> binders, FormulaEps eps,
                   FormulaZF zf, NameTerm body, std::vector<NameTerm> args);

// ---------------------------------------------------------------------------
// Ground formulas, evaluated in the finite model M

enum class ZfKind : std::uint8_t {
  Bot, Top, In, Eq, Less, Sub, Not, And, Or, Imp, Iff, Forall, Exists, ForallIn, ExistsIn
};

struct FormulaZFNode {
  ZfKind kind = ZfKind::Bot;
  NameTerm lhs, rhs;  // atoms; rhs is the bound for ForallIn/ExistsIn
  FormulaZF a, b;
  std::string var;
  std::vector<std::string> free;
  std::string text;
};

FormulaZF zf_const(bool value);
FormulaZF zf_atom(ZfKind kind, NameTerm lhs, NameTerm rhs);
FormulaZF zf_not(FormulaZF a);
FormulaZF zf_binary(ZfKind kind, FormulaZF a, FormulaZF b);
FormulaZF zf_quant(ZfKind kind, std::string var, FormulaZF body, NameTerm bound = nullptr);

// ---------------------------------------------------------------------------
// ZF_ε formulas

enum class EpsKind : std::uint8_t {
  Bot,
  EpsNot,     // lhs ε̸ rhs
  Arrow,      // a → b
  Forall,     // ∀var a, over the universe
  ForallIn,   // ∀var^{ℷ rhs} a, over the ground elements of rhs
  Hook,       // cond ↪ a
  D,          // D[lhs]
  NotIn,      // lhs ∉ rhs
  Incl,       // lhs ⊂ rhs
  Simeq,      // lhs ≃ rhs
  StrongIncl, // lhs ⊆ rhs
  Cong        // lhs ≅ rhs
};

struct FormulaEpsNode {
  EpsKind kind = EpsKind::Bot;
  NameTerm lhs, rhs;
  FormulaEps a, b;
  FormulaZF cond;
  std::string var;
  std::vector<std::string> free;
  std::string text;
  std::size_t size = 1;
};

FormulaEps eps_bot();
FormulaEps eps_rel(EpsKind kind, NameTerm lhs, NameTerm rhs);
FormulaEps eps_arrow(FormulaEps a, FormulaEps b);
FormulaEps eps_forall(std::string var, FormulaEps body);
FormulaEps eps_forall_in(std::string var, NameTerm domain, FormulaEps body);
FormulaEps eps_hook(FormulaZF cond, FormulaEps body);
FormulaEps eps_d(NameTerm alpha);

// Derived connectives, as the parser builds them.
FormulaEps eps_not(FormulaEps a);
FormulaEps eps_and(FormulaEps a, FormulaEps b);
FormulaEps eps_or(FormulaEps a, FormulaEps b);
FormulaEps eps_iff(FormulaEps a, FormulaEps b);
FormulaEps eps_exists(std::string var, FormulaEps body);
FormulaEps eps_member(NameTerm lhs, NameTerm rhs);  // lhs ε rhs
FormulaEps eps_neq(NameTerm lhs, NameTerm rhs);     // [lhs = rhs] ↪ ⊥
FormulaEps eps_eq(NameTerm lhs, NameTerm rhs);      // ¬(lhs ≠ rhs)

/// D[α] unfolded: ∀X(∀x(∀y([⟨y<x⟩ ≥ α] ↪ y ε̸ X) → x ε̸ X) → ∀x x ε̸ X).
FormulaEps unfold_d(const NameTerm& alpha);

/// Replaces free occurrences of a variable by a term.
FormulaEps substitute(const FormulaEps& f, const std::string& var, const NameTerm& t);
FormulaZF substitute(const FormulaZF& f, const std::string& var, const NameTerm& t);
NameTerm substitute(const NameTerm& n, const std::string& var, const NameTerm& t);

/// Counts connectives, for the memo and recursion guard.
std::size_t formula_size(const FormulaEps& f);

// ---------------------------------------------------------------------------
// Parsing and printing

/// Named ground constants usable in formulas (e.g. "a" -> {0,1}).
using Constants = std::vector<std::pair<std::string, GroundSet>>;

NameTerm parse_name_term(std::string_view text, const Constants* constants = nullptr);
FormulaZF parse_zf(std::string_view text, const Constants* constants = nullptr);
FormulaEps parse_eps(std::string_view text, const Constants* constants = nullptr);

inline const std::string& print(const NameTerm& t) { return t->text; }
inline const std::string& print(const FormulaZF& f) { return f->text; }
inline const std::string& print(const FormulaEps& f) { return f->text; }

/// Formula instance with the given environment restricted to its free variables.
FormulaClosure make_closure(const FormulaEps& f, const Env& env);

/// Symbols with fixed arity (binder symbols are listed separately).
int symbol_arity(std::string_view name);  // -1 when unknown; -2 for variadic
bool is_binder_symbol(std::string_view name);

}  // namespace realiz
