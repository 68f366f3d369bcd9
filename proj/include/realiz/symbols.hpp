#pragma once

// Function symbols as constructors of names. Results are normalized: symbolic
// shapes that can be enumerated come back as canonical sets.

#include <string>
#include <utility>
#include <vector>

#include "realiz/logic.hpp"

namespace realiz {

/// {y ε a ; F[y, params]}: entries (b, ξ·π) for (b, π) ∈ a and pool ξ ⊩ F[b].
GroundSet compr(Session& s, GroundSet a, const std::string& var, const FormulaEps& f,
                const Env& params = {});

/// {(x, 1̲·π)} ∪ {(y, 0̲·π)}.
GroundSet pair_direct(GroundSet x, GroundSet y, GroundContext& ctx);
/// {z ε {x,y}×Π ; z = x ∨ z = y}.
GroundSet pair_c(Session& s, GroundSet x, GroundSet y);

/// V(a) = Cl(a) × Π.
GroundSet v_of(GroundSet a, GroundContext& ctx);
/// Q(a) = P(Cl(a) × Π) × Π, kept symbolic.
GroundSet q_of(GroundSet a, GroundContext& ctx);
/// ⋃̄a = {z ε V(a) ; (∃y ε a) z ε y}.
GroundSet big_union(Session& s, GroundSet a);
/// P̄(a) = {y ε Q(a) ; y ⊆ a}.
GroundSet power(Session& s, GroundSet a);

/// φ_F = {x ε Ψ × Π ; F}, with Ψ the whole universe.
GroundSet collect_phi(Session& s, const std::string& var, const FormulaEps& f,
                      const Env& params = {});
/// γ_F = {y ; F}. Raises PreconditionError ("not a set") when no universe
/// name is shown to contain every F-witness.
GroundSet gamma(Session& s, const std::string& var, const FormulaEps& f, const Env& params = {});
/// {f(x) ; x ε a}: entries (f(b), π) for (b, π) ∈ a.
GroundSet image_f(Session& s, const std::string& var, const NameTerm& f, GroundSet a,
                  const Env& params = {});

/// ℷe = e × Π.
GroundSet gimel(GroundSet e, GroundContext& ctx);

enum class BoolOp : std::uint8_t { And, Or, Not };
/// Truth tables on the ground booleans 0 = ∅ and 1 = {∅}.
GroundSet bool_op(BoolOp op, GroundSet a, GroundSet b = GroundSet());
/// 0x = ∅, 1x = x.
GroundSet scale(GroundSet alpha, GroundSet x);
/// x ⊔ y = x ∪ y.
GroundSet join(GroundSet x, GroundSet y, GroundContext& ctx);
/// ⊔ of α_i x_i; the masks must be pairwise disjoint.
GroundSet mix(const std::vector<std::pair<GroundSet, GroundSet>>& parts, GroundContext& ctx);

/// f(x, ϖ): the least universe y with ϖ ∈ ‖F(x, y)‖, or the least element.
GroundSet weak_choice_f(Session& s, const std::string& xvar, const std::string& yvar,
                        const FormulaEps& f, GroundSet x, GroundSet w, const Env& params = {});

/// Closure of F over params, leaving var unbound.
FormulaClosure partial_closure(const FormulaEps& f, const std::string& var, const Env& params);

}  // namespace realiz
