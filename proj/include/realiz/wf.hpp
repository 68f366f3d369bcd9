#pragma once

// Well-foundedness in the truncated model: relation graphs over a finite
// universe, the induction realizer, ranks, the ultrafilter D and the
// constructions used in its proofs.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "realiz/logic.hpp"

namespace realiz {

/// A binary relation x ≺ y on names. Formula-based kinds read R with free
/// variables x and y, meaning x ≺ y.
struct RelationSpec {
  enum class Kind : std::uint8_t { Eps, In, LessAlpha, CharRel, DirectSum, DRel, Explicit };
  Kind kind = Kind::Eps;
  GroundSet alpha;   // LessAlpha and CharRel threshold (a ground boolean)
  FormulaZF rel;     // CharRel, DRel base
  std::shared_ptr<const RelationSpec> r0, r1;  // DirectSum copies 0 and 1; r0 is a DRel base without rel
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // Explicit: (x, y) universe indices

  static RelationSpec eps();
  static RelationSpec in();
  static RelationSpec less_alpha(GroundSet alpha);
  static RelationSpec char_rel(FormulaZF rel, GroundSet alpha);
  static RelationSpec direct_sum(RelationSpec r0, RelationSpec r1);
  static RelationSpec d_rel(FormulaZF base);
  static RelationSpec d_rel(RelationSpec base);
  static RelationSpec explicit_edges(std::vector<std::pair<std::size_t, std::size_t>> edges);
};

/// `eps | in | less(alpha) | chi(R, alpha) | dsum(R) | drel(R)`, with alpha 0 or 1.
RelationSpec parse_relation(std::string_view text);
std::string print_relation(const RelationSpec& r);

/// preds[i] lists the j with nodes[j] ≺ nodes[i].
struct RelationGraph {
  std::vector<GroundSet> nodes;
  std::vector<std::vector<std::size_t>> preds;
  std::size_t edge_count() const;
};

/// The edge graph of rel over the universe. DirectSum ranges over the pairs
/// (α, a) for α ∈ {0, 1} and a in the universe.
RelationGraph relation_graph(const RelationSpec& rel, Session& s,
                             const std::vector<GroundSet>& universe);
RelationGraph relation_graph(const RelationSpec& rel, Session& s);

struct WfResult {
  bool wellfounded = false;
  std::vector<std::size_t> order;  // topological, predecessors first, when well founded
  std::vector<std::size_t> cycle;  // x0 ≺ x1 ≺ … ≺ x0 otherwise
};

WfResult is_wellfounded(const RelationGraph& g);

/// Every nonempty subset of the nodes has a ≺-minimal element. Exhaustive,
/// at most 20 nodes.
bool minimal_element_scheme(const RelationGraph& g);

/// R(x, y) as a ground formula, when rel has one.
std::optional<FormulaZF> relation_formula(const RelationSpec& rel);

/// ∀X(∀x(∀y([y ≺ x] ↪ y ε̸ X) → x ε̸ X) → ∀x x ε̸ X).
FormulaEps induction_formula(const FormulaZF& rel);

/// realizes(t, induction_formula(rel)), with t = Y by default.
Verdict check_induction_realizer(Session& s, const RelationSpec& rel,
                                 const Term& realizer = turing_y());

/// Rank tables map node i to the von Neumann ordinal of its rank.
struct RankTable {
  std::vector<GroundSet> nodes;
  std::vector<std::size_t> rank;
  GroundSet ordinal(std::size_t i) const { return nat(rank[i]); }
  std::optional<std::size_t> find(GroundSet x) const;
};

/// Rk(x) = {Rk(y) : y ≺⁺ x}, the least ordinal above every predecessor's
/// rank. Throws NotWellFoundedError with the witness when g is not well founded.
RankTable rank_fn(const RelationGraph& g);

/// Rk(x) = {Rk(y) : y ≺⁺ x} for every x, ≺⁺ the transitive closure.
bool rank_fixpoint_holds(const RelationGraph& g, const RankTable& t);

struct MonotoneReport {
  bool ok = true;
  std::optional<std::size_t> violation;  // first x with Rk0(x) > Rk1(f(x))
  std::string message;
};

/// Rk0(x) ≤ Rk1(f(x)) for every x, with f given as node indices of g1.
/// Throws PreconditionError when f does not carry g0 edges to g1 edges.
MonotoneReport rank_monotone_check(const RelationGraph& g0, const RelationGraph& g1,
                                   const std::vector<std::size_t>& f);

/// D[α] at ground scale: ⟨y<x⟩ ≥ α is well founded on the universe.
bool decide_D(GroundSet alpha, Session& s);

struct MixWitness {
  GroundSet c;
  GroundSet c0;
};

/// C = {αx ⊔ βy ; x ε A, y ε B}, c0 = αa0 ⊔ βb0. An entry of C carries the
/// stack of its B-entry when β = 1 and of its A-entry otherwise.
MixWitness mix_witness(GroundSet alpha, GroundSet beta, GroundSet a, GroundSet a0, GroundSet b,
                       GroundSet b0, Session& s);

/// Some entry name x of a has no entry name y of a with ⟨y<x⟩ ≥ α.
bool has_minimal_entry(GroundSet a, GroundSet alpha, Session& s);

/// ⟨(α′,a′) ⊏⊏ (α,a)⟩ = (¬α′∧α) ∨ (¬α′∧¬α∧⟨a′<a⟩) ∨ (α′∧α∧⟨a′⊏a⟩).
/// Throws PreconditionError when base has a cycle on the universe.
GroundSet direct_sum_char(const FormulaZF& base, GroundSet alpha1, GroundSet a1, GroundSet alpha,
                          GroundSet a, Session& s);

/// The ⊏⊏ relation over {0,1} × universe for a ground base relation.
RelationSpec direct_sum(const FormulaZF& base, Session& s);

/// Largest rank-image ordinal of a well-founded strict order on the entry
/// names of a. Throws ResourceError beyond five entry names.
std::size_t kappa0(GroundSet a, Session& s);

}  // namespace realiz
