#pragma once

// The quotient structure M_D at ground scale: ∈_D and =_D, the translation
// of ground formulas into "M_D ⊨ F", the Łoś-style harness, elementarity
// against M and the collapse onto a transitive set.
//
// With standard booleans only, D⟨F⟩ reduces to ⟨F⟩ = 1, so agreement between
// M and M_D is semantically forced; these checks exercise the machinery.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "realiz/logic.hpp"
#include "realiz/wf.hpp"

namespace realiz {

class MDStructure {
 public:
  /// x ∈_D y ≡ D[⟨x ∈ y⟩] and x =_D y ≡ D[⟨x = y⟩] over the session universe.
  explicit MDStructure(Session& s);
  /// Test fixture: ∈_D given by explicit (x, y) index pairs, =_D the identity.
  MDStructure(Session& s, const std::vector<std::pair<std::size_t, std::size_t>>& in_edges);

  Session& session() const { return *s_; }
  const std::vector<GroundSet>& universe() const { return s_->universe(); }
  std::size_t size() const { return universe().size(); }

  bool in_D(std::size_t x, std::size_t y) const { return in_[x][y]; }
  bool eq_D(std::size_t x, std::size_t y) const { return eq_[x][y]; }
  std::optional<std::size_t> index(GroundSet x) const;

  /// preds[i] lists the j with j ∈_D i.
  RelationGraph in_graph() const;

  /// f_G(args) for G = ∀y H, the least falsifying y of H, cached per instance.
  GroundSet skolem(const FormulaZF& forall_g, const Env& env);

  /// D[α] for a ground boolean α, cached.
  bool d(GroundSet alpha);

 private:
  Session* s_;
  std::vector<std::vector<bool>> in_, eq_;
  std::map<std::string, GroundSet> skolem_cache_;
  std::map<std::size_t, bool> d_cache_;
};

/// "M_D ⊨ F" for F over ⊥, ⊤, ∈, =, ¬, ∧, ∨, →, ⟷, ∀, ∃ and bounded
/// quantifiers. Atoms become D[⟨·⟩]; the other connectives are rewritten
/// through → and ⊥ first. Throws PreconditionError on < and ⊆.
FormulaEps md_translate(const FormulaZF& f);

/// Truth of a translated formula in M_D: ⊥, →, ∀ over the universe, D[α].
bool md_holds(MDStructure& md, const FormulaEps& f, const Env& env = {});

struct LosReport {
  bool ok = true;
  std::string failing;          // first subformula where the sides disagree
  std::size_t instances = 0;    // subformula instances compared
  std::size_t skolem_checks = 0;
  std::optional<std::string> forward, backward;  // force_report witnesses, when sampled
};

/// (M_D ⊨ F[args]) ⟺ D⟨F[args]⟩ on every subformula instance, plus the
/// Skolem law ⟨∀y G⟩ = ⟨G[f_G]⟩ on each universal subformula. With `force`,
/// searches pool realizers of both implications.
LosReport los_check(MDStructure& md, const FormulaZF& f, const Env& args = {}, bool force = false);

struct ElementarityRecord {
  std::string sentence;
  bool m_value = false;
  bool md_value = false;
  bool agree() const { return m_value == md_value; }
};

/// m_models(F) against md_holds(md_translate(F)) for closed sentences.
std::vector<ElementarityRecord> elementarity_suite(MDStructure& md,
                                                   const std::vector<std::string>& corpus);

/// Regression corpus of closed ground sentences.
const std::vector<std::string>& md_corpus();

/// Reads one sentence per line, skipping blanks and lines starting with '#'.
std::vector<std::string> read_corpus(const std::string& path);

struct CollapseTable {
  std::vector<std::size_t> class_of;  // universe index → class representative
  std::vector<GroundSet> image;       // universe index → Φ(x)
  GroundSet image_set() const;        // {Φ(x)}
};

/// Φ(x) = {Φ(y) : y ∈_D x}. Throws NotWellFoundedError when ∈_D has a cycle
/// and ExtensionalityError when two =_D classes share their ∈_D members.
CollapseTable collapse_phi(const MDStructure& md);

struct CollapseCheck {
  bool transitive = true;
  bool injective = true;          // on =_D classes
  bool preserves_membership = true;  // y ∈_D x → Φ(y) ∈ Φ(x)
  bool onto_members = true;       // z ∈ Φ(x) → z = Φ(y) for some y ∈_D x
  bool ordinals_preserved = true;  // ∈_D ordinals go to von Neumann ordinals, in order
  bool ok() const {
    return transitive && injective && preserves_membership && onto_members && ordinals_preserved;
  }
};

CollapseCheck verify_collapse(const MDStructure& md, const CollapseTable& t);

/// ∈_D is well founded on the universe.
bool wf_check_mD(const MDStructure& md);

/// =_D is an equivalence and ∈_D respects it.
bool eq_congruence_holds(const MDStructure& md);

}  // namespace realiz
