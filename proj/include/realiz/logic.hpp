#pragma once

// Evaluation sessions: the finite ground model M over a name universe, the
// truncated truth values ‖F‖ and the pool-relative realizability check ξ ⊩ F.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "realiz/errors.hpp"
#include "realiz/ground.hpp"
#include "realiz/kam.hpp"
#include "realiz/syntax.hpp"

namespace realiz {

/// A truncated truth value: a finite set of stacks, sorted.
struct TruthValue {
  std::vector<Stack> stacks;

  std::size_t size() const { return stacks.size(); }
  bool empty() const { return stacks.empty(); }
  bool contains(const Stack& s) const;
  friend bool operator==(const TruthValue& a, const TruthValue& b) { return a.stacks == b.stacks; }
  friend bool operator!=(const TruthValue& a, const TruthValue& b) { return !(a == b); }
};

/// Outcome of a realizer check.
struct Verdict {
  enum class Kind : std::uint8_t { Refuted, Validated };
  Kind kind = Kind::Validated;
  std::optional<Stack> stack;    // Refuted: a stack of ‖F‖ outside the pole
  std::vector<Process> trace;    // Refuted: prefix of the failing run
  std::size_t tests = 0;         // stacks examined

  bool refuted() const { return kind == Kind::Refuted; }
  bool validated() const { return kind == Kind::Validated; }
};

/// How the name universe is generated.
struct UniverseSpec {
  enum class Strategy : std::uint8_t { Exhaustive, Seeded };
  Strategy strategy = Strategy::Exhaustive;
  std::size_t rank = 3;                 // exhaustive: sets of rank < rank
  std::vector<GroundSet> seeds;         // seeded
  std::vector<SeedOp> ops{SeedOp::Singleton, SeedOp::Pair};
  std::size_t pure_ceiling = 4096;      // pure part cap
  std::size_t gimel_names = 2;          // ℷx for the first pure sets x
  std::size_t random_names = 2;         // names with seeded random entries
  double entry_density = 0.5;           // chance that a stack joins a random entry
  std::size_t max_names = 64;           // whole-universe cap
  std::uint64_t seed = 1;
};

/// Pure part, then ℷx names, then random entry names; sorted and deduplicated.
std::vector<GroundSet> build_universe(const UniverseSpec& spec, const std::vector<Stack>& pi_d);

struct StackHasher {
  std::size_t operator()(const Stack& s) const { return s.hash(); }
};

/// Resource accounting of a session.
struct SessionStats {
  std::size_t truth_evaluations = 0;
  std::size_t pole_checks = 0;
  std::size_t max_depth = 0;
};

/// One evaluation context: a frozen universe, a term pool, its truncated Π_d
/// and a pole. Memo tables live here and are never shared between sessions.
class Session : public GroundContext {
 public:
  Session(std::vector<GroundSet> universe, TermPool pool, Pole pole);

  // GroundContext
  const std::vector<Stack>& pi_d() const override { return pi_d_; }
  std::size_t depth_bound() const override { return pool_.depth; }
  std::vector<Term> realizers_of(const FormulaClosure& c) override;
  bool in_pi_d(const Stack& s) const override;

  const std::vector<GroundSet>& universe() const { return universe_; }
  /// The universe as a ground set (the collection surrogate Ψ).
  GroundSet universe_set() const { return universe_set_; }
  /// The atoms of Π_d as a ground set.
  GroundSet stacks_set() const { return stacks_set_; }
  const TermPool& pool() const { return pool_; }
  const Pole& pole() const { return pole_; }
  const SessionStats& stats() const { return stats_; }

  /// Recursion bound for names and formulas.
  std::size_t max_depth = 4000;

  // ---- the ground model M
  GroundSet eval(const NameTerm& t, const Env& env = {});
  bool m_models(const FormulaZF& f, const Env& env = {});
  /// ⟨R(args)⟩ as a ground boolean.
  GroundSet char_eval(const FormulaZF& r, const std::vector<std::string>& vars,
                      const std::vector<GroundSet>& args, const Env& env = {});
  /// Skolem function f_F: the least y falsifying F[args, y], or the least
  /// universe element when F holds everywhere.
  GroundSet skolem_select(const FormulaZF& f, const std::vector<std::string>& vars,
                          const std::string& y, const std::vector<GroundSet>& args,
                          const Env& env = {});
  /// The least y satisfying F[args, y], or the least universe element.
  GroundSet least_witness(const FormulaZF& f, const std::vector<std::string>& vars,
                          const std::string& y, const std::vector<GroundSet>& args,
                          const Env& env = {});

  // ---- truth values and realizers
  TruthValue truth_value(const FormulaEps& f, const Env& env = {});
  Verdict realizes(const Term& xi, const FormulaEps& f, const Env& env = {});
  /// First proof-like pool term realizing F.
  std::optional<Term> force_report(const FormulaEps& f, const Env& env = {});
  /// Names b that may have entries in a: entry names, or the universe when
  /// they cannot be enumerated.
  std::vector<GroundSet> entry_domain(GroundSet a);

 private:
  using IdSet = std::vector<std::uint32_t>;
  // Depth guard for the mutually recursive evaluators.
  struct Frame {
    Session& s;
    explicit Frame(Session& session) : s(session) {
      if (++s.depth_ > s.max_depth) {
        --s.depth_;
        throw CycleError("evaluation depth exceeds " + std::to_string(s.max_depth));
      }
      if (s.depth_ > s.stats_.max_depth) s.stats_.max_depth = s.depth_;
    }
    ~Frame() { --s.depth_; }
    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;
  };

  std::uint32_t intern(const Stack& s);
  std::uint32_t push_id(std::size_t term_index, std::uint32_t stack);
  bool pool_pole(std::size_t term_index, std::uint32_t stack);
  IdSet to_ids(const std::vector<Stack>& stacks);

  const IdSet& tv(const FormulaEps& f, const Env& env);
  IdSet tv_compute(const FormulaEps& f, const Env& env);
  IdSet tv_derived(const FormulaEps& f, const Env& env);
  const std::vector<std::size_t>& realizer_indices(const FormulaEps& f, const Env& env);
  std::string memo_key(const void* node, const std::vector<std::string>& free, const Env& env);
  GroundSet eval_apply(const NameTerm& t, const Env& env);
  GroundSet eval_binder(const NameTerm& t, const Env& env);
  bool zf_compare(const FormulaZF& f, const Env& env);

  std::vector<GroundSet> universe_;
  GroundSet universe_set_;
  GroundSet stacks_set_;
  TermPool pool_;
  Pole pole_;
  std::vector<Stack> pi_d_;

  std::vector<Stack> stacks_;
  std::vector<std::uint8_t> stack_depth_;
  std::unordered_map<Stack, std::uint32_t, StackHasher> stack_ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> push_memo_;
  std::unordered_map<std::uint64_t, bool> pole_memo_;
  IdSet pi_ids_;

  std::unordered_map<std::string, IdSet> tv_memo_;
  std::unordered_map<std::string, std::vector<std::size_t>> realizer_memo_;
  std::unordered_map<std::string, GroundSet> eval_memo_;
  std::unordered_set<std::string> in_progress_;
  std::vector<std::shared_ptr<const void>> pins_;
  std::unordered_set<const void*> pinned_;
  std::map<const void*, FormulaEps> unfolded_;
  std::map<std::string, FormulaEps> templates_;
  std::size_t depth_ = 0;
  SessionStats stats_;
};

}  // namespace realiz
