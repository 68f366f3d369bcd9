#pragma once

// Standard laboratory setups shared by the tests, the acceptance binary and
// the command line tool: term pools, universes, poles and the theorem suites.

#include <string>
#include <vector>

#include "realiz/logic.hpp"

namespace realiz {

/// I, Y, λx(x)I, Ω and the depth probes λx₁…λx_k.Ω for k = 2, 3. A probe of
/// arity k halts exactly on stacks of depth below k, so the pool contains
/// realizers of ⊥ at d = 2 under the termination pole.
TermPool lab_pool(std::size_t d = 2);

/// V_3, two ℷ-names and three seeded random names.
UniverseSpec lab_universe_spec(std::uint64_t seed = 1);

Session lab_session(const UniverseSpec& spec = lab_universe_spec(), TermPool pool = lab_pool(),
                    Pole pole = TerminationPole{10000});

/// Instruction whose arrival at the head of a process counts as success.
inline constexpr const char* kStopTag = "ok";

/// Explicit pole generated by every process headed by the stop instruction.
Pole stop_pole(std::size_t fuel = 10000);

/// lab_pool plus the stop instruction, an inert instruction and small
/// selectors (K, λxλy.y, λx(x)stop, λxλy(y)x, λx(x)λy(y)stop) whose
/// realizability depends on the shape of the stack.
TermPool adversarial_pool(std::size_t d = 2);

/// Names with one entry (∅, t·π0) per pool term t, and short chains along
/// ∅ < {∅} < {{∅}} whose entry stacks make induction hypotheses observable.
std::vector<GroundSet> adversarial_names(const TermPool& pool);

/// The adversarial pool under the stop pole, over V_3 and two ℷ-names,
/// extended by adversarial_names unless `compact`.
Session adversarial_session(std::size_t d = 2, bool compact = false);

struct SuiteEntry {
  std::string name;
  std::string realizer;  // pool name
  std::string formula;
  bool wide = false;     // four or more quantified names: too costly on large universes
};

/// Theorems of the realizability model paired with their realizers.
const std::vector<SuiteEntry>& realizer_suite();

struct MutantOutcome {
  std::string theorem;
  Term mutant;
  bool refuted = false;
  bool equivalent = false;  // head_equivalent to the original
};

struct MutationSummary {
  bool originals_validated = true;
  std::vector<std::string> invalid_originals;
  std::size_t total = 0;
  std::size_t refuted = 0;
  std::size_t equivalent = 0;
  std::vector<MutantOutcome> outcomes;

  /// refuted / (total − equivalent)
  double score() const;
};

/// Checks every original and all of its single-edit mutants in `session`,
/// or in `compact` for wide entries when given.
MutationSummary run_mutation_suite(Session& session, const std::vector<SuiteEntry>& suite,
                                   Session* compact = nullptr);

}  // namespace realiz
