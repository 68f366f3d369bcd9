#pragma once

// The finite ground model: hereditarily finite sets over stack atoms, plus the
// symbolic name shapes (x × Π, P(x × Π) × Π, pattern-guarded entries) that
// expand to ordinary sets inside a truncation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realiz/kam.hpp"

namespace realiz {

struct GNode;
struct FormulaEpsNode;
struct PatternNode;

/// Kinds in canonical-order rank: pure and mixed sets first, atoms last.
enum class GKind : std::uint8_t { Set, TimesPi, SubsetsTimesPi, Guarded, Compr, Atom };

/// Handle to an interned ground value. Structural equality is pointer equality.
class GroundSet {
 public:
  GroundSet();  // the empty set

  static GroundSet set(std::vector<GroundSet> elements);
  static GroundSet atom(const Stack& s);
  static GroundSet times_pi(GroundSet base);
  static GroundSet subsets_times_pi(GroundSet base);

  GKind kind() const;
  bool is_set() const { return kind() == GKind::Set; }
  bool is_atom() const { return kind() == GKind::Atom; }
  /// Set, Atom and SubsetsTimesPi are canonical; the rest expand to sets.
  bool is_symbolic() const;

  const std::vector<GroundSet>& elements() const;  // Set
  const Stack& stack() const;                      // Atom
  GroundSet base() const;                          // TimesPi, SubsetsTimesPi, Compr

  std::size_t id() const;
  std::size_t rank() const;
  std::size_t size() const;  // element count for Set, 0 otherwise
  bool contains(GroundSet x) const;  // Set membership by binary search

  const GNode* node() const { return node_; }

  friend bool operator==(GroundSet a, GroundSet b) { return a.node_ == b.node_; }
  friend bool operator!=(GroundSet a, GroundSet b) { return a.node_ != b.node_; }
  /// Canonical order: atoms after sets; sets by rank, then cardinality,
  /// then lexicographically on their sorted elements.
  friend bool operator<(GroundSet a, GroundSet b);

 private:
  explicit GroundSet(const GNode* n) : node_(n) {}
  const GNode* node_;
  friend struct GroundFactory;
};

int ground_compare(GroundSet a, GroundSet b);

struct GroundSetHash {
  std::size_t operator()(GroundSet g) const { return g.id(); }
};

// ---------------------------------------------------------------------------
// Stack patterns and guarded entry sets

/// A formula instance F[b, c...]: the formula plus values for its free variables.
struct FormulaClosure {
  std::shared_ptr<const FormulaEpsNode> formula;
  std::vector<std::pair<std::string, GroundSet>> env;
  std::string key;  // canonical text, used for ordering and interning
};

/// The closure with one more variable bound.
FormulaClosure bind_closure(const FormulaClosure& c, const std::string& var, GroundSet value);

enum class PatternKind : std::uint8_t { All, Only, PushRealizer, PushMarker };

using StackPattern = std::shared_ptr<const PatternNode>;

struct PatternNode {
  PatternKind kind;
  std::vector<Stack> only;  // Only, sorted
  FormulaClosure closure;   // PushRealizer
  std::string tag;          // PushMarker
  StackPattern rest;        // PushRealizer, PushMarker
  std::string key;
};

StackPattern pattern_all();
StackPattern pattern_only(std::vector<Stack> stacks);
StackPattern pattern_push_realizer(FormulaClosure closure, StackPattern rest);
StackPattern pattern_push_marker(std::string tag, StackPattern rest);

struct Entry {
  GroundSet name;
  StackPattern pattern;
};

/// Name whose entries are (name, pattern) pairs; duplicates merge by pattern key.
GroundSet make_guarded(std::vector<Entry> entries);
const std::vector<Entry>& guarded_entries(GroundSet g);

/// {y ε base ; F} kept symbolic because the base cannot be enumerated.
GroundSet make_lazy_compr(GroundSet base, std::string var, FormulaClosure closure);
const FormulaClosure& lazy_compr_closure(GroundSet g);
const std::string& lazy_compr_var(GroundSet g);

// ---------------------------------------------------------------------------
// Truncation context

/// What the ground layer needs from an evaluation session: the truncated
/// stack set, the depth bound and the realizers that guard comprehension entries.
class GroundContext {
 public:
  virtual ~GroundContext() = default;
  virtual const std::vector<Stack>& pi_d() const = 0;
  virtual std::size_t depth_bound() const = 0;
  virtual std::vector<Term> realizers_of(const FormulaClosure& c) = 0;
  virtual std::size_t subset_ceiling() const { return std::size_t{1} << 16; }
  virtual bool in_pi_d(const Stack& s) const;
};

/// A context without realizer support; PushRealizer patterns raise.
class PlainGroundContext : public GroundContext {
 public:
  explicit PlainGroundContext(std::vector<Stack> stacks, std::size_t d)
      : stacks_(std::move(stacks)), d_(d) {}
  const std::vector<Stack>& pi_d() const override { return stacks_; }
  std::size_t depth_bound() const override { return d_; }
  std::vector<Term> realizers_of(const FormulaClosure& c) override;

 private:
  std::vector<Stack> stacks_;
  std::size_t d_;
};

/// Stacks denoted by a pattern, sorted and deduplicated.
std::vector<Stack> pattern_stacks(const StackPattern& p, GroundContext& ctx);
bool pattern_contains(const StackPattern& p, const Stack& s, GroundContext& ctx);

// ---------------------------------------------------------------------------
// Basic operations

GroundSet kuratowski_pair(GroundSet a, GroundSet b);
/// (a, b) when x is a Kuratowski pair.
std::optional<std::pair<GroundSet, GroundSet>> unpair(GroundSet x);

GroundSet singleton(GroundSet a);
GroundSet set_union(GroundSet a, GroundSet b);
bool subset_of(GroundSet a, GroundSet b);

GroundSet boolean(bool b);  // 0 = ∅, 1 = {∅}
bool is_boolean(GroundSet g);
GroundSet nat(std::size_t n);  // von Neumann numeral

/// Expanded Set form of any value. Symbolic shapes use the context; a
/// SubsetsTimesPi beyond the context ceiling raises ResourceError.
GroundSet expand(GroundSet x, GroundContext& ctx);
/// Expands when cheap and possible, keeping SubsetsTimesPi and atoms as they are.
GroundSet normalize(GroundSet x, GroundContext& ctx);

/// Ground membership y ∈ x, answered symbolically where the shape allows it.
bool ground_member(GroundSet y, GroundSet x, GroundContext& ctx);
/// Elements of x (expanding as needed).
std::vector<GroundSet> ground_elements(GroundSet x, GroundContext& ctx);

/// Stacks π with (b, π) ∈ a: the atomic truth value of b ε̸ a.
std::vector<Stack> entry_stacks(GroundSet b, GroundSet a, GroundContext& ctx);
/// Names b having at least one entry (b, π) in a. Empty optional when the
/// entry names cannot be enumerated (subset shapes).
std::optional<std::vector<GroundSet>> entry_names(GroundSet a, GroundContext& ctx);

/// Pure-set helpers without context: for values with no symbolic parts.
GroundSet transitive_closure(GroundSet a);
GroundSet transitive_closure_fixpoint(GroundSet a);
GroundSet transitive_closure(GroundSet a, GroundContext& ctx);
/// y < x: y ∈ Cl(x).
bool less(GroundSet y, GroundSet x);
bool less(GroundSet y, GroundSet x, GroundContext& ctx);

// ---------------------------------------------------------------------------
// Universes

/// All pure hereditarily finite sets of rank < k (V_0 = ∅, V_{k+1} = P(V_k)).
std::vector<GroundSet> exhaustive_universe(std::size_t k, std::size_t ceiling = 4096);

enum class SeedOp : std::uint8_t { Pair, Singleton, Union, Kuratowski, Closure };

/// Closes the seeds under the listed operations, breadth first, stopping at
/// the ceiling. Result is in canonical order.
std::vector<GroundSet> seeded_universe(const std::vector<GroundSet>& seeds,
                                       const std::vector<SeedOp>& ops, std::size_t ceiling,
                                       std::size_t max_rank = 6);

/// Random pure set of rank <= max_rank with at most max_width elements per level.
GroundSet random_pure_set(std::mt19937_64& rng, std::size_t max_rank, std::size_t max_width);

// ---------------------------------------------------------------------------
// Literal syntax:
//   {} | {a,b,...} | pair(a,b) | timespi(a) | subsetspi(a) | atom[stack] | 0 1 2 3 ...

using NamedSets = std::vector<std::pair<std::string, GroundSet>>;

GroundSet parse_ground(std::string_view text, const NamedTerms* terms = nullptr);
std::string print_ground(GroundSet g);

}  // namespace realiz
