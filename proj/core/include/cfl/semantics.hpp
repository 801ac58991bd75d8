#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfl/formula.hpp"
#include "cfl/model.hpp"

namespace cfl {

// Which region precedes the reference time in the preferred frame. Outcomes
// recorded in the earlier region are fixed regardless of the later choice.
struct TemporalOrder {
  Region earlier = Region::Left;
  Region later() const noexcept { return other(earlier); }
};

enum class Quantifier { Every, Some };

struct CfOptions {
  TemporalOrder order;
  Quantifier quantifier = Quantifier::Every;
  // Imposing a choice that already holds leaves the world unchanged.
  bool self_world_when_consistent = true;
  // Evaluate "=>" below the root as a world-independent truth value instead
  // of rejecting it.
  bool allow_nested_strict = false;
};

// Worlds reachable from `w` by imposing the later-region choice `choice`:
// the earlier region keeps its choice and its outcome, the later outcome
// ranges over whatever is physically possible.
//
// Throws SemanticError if `choice` is not a later-region choice atom or `w`
// is not possible in `m`.
WorldSet accessible(const Model& m, const World& w, Atom choice, const CfOptions& opts = {});

// Truth of `f` at `w`. A strict conditional at the root is evaluated
// globally and its global value returned.
bool eval_at(const Model& m, const World& w, const Formula& f, const CfOptions& opts = {});

// Possible worlds at which `f` holds.
WorldSet extension(const Model& m, const Formula& f, const CfOptions& opts = {});

struct GlobalVerdict {
  bool holds = false;
  std::optional<World> witness;  // first counterexample in canonical order
  WorldSet counterexamples;

  explicit operator bool() const noexcept { return holds; }
};

// For A => B: no possible world satisfies A and not B. For any other formula:
// true at every possible world.
GlobalVerdict holds_globally(const Model& m, const Formula& f, const CfOptions& opts = {});

// The existential reading: for A => B, some possible world satisfies both A
// and B; for any other formula, some possible world satisfies it. `witness`
// is then the first satisfying world.
GlobalVerdict holds_somewhere(const Model& m, const Formula& f, const CfOptions& opts = {});

// Two independent routes to the strict conditional a => b:
// {a} and {~b} are disjoint, and {a} is a subset of {b}.
bool strict_by_intersection(const Model& m, const Formula& a, const Formula& b,
                            const CfOptions& opts = {});
bool strict_by_subset(const Model& m, const Formula& a, const Formula& b,
                      const CfOptions& opts = {});

struct TheoremReport {
  std::vector<std::string> hardy_violations;  // precondition diagnostics
  GlobalVerdict line5;
  GlobalVerdict line6;
  // SR holds at every possible L2 world, and fails at some possible L1 world.
  bool sr_true_on_l2_worlds = false;
  std::optional<World> sr_l1_falsifier;

  bool hardy_conforming() const noexcept { return hardy_violations.empty(); }
  bool passed() const noexcept { return line5.holds && !line6.holds; }
  bool sr_depends_on_left_choice() const noexcept {
    return sr_true_on_l2_worlds && sr_l1_falsifier.has_value();
  }
};

// "If R2 is performed with outcome +, then had R1 been performed instead it
// would have yielded -."
const Formula& sr_statement();

TheoremReport check_theorem(const Model& m, const CfOptions& opts = {});

std::string format_theorem_report(const TheoremReport& report);

}  // namespace cfl
