#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/formula.hpp"
#include "cfl/model.hpp"
#include "cfl/semantics.hpp"

namespace cfl {

enum class Rule {
  Pred21,       // quantum prediction: vanishing cell (L2-, R2+)
  Pred22,       // quantum prediction: vanishing cell (L2+, R1+)
  Pred23,       // quantum prediction: vanishing cell (L1-, R2-)
  Pred24,       // quantum prediction: positive cell (L1-, R1+)
  B6,           // no-backward-influence axiom instance
  A5,           // import/export: A => (B -> C) iff (A & B) => C
  B5,           // antecedent strengthening of a strict conditional
  B7,           // consequent weakening inside a counterfactual
  Loc1Commute,  // earlier-region facts are invariant across accessible worlds
  Def,          // unfolding the definition of the counterfactual
  Hypothesis,   // assumption of a reductio block
};

std::string_view to_string(Rule rule);
// Throws Error for an unknown tag.
Rule rule_from_string(std::string_view tag);

struct Justification {
  std::vector<Rule> rules;
  std::vector<int> premises;
};

struct ProofLine {
  int index = 0;
  Formula statement = Formula::atom(Atom::choice(Region::Left, Setting::One));
  Justification justification;
  // Indices of hypotheses this line depends on.
  std::vector<int> hypothesis_scope;
};

// Claim that the given outcome occurs with nonzero probability under the
// given choice pair.
struct SideCondition {
  Setting left_choice;
  Setting right_choice;
  Region region;
  Sign outcome;
  std::string description;
};

struct ProofScript {
  std::vector<ProofLine> lines;
  std::vector<SideCondition> side_conditions;
  // Corrections applied to the printed derivation, one entry each.
  std::vector<std::string> normalizations;

  // Throws Error if no line has this index.
  const ProofLine& line(int index) const;
};

// The fourteen-line derivation: lines 1-5 establish the L2 statement, line 6
// assumes the L1 statement, and lines 7-14 derive the conflicting pair
// 11/14 that refutes it.
ProofScript builtin_script();

enum class RuleStatus { Valid, Invalid, NotMechanized };

std::string_view to_string(RuleStatus status);

struct RuleVerdict {
  RuleStatus status = RuleStatus::Invalid;
  std::string detail;

  bool valid() const noexcept { return status == RuleStatus::Valid; }
};

// Checks that line `index` follows from its cited premises by its cited
// rules. Structural rules are matched up to associativity and commutativity
// of "&"; prediction lines are checked against the model's possible worlds.
// Throws Error if the index is not in the script.
RuleVerdict check_rule(const Model& m, const ProofScript& script, int index,
                       TemporalOrder order = {});

struct LineAudit {
  int index = 0;
  std::string statement;
  std::string rule;  // e.g. "B7" or "LOC1_COMMUTE+A5"
  RuleVerdict verdict;
  // Universal reading: "=>" over all possible worlds, "[]->" over every
  // accessible world. Existential reading: "=>" witnessed by some world,
  // "[]->" by some accessible world. Lines inside a hypothesis scope are
  // read as material consequences of the hypothesis.
  bool sem_every = false;
  bool sem_some = false;
  std::optional<World> witness_every;  // counterexample when sem_every is false
  std::optional<World> witness_some;   // satisfying world when sem_some is true
  std::vector<int> scope;
  bool divergent = false;
};

struct FinalVerdict {
  bool line5_true = false;
  bool line6_refuted = false;
  bool side_conditions_hold = false;
  std::optional<int> conflict_first;   // the conflicting pair of lines
  std::optional<int> conflict_second;
  std::optional<World> reductio_witness;
  std::vector<std::string> notes;
};

struct AuditReport {
  std::vector<LineAudit> lines;
  FinalVerdict final;
  std::vector<std::string> normalizations;

  bool passed() const noexcept { return final.line5_true && final.line6_refuted; }
};

AuditReport audit(const Model& m, const ProofScript& script, const CfOptions& opts = {});

std::string format_audit_text(const AuditReport& report);
std::string audit_to_json(const AuditReport& report);

struct SrRow {
  bool ra = false;        // RA: the actual choice is performed
  bool ra_plus = false;   // RA+: it yields +
  bool rc = false;        // RC: the counterfactual choice is performed
  bool rc_minus = false;  // RC-: it yields -
  bool value = false;     // (RA & RA+ & RC) -> RC-
};

// All sixteen truth-value quadruples, t before f in each position.
std::array<SrRow, 16> sr_truth_table();

std::string format_sr_table(const std::array<SrRow, 16>& rows);

}  // namespace cfl
