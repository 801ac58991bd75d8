#include "cfl/proof.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cfl/error.hpp"

namespace cfl {

namespace {

constexpr std::pair<Rule, std::string_view> kRuleNames[] = {
    {Rule::Pred21, "PRED21"}, {Rule::Pred22, "PRED22"},   {Rule::Pred23, "PRED23"},
    {Rule::Pred24, "PRED24"}, {Rule::B6, "B6"},           {Rule::A5, "A5"},
    {Rule::B5, "B5"},         {Rule::B7, "B7"},           {Rule::Loc1Commute, "LOC1_COMMUTE"},
    {Rule::Def, "DEF"},       {Rule::Hypothesis, "HYPOTHESIS"},
};

// ---------------------------------------------------------------------------
// Matching up to associativity and commutativity of "&".

std::string key(const Formula& f);

std::vector<std::string> conjunct_keys(const Formula& f) {
  std::vector<std::string> keys;
  for (const Formula& c : conjuncts(f)) keys.push_back(key(c));
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::string key(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
      return to_string(f.as_atom());
    case Connective::Not:
      return "~(" + key(f.operand()) + ")";
    case Connective::And: {
      std::string out = "&(";
      for (const auto& k : conjunct_keys(f)) out += k + ",";
      return out + ")";
    }
    case Connective::Or:
      return "|(" + key(f.lhs()) + "," + key(f.rhs()) + ")";
    case Connective::Implies:
      return "->(" + key(f.lhs()) + "," + key(f.rhs()) + ")";
    case Connective::Strict:
      return "=>(" + key(f.lhs()) + "," + key(f.rhs()) + ")";
    case Connective::Counterfactual:
      return "[]->(" + key(f.lhs()) + "," + key(f.rhs()) + ")";
  }
  return {};
}

bool same(const Formula& a, const Formula& b) { return key(a) == key(b); }

// A => (B -> C) becomes (A & B) => C, repeatedly.
Formula export_normal(const Formula& f) {
  if (f.kind() == Connective::Strict && f.rhs().kind() == Connective::Implies) {
    return export_normal(Formula::strict(Formula::conjunction(f.lhs(), f.rhs().lhs()),
                                         f.rhs().rhs()));
  }
  return f;
}

bool is_strict(const Formula& f) { return f.kind() == Connective::Strict; }

bool is_counterfactual(const Formula& f) {
  return f.kind() == Connective::Counterfactual && f.lhs().is_atom();
}

// Conjuncts as atoms; nullopt if any conjunct is compound.
std::optional<std::vector<Atom>> atom_conjuncts(const Formula& f) {
  std::vector<Atom> out;
  for (const Formula& c : conjuncts(f)) {
    if (!c.is_atom()) return std::nullopt;
    out.push_back(c.as_atom());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Multiset difference a \ b of sorted key lists.
std::vector<std::string> minus(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RuleVerdict ok() { return {RuleStatus::Valid, "ok"}; }
RuleVerdict bad(std::string why) { return {RuleStatus::Invalid, std::move(why)}; }

// ---------------------------------------------------------------------------
// Schemas

// Statement the prediction licenses. A vanishing cell (o_L, o_R) may be read
// from either side: given o_L the right outcome is the other one, or given
// o_R the left outcome is the other one.
std::vector<Formula> prediction_statements(const CellPrediction& p) {
  const Formula lc = Formula::atom(Atom::choice(Region::Left, p.left_choice));
  const Formula rc = Formula::atom(Atom::choice(Region::Right, p.right_choice));
  auto out = [](Region r, Setting s, Sign g) { return Formula::atom(Atom::outcome(r, s, g)); };
  auto triple = [&](const Formula& o) {
    return Formula::conjunction(Formula::conjunction(lc, rc), o);
  };
  const Formula l_out = out(Region::Left, p.left_choice, p.left_outcome);
  const Formula r_out = out(Region::Right, p.right_choice, p.right_outcome);
  if (p.must_vanish) {
    return {
        Formula::strict(triple(l_out),
                        triple(out(Region::Right, p.right_choice, other(p.right_outcome)))),
        Formula::strict(triple(r_out),
                        triple(out(Region::Left, p.left_choice, other(p.left_outcome)))),
    };
  }
  // Positive cell: it is not the case that o_L forces the other right outcome.
  return {Formula::strict(
      Formula::conjunction(lc, rc),
      Formula::negation(Formula::implication(
          l_out,
          Formula::conjunction(rc, out(Region::Right, p.right_choice, other(p.right_outcome))))))};
}

RuleVerdict check_prediction(const Model& m, Rule rule, const Formula& statement) {
  const auto& preds = hardy_predictions();
  const CellPrediction& p = preds[static_cast<std::size_t>(rule) - static_cast<std::size_t>(Rule::Pred21)];
  bool matched = false;
  std::string expected;
  for (const Formula& f : prediction_statements(p)) {
    if (same(f, statement)) matched = true;
    if (!expected.empty()) expected += "  or  ";
    expected += print(f);
  }
  if (!matched) {
    return bad("statement does not match " + std::string(p.tag) + ": expected " + expected +
               ", found " + print(statement));
  }
  const World cell = p.world();
  const bool possible = m.is_possible(cell);
  if (p.must_vanish && possible) {
    return bad(std::string(p.tag) + " cell " + to_string(cell) + " has probability " +
               std::to_string(m.table().get(cell)) + " > epsilon");
  }
  if (!p.must_vanish && !possible) {
    return bad(std::string(p.tag) + " cell " + to_string(cell) + " is not possible (probability " +
               std::to_string(m.table().get(cell)) + ")");
  }
  return ok();
}

// (E & A & E+-) => (C []-> E & C & E+-), E an earlier-region choice with its
// outcome, A and C distinct later-region choices.
RuleVerdict check_b6(const Formula& t, TemporalOrder order) {
  const std::string shape = "(E & A & E+/-) => (C []-> E & C & E+/-)";
  if (!is_strict(t) || !is_counterfactual(t.rhs())) {
    return bad("expected " + shape + ", found " + print(t));
  }
  auto ante = atom_conjuncts(t.lhs());
  if (!ante || ante->size() != 3) return bad("antecedent is not three atoms: " + print(t.lhs()));
  std::optional<Atom> e, eo, a;
  for (Atom x : *ante) {
    if (x.region() == order.earlier && x.is_choice()) {
      e = x;
    } else if (x.region() == order.earlier && x.is_outcome()) {
      eo = x;
    } else if (x.region() == order.later() && x.is_choice()) {
      a = x;
    }
  }
  if (!e || !eo || !a) {
    return bad("antecedent needs an earlier choice, its outcome and a later choice: " +
               print(t.lhs()));
  }
  if (eo->setting() != e->setting()) {
    return bad("earlier outcome " + to_string(*eo) + " does not belong to choice " + to_string(*e));
  }
  const Atom c = t.rhs().lhs().as_atom();
  if (!c.is_choice() || c.region() != order.later() || c == *a) {
    return bad("counterfactual antecedent must be the other later-region choice, found " +
               to_string(c));
  }
  std::vector<std::string> want{to_string(*e), to_string(c), to_string(*eo)};
  std::sort(want.begin(), want.end());
  if (conjunct_keys(t.rhs().rhs()) != want) {
    return bad("counterfactual consequent must be " + to_string(*e) + " & " + to_string(c) +
               " & " + to_string(*eo) + ", found " + print(t.rhs().rhs()));
  }
  return ok();
}

RuleVerdict check_a5(const Formula& p, const Formula& t) {
  if (!is_strict(p) || !is_strict(t)) return bad("A5 relates strict conditionals");
  if (!same(export_normal(p), export_normal(t))) {
    return bad("not an import/export pair: " + print(export_normal(p)) + " vs " +
               print(export_normal(t)));
  }
  return ok();
}

// From B => A and A => X infer B => X.
RuleVerdict check_b5(const Formula& p1, const Formula& p2, const Formula& t) {
  if (!is_strict(p1) || !is_strict(p2) || !is_strict(t)) return bad("B5 relates strict conditionals");
  for (int order = 0; order < 2; ++order) {
    const Formula& s = order == 0 ? p1 : p2;  // B => A
    const Formula& g = order == 0 ? p2 : p1;  // A => X
    if (same(s.lhs(), t.lhs()) && same(s.rhs(), g.lhs()) && same(g.rhs(), t.rhs())) return ok();
  }
  return bad("expected premises B => A and A => X for conclusion B => X");
}

// From A => (C []-> D) and D => F infer A => (C []-> F); with a third premise
// B => A the antecedent may also be strengthened (B5 then B7).
RuleVerdict check_b7(const std::vector<Formula>& ps, const Formula& t) {
  if (ps.size() < 2 || ps.size() > 3) return bad("B7 takes two or three premises");
  for (const Formula& p : ps) {
    if (!is_strict(p)) return bad("B7 premises must be strict conditionals");
  }
  if (!is_strict(t) || !is_counterfactual(t.rhs())) {
    return bad("B7 conclusion must be B => (C []-> F), found " + print(t));
  }
  std::vector<std::size_t> idx(ps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    const Formula& cf = ps[idx[0]];  // A => (C []-> D)
    const Formula& wk = ps[idx[1]];  // D => F
    if (!is_counterfactual(cf.rhs())) continue;
    if (!same(cf.rhs().lhs(), t.rhs().lhs())) continue;
    if (!same(wk.lhs(), cf.rhs().rhs()) || !same(wk.rhs(), t.rhs().rhs())) continue;
    if (ps.size() == 2) {
      if (same(cf.lhs(), t.lhs())) return ok();
    } else {
      const Formula& st = ps[idx[2]];  // B => A
      if (same(st.lhs(), t.lhs()) && same(st.rhs(), cf.lhs())) return ok();
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  return bad(ps.size() == 2
                 ? "expected premises A => (C []-> D) and D => F for A => (C []-> F)"
                 : "expected premises A => (C []-> D), B => A and D => F for B => (C []-> F)");
}

bool earlier_atom(const Formula& f, TemporalOrder order) {
  return f.is_atom() && f.as_atom().region() == order.earlier;
}

// X => (C []-> D) and X => (C []-> D') where D and D' differ only in
// earlier-region atoms that X already asserts.
bool pinned_conjunct_step(const Formula& p, const Formula& t, TemporalOrder order) {
  if (!is_strict(p) || !is_strict(t) || !same(p.lhs(), t.lhs())) return false;
  if (!is_counterfactual(p.rhs()) || !is_counterfactual(t.rhs())) return false;
  if (!same(p.rhs().lhs(), t.rhs().lhs())) return false;
  const auto d = conjunct_keys(p.rhs().rhs());
  const auto d2 = conjunct_keys(t.rhs().rhs());
  const auto x = conjunct_keys(p.lhs());
  std::set<std::string> pinned;
  for (const Formula& c : conjuncts(p.lhs())) {
    if (earlier_atom(c, order)) pinned.insert(key(c));
  }
  for (const auto& diff : {minus(d, d2), minus(d2, d)}) {
    for (const auto& k : diff) {
      if (!pinned.count(k)) return false;
    }
  }
  return true;
}

// X => (E -> (C []-> D))  <=>  X => (C []-> (E -> D)), E an earlier-region atom.
bool commute_step(const Formula& p, const Formula& t, TemporalOrder order) {
  auto one_way = [&](const Formula& a, const Formula& b) {
    if (!is_strict(a) || !is_strict(b) || !same(a.lhs(), b.lhs())) return false;
    const Formula& ai = a.rhs();
    const Formula& bc = b.rhs();
    if (ai.kind() != Connective::Implies || !earlier_atom(ai.lhs(), order)) return false;
    if (!is_counterfactual(ai.rhs()) || !is_counterfactual(bc)) return false;
    if (!same(ai.rhs().lhs(), bc.lhs())) return false;
    const Formula& inner = bc.rhs();
    return inner.kind() == Connective::Implies && same(inner.lhs(), ai.lhs()) &&
           same(inner.rhs(), ai.rhs().rhs());
  };
  return one_way(p, t) || one_way(t, p);
}

RuleVerdict check_loc1(const Formula& p, const Formula& t, bool with_a5, TemporalOrder order) {
  const Formula a = with_a5 ? export_normal(p) : p;
  const Formula b = with_a5 ? export_normal(t) : t;
  if (commute_step(a, b, order) || pinned_conjunct_step(a, b, order)) return ok();
  return bad("not a LOC1 step: " + print(a) + "  vs  " + print(b));
}

// From X => (C -> G) infer (X & C') => (C []-> G), where X holds only
// earlier-region atoms and C' is the alternative to the later choice C:
// every world reached by imposing C keeps X and satisfies C.
RuleVerdict check_def(const Formula& p, const Formula& t, TemporalOrder order) {
  if (!is_strict(p) || !is_strict(t) || !is_counterfactual(t.rhs())) {
    return bad("DEF expects X => (C -> G) and Y => (C []-> G)");
  }
  const Atom c = t.rhs().lhs().as_atom();
  if (!c.is_choice() || c.region() != order.later()) {
    return bad("counterfactual antecedent " + to_string(c) + " is not a later-region choice");
  }
  const Formula& body = p.rhs();
  if (body.kind() != Connective::Implies || !body.lhs().is_atom() || body.lhs().as_atom() != c) {
    return bad("premise must read X => (" + to_string(c) + " -> G), found " + print(p));
  }
  auto s = atom_conjuncts(p.lhs());
  if (!s) return bad("premise antecedent is not a conjunction of atoms: " + print(p.lhs()));
  for (Atom x : *s) {
    if (x.region() != order.earlier) {
      return bad("premise condition " + to_string(x) + " is not an earlier-region atom");
    }
  }
  const Atom alt = Atom::choice(c.region(), other(c.setting()));
  s->push_back(alt);
  std::sort(s->begin(), s->end());
  auto y = atom_conjuncts(t.lhs());
  if (!y || *y != *s) {
    return bad("conclusion antecedent must be the premise's conditions plus " + to_string(alt) +
               ", found " + print(t.lhs()));
  }
  if (!same(body.rhs(), t.rhs().rhs())) {
    return bad("counterfactual consequent " + print(t.rhs().rhs()) + " differs from premise " +
               print(body.rhs()));
  }
  return ok();
}

// Hypotheses a line actually rests on, given its premises.
std::set<int> inherited_scope(const ProofScript& script, const ProofLine& line) {
  std::set<int> out;
  for (int i : line.justification.premises) {
    const ProofLine& p = script.line(i);
    out.insert(p.hypothesis_scope.begin(), p.hypothesis_scope.end());
    const auto& r = p.justification.rules;
    if (std::find(r.begin(), r.end(), Rule::Hypothesis) != r.end()) out.insert(p.index);
  }
  return out;
}

std::string rule_label(const Justification& j) {
  std::string out;
  for (Rule r : j.rules) {
    if (!out.empty()) out += "+";
    out += to_string(r);
  }
  return out.empty() ? "-" : out;
}

// Line indices the given line depends on, itself included.
std::set<int> support(const ProofScript& script, int index) {
  std::set<int> seen;
  std::vector<int> todo{index};
  while (!todo.empty()) {
    int i = todo.back();
    todo.pop_back();
    if (!seen.insert(i).second) continue;
    for (int p : script.line(i).justification.premises) {
      if (p < i) todo.push_back(p);
    }
  }
  return seen;
}

bool has_rule(const ProofLine& l, Rule r) {
  const auto& rs = l.justification.rules;
  return std::find(rs.begin(), rs.end(), r) != rs.end();
}

}  // namespace

std::string_view to_string(Rule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "?";
}

Rule rule_from_string(std::string_view tag) {
  for (const auto& [r, name] : kRuleNames) {
    if (name == tag) return r;
  }
  throw Error("unknown rule tag '" + std::string(tag) + "'");
}

std::string_view to_string(RuleStatus status) {
  switch (status) {
    case RuleStatus::Valid: return "valid";
    case RuleStatus::Invalid: return "invalid";
    case RuleStatus::NotMechanized: return "not-mechanized";
  }
  return "?";
}

const ProofLine& ProofScript::line(int index) const {
  for (const ProofLine& l : lines) {
    if (l.index == index) return l;
  }
  throw Error("proof script has no line " + std::to_string(index));
}

ProofScript builtin_script() {
  struct Spec {
    const char* text;
    std::vector<Rule> rules;
    std::vector<int> premises;
    std::vector<int> scope;
  };
  const std::vector<Spec> specs = {
      {"L2 & R2 & L2+ => (R1 []-> L2 & R1 & L2+)", {Rule::B6}, {}, {}},
      {"L2 & R2 & R2+ => L2 & R2 & L2+", {Rule::Pred21}, {}, {}},
      {"L2 & R1 & L2+ => L2 & R1 & R1-", {Rule::Pred22}, {}, {}},
      {"L2 & R2 & R2+ => (R1 []-> L2 & R1 & R1-)", {Rule::B7}, {1, 2, 3}, {}},
      {"L2 => ((R2 & R2+) -> (R1 []-> R1 & R1-))", {Rule::Loc1Commute, Rule::A5}, {4}, {}},
      {"L1 => ((R2 & R2+) -> (R1 []-> R1 & R1-))", {Rule::Hypothesis}, {}, {}},
      {"L1 & R2 & R2+ => (R1 []-> R1 & R1-)", {Rule::A5}, {6}, {6}},
      {"L1 & R2 & L1- => L1 & R2 & R2+", {Rule::Pred23}, {}, {6}},
      {"L1 & R2 & L1- => (R1 []-> R1 & R1-)", {Rule::B5}, {7, 8}, {6}},
      {"L1 & R2 => (L1- -> (R1 []-> R1 & R1-))", {Rule::A5}, {9}, {6}},
      {"L1 & R2 => (R1 []-> (L1- -> R1 & R1-))", {Rule::Loc1Commute}, {10}, {6}},
      {"L1 & R1 => ~(L1- -> R1 & R1-)", {Rule::Pred24}, {}, {}},
      {"L1 => (R1 -> ~(L1- -> R1 & R1-))", {Rule::A5}, {12}, {}},
      {"L1 & R2 => (R1 []-> ~(L1- -> R1 & R1-))", {Rule::Def}, {13}, {}},
  };
  ProofScript script;
  int index = 1;
  for (const Spec& s : specs) {
    ProofLine line;
    line.index = index++;
    line.statement = parse(s.text);
    line.justification = {s.rules, s.premises};
    line.hypothesis_scope = s.scope;
    script.lines.push_back(std::move(line));
  }
  script.side_conditions.push_back(
      {Setting::One, Setting::One, Region::Left, Sign::Minus,
       "P(L1-|L1,R1) > 0: outcome L1- occurs with nonzero probability when L1 and R1 are "
       "performed"});
  script.normalizations = {
      "line 12: printed prediction citation read as the fourth prediction (PRED24)",
      "line 12: the set-theoretic argument's '{R2-}' read as '{R1-}', matching the line itself",
  };
  return script;
}

RuleVerdict check_rule(const Model& m, const ProofScript& script, int index, TemporalOrder order) {
  const ProofLine& line = script.line(index);
  const Justification& j = line.justification;

  std::vector<Formula> premises;
  for (int p : j.premises) {
    if (p >= index || p < 1) {
      return bad("premise " + std::to_string(p) + " does not precede line " + std::to_string(index));
    }
    premises.push_back(script.line(p).statement);
  }
  {
    std::set<int> have(line.hypothesis_scope.begin(), line.hypothesis_scope.end());
    for (int h : inherited_scope(script, line)) {
      if (!have.count(h)) {
        return bad("line depends on hypothesis " + std::to_string(h) +
                   " but its scope does not include it");
      }
    }
  }

  std::vector<Rule> rules = j.rules;
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  if (rules.empty()) return bad("no rule cited");

  auto need_premises = [&](std::size_t n) -> std::optional<RuleVerdict> {
    if (premises.size() != n) {
      return bad(rule_label(j) + " takes " + std::to_string(n) + " premise(s), " +
                 std::to_string(premises.size()) + " cited");
    }
    return std::nullopt;
  };

  const Formula& t = line.statement;
  if (rules.size() == 1) {
    switch (rules[0]) {
      case Rule::Hypothesis:
        if (auto v = need_premises(0)) return *v;
        return ok();
      case Rule::Pred21:
      case Rule::Pred22:
      case Rule::Pred23:
      case Rule::Pred24:
        if (auto v = need_premises(0)) return *v;
        return check_prediction(m, rules[0], t);
      case Rule::B6:
        if (auto v = need_premises(0)) return *v;
        return check_b6(t, order);
      case Rule::A5:
        if (auto v = need_premises(1)) return *v;
        return check_a5(premises[0], t);
      case Rule::B5:
        if (auto v = need_premises(2)) return *v;
        return check_b5(premises[0], premises[1], t);
      case Rule::B7:
        return check_b7(premises, t);
      case Rule::Loc1Commute:
        if (auto v = need_premises(1)) return *v;
        return check_loc1(premises[0], t, false, order);
      case Rule::Def:
        if (auto v = need_premises(1)) return *v;
        return check_def(premises[0], t, order);
    }
  }
  if (rules == std::vector<Rule>{Rule::A5, Rule::Loc1Commute}) {
    if (auto v = need_premises(1)) return *v;
    return check_loc1(premises[0], t, true, order);
  }
  return {RuleStatus::NotMechanized, "no checker for the rule combination " + rule_label(j)};
}

// ---------------------------------------------------------------------------

AuditReport audit(const Model& m, const ProofScript& script, const CfOptions& opts) {
  CfOptions every = opts;
  every.quantifier = Quantifier::Every;
  CfOptions some = opts;
  some.quantifier = Quantifier::Some;

  AuditReport report;
  report.normalizations = script.normalizations;

  std::map<int, GlobalVerdict> raw_every;
  std::map<int, GlobalVerdict> raw_some;
  for (const ProofLine& l : script.lines) {
    raw_every[l.index] = holds_globally(m, l.statement, every);
    raw_some[l.index] = holds_somewhere(m, l.statement, some);
  }

  std::map<int, bool> rule_ok;
  for (const ProofLine& l : script.lines) {
    LineAudit a;
    a.index = l.index;
    a.statement = print(l.statement);
    a.rule = rule_label(l.justification);
    if (!l.justification.premises.empty()) {
      a.rule += " [";
      for (std::size_t i = 0; i < l.justification.premises.size(); ++i) {
        a.rule += (i ? "," : "") + std::to_string(l.justification.premises[i]);
      }
      a.rule += "]";
    }
    a.verdict = check_rule(m, script, l.index, opts.order);
    rule_ok[l.index] = a.verdict.valid();
    a.scope = l.hypothesis_scope;

    a.sem_every = raw_every[l.index].holds;
    a.sem_some = raw_some[l.index].holds;
    if (!a.sem_every) a.witness_every = raw_every[l.index].witness;
    if (a.sem_some) a.witness_some = raw_some[l.index].witness;
    for (int h : l.hypothesis_scope) {
      auto he = raw_every.find(h);
      auto hs = raw_some.find(h);
      if (he != raw_every.end() && !he->second.holds) {
        a.sem_every = true;
        a.witness_every.reset();
      }
      if (hs != raw_some.end() && !hs->second.holds) a.sem_some = true;
    }
    a.divergent = a.sem_every != a.sem_some;
    report.lines.push_back(std::move(a));
  }

  FinalVerdict& fin = report.final;
  auto derivation_ok = [&](int index) {
    for (int i : support(script, index)) {
      auto it = rule_ok.find(i);
      if (it == rule_ok.end() || !it->second) return false;
    }
    return true;
  };

  // Line 5: derived from valid steps outside any hypothesis and true.
  {
    const int target = 5;
    bool derived = false;
    bool unscoped = false;
    for (const ProofLine& l : script.lines) {
      if (l.index == target) {
        derived = derivation_ok(target);
        unscoped = l.hypothesis_scope.empty();
      }
    }
    fin.line5_true = derived && unscoped && raw_every.count(target) && raw_every[target].holds;
    if (!derived) fin.notes.push_back("line 5: derivation has an invalid step");
    if (derived && raw_every.count(target) && !raw_every[target].holds) {
      fin.notes.push_back("line 5: derivable but false in this model");
    }
  }

  // Side conditions.
  fin.side_conditions_hold = true;
  for (const SideCondition& sc : script.side_conditions) {
    bool witnessed = false;
    for (const World& w : m.possible().worlds()) {
      if (w.left_choice == sc.left_choice && w.right_choice == sc.right_choice &&
          w.outcome(sc.region) == sc.outcome) {
        witnessed = true;
      }
    }
    if (!witnessed) {
      fin.side_conditions_hold = false;
      fin.notes.push_back("side condition fails: " + sc.description);
    }
  }

  // Reductio: two derived lines X => (C []-> D) and X => (C []-> ~D), at
  // least one resting on the hypothesis, plus a possible X-world whose
  // C-variants include a world meeting the side condition.
  int hypothesis = 0;
  for (const ProofLine& l : script.lines) {
    if (has_rule(l, Rule::Hypothesis)) hypothesis = l.index;
  }
  if (hypothesis == 0) {
    fin.notes.push_back("no hypothesis line; nothing to refute");
  } else {
    for (const ProofLine& a : script.lines) {
      for (const ProofLine& b : script.lines) {
        if (fin.conflict_first) break;
        if (a.index >= b.index) continue;
        const Formula& fa = a.statement;
        const Formula& fb = b.statement;
        if (!is_strict(fa) || !is_strict(fb) || !same(fa.lhs(), fb.lhs())) continue;
        if (!is_counterfactual(fa.rhs()) || !is_counterfactual(fb.rhs())) continue;
        if (!same(fa.rhs().lhs(), fb.rhs().lhs())) continue;
        const Formula& da = fa.rhs().rhs();
        const Formula& db = fb.rhs().rhs();
        const bool complementary =
            (db.kind() == Connective::Not && same(db.operand(), da)) ||
            (da.kind() == Connective::Not && same(da.operand(), db));
        if (!complementary) continue;
        const bool uses_h =
            std::count(a.hypothesis_scope.begin(), a.hypothesis_scope.end(), hypothesis) ||
            std::count(b.hypothesis_scope.begin(), b.hypothesis_scope.end(), hypothesis);
        if (!uses_h) continue;
        fin.conflict_first = a.index;
        fin.conflict_second = b.index;
      }
    }
    if (!fin.conflict_first) {
      fin.notes.push_back("no pair of lines with complementary counterfactual consequents");
    } else {
      const bool chain_ok = derivation_ok(*fin.conflict_first) && derivation_ok(*fin.conflict_second);
      if (!chain_ok) {
        fin.notes.push_back("reductio: lines " + std::to_string(*fin.conflict_first) + " and " +
                            std::to_string(*fin.conflict_second) +
                            " conflict, but their derivation has an invalid step");
      }
      const Formula& conflict = script.line(*fin.conflict_first).statement;
      const Atom c = conflict.rhs().lhs().as_atom();
      try {
        for (const World& w : m.possible().worlds()) {
          if (fin.reductio_witness) break;
          if (!eval_at(m, w, conflict.lhs(), every)) continue;
          for (const World& v : accessible(m, w, c, every).worlds()) {
            bool meets = true;
            for (const SideCondition& sc : script.side_conditions) {
              meets = meets && v.left_choice == sc.left_choice &&
                      v.right_choice == sc.right_choice && v.outcome(sc.region) == sc.outcome;
            }
            if (meets) {
              fin.reductio_witness = w;
              break;
            }
          }
        }
      } catch (const SemanticError& e) {
        fin.notes.push_back(std::string("reductio: ") + e.what());
      }
      if (!fin.reductio_witness) {
        fin.notes.push_back("reductio: no possible world where the conflicting counterfactuals "
                            "are jointly exercised");
      }
      fin.line6_refuted = chain_ok && fin.side_conditions_hold && fin.reductio_witness.has_value();
    }
  }
  return report;
}

std::string format_audit_text(const AuditReport& r) {
  std::ostringstream os;
  for (const LineAudit& a : r.lines) {
    os << a.index << ". " << a.statement << "\n";
    os << "    rule " << a.rule << ": " << to_string(a.verdict.status);
    if (!a.verdict.valid()) os << " (" << a.verdict.detail << ")";
    os << "\n    every: " << (a.sem_every ? "true" : "false");
    if (a.witness_every) os << " [counterexample " << to_string(*a.witness_every) << "]";
    os << "   some: " << (a.sem_some ? "true" : "false");
    if (a.witness_some) os << " [witness " << to_string(*a.witness_some) << "]";
    if (!a.scope.empty()) {
      os << "   under hypothesis";
      for (int h : a.scope) os << " " << h;
    }
    if (a.divergent) os << "   DIVERGENT";
    os << "\n";
  }
  os << "\nnormalizations:\n";
  for (const auto& n : r.normalizations) os << "  - " << n << "\n";
  const FinalVerdict& f = r.final;
  os << "\nline 5 true: " << (f.line5_true ? "yes" : "no") << "\n";
  os << "line 6 refuted: " << (f.line6_refuted ? "yes" : "no");
  if (f.conflict_first) {
    os << " (lines " << *f.conflict_first << " and " << *f.conflict_second << " conflict";
    if (f.reductio_witness) os << " at " << to_string(*f.reductio_witness);
    os << ")";
  }
  os << "\nside conditions hold: " << (f.side_conditions_hold ? "yes" : "no") << "\n";
  for (const auto& n : f.notes) os << "  note: " << n << "\n";
  os << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::array<SrRow, 16> sr_truth_table() {
  std::array<SrRow, 16> rows{};
  for (int i = 0; i < 16; ++i) {
    SrRow& r = rows[static_cast<std::size_t>(i)];
    r.ra = !(i & 8);
    r.ra_plus = !(i & 4);
    r.rc = !(i & 2);
    r.rc_minus = !(i & 1);
    r.value = !(r.ra && r.ra_plus && r.rc) || r.rc_minus;
  }
  return rows;
}

std::string format_sr_table(const std::array<SrRow, 16>& rows) {
  std::ostringstream os;
  auto tf = [](bool b) { return b ? 't' : 'f'; };
  os << "(RA,RA+;RC,RC-)  SR\n";
  for (const SrRow& r : rows) {
    os << "(" << tf(r.ra) << "," << tf(r.ra_plus) << ";" << tf(r.rc) << "," << tf(r.rc_minus)
       << ")       " << (r.value ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace cfl
