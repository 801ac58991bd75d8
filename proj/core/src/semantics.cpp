#include "cfl/semantics.hpp"

#include <sstream>

#include "cfl/error.hpp"

namespace cfl {

namespace {

bool eval(const Model& m, const World& w, const Formula& f, const CfOptions& opts, bool at_root);

bool strict_global(const Model& m, const Formula& a, const Formula& b, const CfOptions& opts) {
  for (const World& w : m.possible().worlds()) {
    if (eval(m, w, a, opts, false) && !eval(m, w, b, opts, false)) return false;
  }
  return true;
}

bool eval(const Model& m, const World& w, const Formula& f, const CfOptions& opts, bool at_root) {
  switch (f.kind()) {
    case Connective::Atom:
      return satisfies_atom(w, f.as_atom());
    case Connective::Not:
      return !eval(m, w, f.operand(), opts, false);
    case Connective::And:
      return eval(m, w, f.lhs(), opts, false) && eval(m, w, f.rhs(), opts, false);
    case Connective::Or:
      return eval(m, w, f.lhs(), opts, false) || eval(m, w, f.rhs(), opts, false);
    case Connective::Implies:
      return !eval(m, w, f.lhs(), opts, false) || eval(m, w, f.rhs(), opts, false);
    case Connective::Strict:
      if (!at_root && !opts.allow_nested_strict) {
        throw SemanticError("strict conditional below the root: " + print(f));
      }
      return strict_global(m, f.lhs(), f.rhs(), opts);
    case Connective::Counterfactual: {
      const Formula& a = f.lhs();
      if (!a.is_atom()) {
        throw SemanticError("counterfactual antecedent must be a choice atom: " + print(a));
      }
      const WorldSet reach = accessible(m, w, a.as_atom(), opts);
      if (opts.quantifier == Quantifier::Every) {
        for (const World& v : reach.worlds()) {
          if (!eval(m, v, f.rhs(), opts, false)) return false;
        }
        return true;
      }
      for (const World& v : reach.worlds()) {
        if (eval(m, v, f.rhs(), opts, false)) return true;
      }
      return false;
    }
  }
  return false;
}

void require_possible(const Model& m, const World& w) {
  if (!m.is_possible(w)) {
    throw SemanticError("world " + to_string(w) + " is not physically possible in this model");
  }
}

}  // namespace

WorldSet accessible(const Model& m, const World& w, Atom choice, const CfOptions& opts) {
  const Region later = opts.order.later();
  const Region earlier = opts.order.earlier;
  if (!choice.is_choice()) {
    throw SemanticError("counterfactual antecedent " + to_string(choice) +
                        " is an outcome atom; only choices can be imposed");
  }
  if (choice.region() != later) {
    throw SemanticError("counterfactual antecedent " + to_string(choice) +
                        " is a choice in the earlier region; only later-region choices can be "
                        "imposed");
  }
  require_possible(m, w);
  WorldSet out;
  if (opts.self_world_when_consistent && satisfies_atom(w, choice)) {
    out.insert(w);
    return out;
  }
  for (const World& v : m.possible().worlds()) {
    if (v.choice(later) == choice.setting() && v.choice(earlier) == w.choice(earlier) &&
        v.outcome(earlier) == w.outcome(earlier)) {
      out.insert(v);
    }
  }
  return out;
}

bool eval_at(const Model& m, const World& w, const Formula& f, const CfOptions& opts) {
  require_possible(m, w);
  return eval(m, w, f, opts, true);
}

WorldSet extension(const Model& m, const Formula& f, const CfOptions& opts) {
  WorldSet out;
  for (const World& w : m.possible().worlds()) {
    if (eval(m, w, f, opts, false)) out.insert(w);
  }
  return out;
}

GlobalVerdict holds_globally(const Model& m, const Formula& f, const CfOptions& opts) {
  GlobalVerdict v;
  for (const World& w : m.possible().worlds()) {
    bool ok;
    if (f.kind() == Connective::Strict) {
      ok = !eval(m, w, f.lhs(), opts, false) || eval(m, w, f.rhs(), opts, false);
    } else {
      ok = eval(m, w, f, opts, true);
    }
    if (!ok) v.counterexamples.insert(w);
  }
  v.holds = v.counterexamples.empty();
  v.witness = v.counterexamples.first();
  return v;
}

GlobalVerdict holds_somewhere(const Model& m, const Formula& f, const CfOptions& opts) {
  GlobalVerdict v;
  WorldSet satisfying;
  for (const World& w : m.possible().worlds()) {
    bool ok;
    if (f.kind() == Connective::Strict) {
      ok = eval(m, w, f.lhs(), opts, false) && eval(m, w, f.rhs(), opts, false);
    } else {
      ok = eval(m, w, f, opts, true);
    }
    if (ok) {
      satisfying.insert(w);
    } else {
      v.counterexamples.insert(w);
    }
  }
  v.holds = !satisfying.empty();
  v.witness = satisfying.first();
  return v;
}

bool strict_by_intersection(const Model& m, const Formula& a, const Formula& b,
                            const CfOptions& opts) {
  return (extension(m, a, opts) & extension(m, Formula::negation(b), opts)).empty();
}

bool strict_by_subset(const Model& m, const Formula& a, const Formula& b, const CfOptions& opts) {
  return extension(m, a, opts).is_subset_of(extension(m, b, opts));
}

// ---------------------------------------------------------------------------

const Formula& sr_statement() {
  static const Formula sr = parse("(R2 & R2+) -> (R1 []-> R1 & R1-)");
  return sr;
}

TheoremReport check_theorem(const Model& m, const CfOptions& opts) {
  static const Formula line5 = parse("L2 => ((R2 & R2+) -> (R1 []-> R1 & R1-))");
  static const Formula line6 = parse("L1 => ((R2 & R2+) -> (R1 []-> R1 & R1-))");

  TheoremReport r;
  r.hardy_violations = hardy_violations(m);
  r.line5 = holds_globally(m, line5, opts);
  r.line6 = holds_globally(m, line6, opts);

  r.sr_true_on_l2_worlds = true;
  for (const World& w : m.possible().worlds()) {
    const bool sr = eval(m, w, sr_statement(), opts, true);
    if (w.left_choice == Setting::Two && !sr) r.sr_true_on_l2_worlds = false;
    if (w.left_choice == Setting::One && !sr && !r.sr_l1_falsifier) r.sr_l1_falsifier = w;
  }
  return r;
}

std::string format_theorem_report(const TheoremReport& r) {
  std::ostringstream os;
  auto worlds = [](const WorldSet& s) {
    std::string out;
    for (const World& w : s.worlds()) {
      if (!out.empty()) out += "; ";
      out += "(" + to_string(w) + ")";
    }
    return out;
  };
  if (r.hardy_conforming()) {
    os << "model: Hardy-conforming\n";
  } else {
    os << "model: NOT Hardy-conforming (evaluation continues)\n";
    for (const auto& v : r.hardy_violations) os << "  " << v << "\n";
  }
  os << "line 5: " << (r.line5.holds ? "true" : "false");
  if (!r.line5.holds) os << "  counterexamples: " << worlds(r.line5.counterexamples);
  os << "\n";
  os << "line 6: " << (r.line6.holds ? "true" : "false");
  if (r.line6.witness) {
    os << "  witness: (" << to_string(*r.line6.witness)
       << ")  counterexamples: " << worlds(r.line6.counterexamples);
  }
  os << "\n";
  os << "SR = " << print(sr_statement()) << "\n";
  os << "  true at every possible L2 world: " << (r.sr_true_on_l2_worlds ? "yes" : "no") << "\n";
  os << "  false at some possible L1 world: ";
  if (r.sr_l1_falsifier) {
    os << "yes (" << to_string(*r.sr_l1_falsifier) << ")\n";
  } else {
    os << "no\n";
  }
  os << "SR depends on the choice in L: " << (r.sr_depends_on_left_choice() ? "yes" : "no") << "\n";
  os << "result: " << (r.passed() ? "PASS" : "FAIL") << " (line 5 true and line 6 false)\n";
  return os.str();
}

}  // namespace cfl
