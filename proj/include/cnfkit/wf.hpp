#pragma once

// Well-formedness predicates for the normal forms produced by the pipeline.
// Each is a total structural recursion over FormulaWI.

#include "cnfkit/formula.hpp"

namespace cnf {

/// Negation normal form: every Neg guards a Var or a Const.
inline bool wf_negations_of_literals(const FormulaWI& f) {
  switch (f.kind()) {
    case Connective::Neg: {
      const FormulaWI& inner = f.operand();
      const bool literal = !inner.is(Connective::Or) && !inner.is(Connective::And) &&
                           !inner.is(Connective::Neg);
      return literal && wf_negations_of_literals(inner);
    }
    case Connective::Or:
    case Connective::And:
      return wf_negations_of_literals(f.lhs()) && wf_negations_of_literals(f.rhs());
    default:
      return true;
  }
}

/// No And anywhere below the root.
inline bool wf_disjunctions(const FormulaWI& f) {
  switch (f.kind()) {
    case Connective::And:
      return false;
    case Connective::Or:
      return wf_disjunctions(f.lhs()) && wf_disjunctions(f.rhs());
    case Connective::Neg:
      return wf_disjunctions(f.operand());
    default:
      return true;
  }
}

/// Conjunctive normal form shape: no And below any Or.
inline bool wf_conjunctions_of_disjunctions(const FormulaWI& f) {
  switch (f.kind()) {
    case Connective::And:
      return wf_conjunctions_of_disjunctions(f.lhs()) && wf_conjunctions_of_disjunctions(f.rhs());
    case Connective::Or:
      return wf_disjunctions(f.lhs()) && wf_disjunctions(f.rhs());
    case Connective::Neg:
      return wf_conjunctions_of_disjunctions(f.operand());
    default:
      return true;
  }
}

/// Instance of the lemma used by distribution: a CNF, NNF formula whose root is
/// not a conjunction is a single clause. Vacuously true when an antecedent fails.
inline bool check_aux_lemma(const FormulaWI& x) {
  const bool antecedents =
      wf_conjunctions_of_disjunctions(x) && wf_negations_of_literals(x) && !x.is(Connective::And);
  return !antecedents || wf_disjunctions(x);
}

/// Instance of the positivity lemma for `size`.
inline bool check_size_nonneg(const FormulaWI& x) { return size(x) >= 0; }

}  // namespace cnf
