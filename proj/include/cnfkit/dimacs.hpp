#pragma once

// DIMACS CNF export.
//
// Atoms are numbered 1..n in first-occurrence order. Constants are folded here
// and only here: a clause containing `true` (or `~false`) is dropped, a `false`
// (or `~true`) literal is dropped from its clause. A clause left empty makes
// the whole document the canonical unsatisfiable one: a single empty clause.

#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cnfkit/errors.hpp"
#include "cnfkit/formula.hpp"
#include "cnfkit/oracle.hpp"
#include "cnfkit/wf.hpp"

namespace cnf {

struct DimacsDocument {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
  /// Name of variable i+1; empty when read back from text.
  std::vector<std::string> names;

  std::string str() const {
    std::string out = "p cnf " + std::to_string(num_vars) + " " + std::to_string(clauses.size()) + "\n";
    for (const auto& clause : clauses) {
      for (int lit : clause) out += std::to_string(lit) + " ";
      out += "0\n";
    }
    return out;
  }
};

namespace detail {

// Appends the literals of one clause; returns false if the clause is
// satisfied by a constant and must be dropped.
inline bool flatten_clause(const FormulaWI& f, const std::vector<std::string>& names,
                           std::vector<int>& clause) {
  switch (f.kind()) {
    case Connective::Or:
      return flatten_clause(f.lhs(), names, clause) && flatten_clause(f.rhs(), names, clause);
    case Connective::Const:
      return !f.value();
    case Connective::Var:
      clause.push_back(static_cast<int>(std::find(names.begin(), names.end(), f.name()) - names.begin()) + 1);
      return true;
    case Connective::Neg: {
      const FormulaWI& atom = f.operand();
      if (atom.is(Connective::Const)) return atom.value();
      clause.push_back(-(static_cast<int>(std::find(names.begin(), names.end(), atom.name()) - names.begin()) + 1));
      return true;
    }
    default:
      throw NotInCNF("conjunction below a disjunction");
  }
}

inline void flatten_conjunction(const FormulaWI& f, const std::vector<std::string>& names,
                                std::vector<std::vector<int>>& clauses, bool& unsat) {
  if (f.is(Connective::And)) {
    flatten_conjunction(f.lhs(), names, clauses, unsat);
    flatten_conjunction(f.rhs(), names, clauses, unsat);
    return;
  }
  std::vector<int> clause;
  if (!flatten_clause(f, names, clause)) return;
  if (clause.empty()) unsat = true;
  clauses.push_back(std::move(clause));
}

}  // namespace detail

/// Requires `phi` in negation and conjunctive normal form; throws NotInCNF otherwise.
inline DimacsDocument to_dimacs(const FormulaWI& phi) {
  if (!wf_negations_of_literals(phi)) throw NotInCNF("not in negation normal form: negation above a connective");
  if (!wf_conjunctions_of_disjunctions(phi)) throw NotInCNF("not in conjunctive normal form: conjunction below a disjunction");

  DimacsDocument doc;
  doc.names = atoms(phi);
  doc.num_vars = doc.names.size();
  bool unsat = false;
  detail::flatten_conjunction(phi, doc.names, doc.clauses, unsat);
  if (unsat) doc.clauses.assign(1, {});
  return doc;
}

/// Reads back the documents produced by to_dimacs (comment lines allowed).
inline DimacsDocument parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  DimacsDocument doc;
  std::string line;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> clause;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    if (line[0] == 'p') {
      std::string p, format;
      if (header || !(fields >> p >> format >> doc.num_vars >> declared) || format != "cnf")
        throw Error("bad DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw Error("DIMACS clause before header");
    int lit = 0;
    while (fields >> lit) {
      if (lit == 0) {
        doc.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        if (static_cast<std::size_t>(std::abs(lit)) > doc.num_vars)
          throw Error("DIMACS literal out of range: " + std::to_string(lit));
        clause.push_back(lit);
      }
    }
    if (!fields.eof()) throw Error("bad DIMACS clause line: " + line);
  }
  if (!header) throw Error("missing DIMACS header");
  if (!clause.empty()) throw Error("unterminated DIMACS clause");
  if (doc.clauses.size() != declared) throw Error("DIMACS clause count does not match header");
  return doc;
}

/// The clause set as a formula: `true` for no clauses, `false` for an empty clause.
inline FormulaWI clauses_to_formula(const DimacsDocument& doc, const std::vector<std::string>& names) {
  auto literal = [&](int lit) {
    FormulaWI atom = FormulaWI::Var(names.at(static_cast<std::size_t>(std::abs(lit)) - 1));
    return lit < 0 ? FormulaWI::Neg(std::move(atom)) : atom;
  };
  std::optional<FormulaWI> cnf;
  for (const auto& clause : doc.clauses) {
    std::optional<FormulaWI> disjunction;
    for (int lit : clause)
      disjunction = disjunction ? FormulaWI::Or(std::move(*disjunction), literal(lit)) : literal(lit);
    FormulaWI c = disjunction ? std::move(*disjunction) : FormulaWI::Const(false);
    cnf = cnf ? FormulaWI::And(std::move(*cnf), std::move(c)) : std::move(c);
  }
  return cnf ? std::move(*cnf) : FormulaWI::Const(true);
}

}  // namespace cnf
