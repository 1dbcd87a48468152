#pragma once

// Executable post relations and stack well-formedness for the machine.
//
// A post relation `post(k, phi, result)` holds when feeding `phi` to the
// stack `k` must yield `result`: it folds the frames from the top down,
// finishing pending work with the direct-style functions, and compares at Id.

#include "cnfkit/direct.hpp"
#include "cnfkit/kont.hpp"
#include "cnfkit/wf.hpp"

namespace cnf::machine {

inline bool check_impl_post(const ImplKont& k, const FormulaWI& phi, const FormulaWI& result) {
  FormulaWI acc = phi;
  for (const ImplFrame& frame : k.frames()) {
    namespace f = impl_frame;
    bool at_id = false;
    std::visit(overloaded{
                   [&](const f::Id&) { at_id = true; },
                   [&](const f::Neg&) { acc = FormulaWI::Neg(acc); },
                   [&](const f::OrLeft& fr) { acc = FormulaWI::Or(acc, direct::impl_free(fr.pending)); },
                   [&](const f::OrRight& fr) { acc = FormulaWI::Or(fr.done, acc); },
                   [&](const f::AndLeft& fr) { acc = FormulaWI::And(acc, direct::impl_free(fr.pending)); },
                   [&](const f::AndRight& fr) { acc = FormulaWI::And(fr.done, acc); },
                   [&](const f::ImplLeft& fr) {
                     acc = FormulaWI::Or(FormulaWI::Neg(acc), direct::impl_free(fr.pending));
                   },
                   [&](const f::ImplRight& fr) { acc = FormulaWI::Or(FormulaWI::Neg(fr.done), acc); },
               },
               frame);
    if (at_id) break;
  }
  return acc == result;
}

inline bool check_nnfc_post(const NnfcKont& k, const FormulaWI& phi, const FormulaWI& result) {
  FormulaWI acc = phi;
  for (const NnfcFrame& frame : k.frames()) {
    namespace f = nnfc_frame;
    bool at_id = false;
    std::visit(
        overloaded{
            [&](const f::Id&) { at_id = true; },
            [&](const f::NegNeg&) {},
            [&](const f::NegAndLeft& fr) {
              acc = FormulaWI::Or(acc, direct::nnfc(FormulaWI::Neg(fr.pending)));
            },
            [&](const f::NegAndRight& fr) { acc = FormulaWI::Or(fr.done, acc); },
            [&](const f::NegOrLeft& fr) {
              acc = FormulaWI::And(acc, direct::nnfc(FormulaWI::Neg(fr.pending)));
            },
            [&](const f::NegOrRight& fr) { acc = FormulaWI::And(fr.done, acc); },
            [&](const f::AndLeft& fr) { acc = FormulaWI::And(acc, direct::nnfc(fr.pending)); },
            [&](const f::AndRight& fr) { acc = FormulaWI::And(fr.done, acc); },
            [&](const f::OrLeft& fr) { acc = FormulaWI::Or(acc, direct::nnfc(fr.pending)); },
            [&](const f::OrRight& fr) { acc = FormulaWI::Or(fr.done, acc); },
        },
        frame);
    if (at_id) break;
  }
  return acc == result;
}

inline bool check_cnfc_post(const CnfcKont& k, const FormulaWI& phi, const FormulaWI& result) {
  FormulaWI acc = phi;
  for (const CnfcFrame& frame : k.frames()) {
    namespace f = cnfc_frame;
    bool at_id = false;
    std::visit(overloaded{
                   [&](const f::Id&) { at_id = true; },
                   [&](const f::OrLeft& fr) { acc = direct::distr(acc, direct::cnfc(fr.pending)); },
                   [&](const f::OrRight& fr) { acc = direct::distr(fr.done, acc); },
                   [&](const f::AndLeft& fr) { acc = FormulaWI::And(acc, direct::cnfc(fr.pending)); },
                   [&](const f::AndRight& fr) { acc = FormulaWI::And(fr.done, acc); },
               },
               frame);
    if (at_id) break;
  }
  return acc == result;
}

/// Left frames hold unconverted NNF input; right frames hold converted CNF.
inline bool check_wf_cnfc_kont(const CnfcKont& k) {
  for (const CnfcFrame& frame : k.frames()) {
    namespace f = cnfc_frame;
    const bool ok = std::visit(
        overloaded{
            [](const f::Id&) { return true; },
            [](const f::OrLeft& fr) { return wf_negations_of_literals(fr.pending); },
            [](const f::AndLeft& fr) { return wf_negations_of_literals(fr.pending); },
            [](const f::OrRight& fr) {
              return wf_negations_of_literals(fr.done) && wf_conjunctions_of_disjunctions(fr.done);
            },
            [](const f::AndRight& fr) {
              return wf_negations_of_literals(fr.done) && wf_conjunctions_of_disjunctions(fr.done);
            },
        },
        frame);
    if (!ok) return false;
  }
  return true;
}

inline bool check_wf_distr_kont(const DistrKont& k) {
  auto cnf = [](const FormulaWI& phi) {
    return wf_negations_of_literals(phi) && wf_conjunctions_of_disjunctions(phi);
  };
  for (const DistrFrame& frame : k.frames()) {
    namespace f = distr_frame;
    const bool ok = std::visit(overloaded{
                                   [](const f::Id&) { return true; },
                                   [&](const f::Left& fr) { return cnf(fr.pending1) && cnf(fr.pending2); },
                                   [&](const f::Right& fr) { return cnf(fr.done); },
                               },
                               frame);
    if (!ok) return false;
  }
  return true;
}

}  // namespace cnf::machine
