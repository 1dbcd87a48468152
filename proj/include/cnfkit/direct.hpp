#pragma once

// Direct-style recursive pipeline: implication elimination, negation normal
// form, distribution, conjunctive normal form.

#include <string>

#include "cnfkit/errors.hpp"
#include "cnfkit/formula.hpp"
#include "cnfkit/options.hpp"
#include "cnfkit/syntax.hpp"
#include "cnfkit/wf.hpp"

namespace cnf::direct {
namespace detail {

using cnf::detail::Context;

inline void require_nnf(const FormulaWI& phi, const char* where) {
  if (!wf_negations_of_literals(phi))
    throw PreconditionViolation(std::string(where) + ": argument not in negation normal form: " +
                                print(phi));
}

inline void require_cnf(const FormulaWI& phi, const char* where) {
  require_nnf(phi, where);
  if (!wf_conjunctions_of_disjunctions(phi))
    throw PreconditionViolation(std::string(where) + ": argument not in conjunctive normal form: " +
                                print(phi));
}

inline void require_decrease(std::int64_t before, std::int64_t after, const char* where) {
  if (!(after < before))
    throw VariantViolation(std::string(where) + ": measure " + std::to_string(after) +
                           " does not decrease below " + std::to_string(before));
}

// True when rebuilding `phi` from `l` and `r` would reproduce it exactly.
inline bool unchanged(const FormulaWI& phi, const FormulaWI& l, const FormulaWI& r) {
  return l.shares_node_with(phi.lhs()) && r.shares_node_with(phi.rhs());
}

inline FormulaWI impl_free(const Formula& phi, Context& ctx) {
  switch (phi.kind()) {
    case Connective::Neg:
      return ctx.Neg(impl_free(phi.operand(), ctx));
    case Connective::Or: {
      FormulaWI l = impl_free(phi.lhs(), ctx);
      return ctx.Or(std::move(l), impl_free(phi.rhs(), ctx));
    }
    case Connective::And: {
      FormulaWI l = impl_free(phi.lhs(), ctx);
      return ctx.And(std::move(l), impl_free(phi.rhs(), ctx));
    }
    case Connective::Impl: {
      FormulaWI l = impl_free(phi.lhs(), ctx);
      FormulaWI negated = ctx.Neg(std::move(l));
      return ctx.Or(std::move(negated), impl_free(phi.rhs(), ctx));
    }
    case Connective::Const:
      return ctx.Const(phi.value());
    case Connective::Var:
      return ctx.Var(phi);
  }
  throw std::logic_error("unreachable");
}

inline FormulaWI nnfc(const FormulaWI& phi, Context& ctx) {
  if (phi.is(Connective::Neg)) {
    const FormulaWI& inner = phi.operand();
    if (inner.is(Connective::Neg)) {
      if (ctx.checked()) require_decrease(size(phi), size(inner.operand()), "nnfc");
      return nnfc(inner.operand(), ctx);
    }
    if (inner.is(Connective::And) || inner.is(Connective::Or)) {
      FormulaWI left = ctx.Neg(inner.lhs());
      if (ctx.checked()) require_decrease(size(phi), size(left), "nnfc");
      FormulaWI l = nnfc(left, ctx);
      FormulaWI right = ctx.Neg(inner.rhs());
      if (ctx.checked()) require_decrease(size(phi), size(right), "nnfc");
      FormulaWI r = nnfc(right, ctx);
      return inner.is(Connective::And) ? ctx.Or(std::move(l), std::move(r))
                                       : ctx.And(std::move(l), std::move(r));
    }
    return phi;
  }
  if (phi.is(Connective::Or) || phi.is(Connective::And)) {
    if (ctx.checked()) {
      require_decrease(size(phi), size(phi.lhs()), "nnfc");
      require_decrease(size(phi), size(phi.rhs()), "nnfc");
    }
    FormulaWI l = nnfc(phi.lhs(), ctx);
    FormulaWI r = nnfc(phi.rhs(), ctx);
    if (unchanged(phi, l, r)) return ctx.Rebuilt(phi);
    return phi.is(Connective::Or) ? ctx.Or(std::move(l), std::move(r))
                                  : ctx.And(std::move(l), std::move(r));
  }
  return phi;
}

// Left conjunction is split before right conjunction.
inline FormulaWI distr(const FormulaWI& phi1, const FormulaWI& phi2, Context& ctx) {
  std::int64_t measure = 0;
  if (ctx.checked()) {
    require_cnf(phi1, "distr");
    require_cnf(phi2, "distr");
    measure = size(phi1) + size(phi2);
  }
  if (phi1.is(Connective::And)) {
    if (ctx.checked()) {
      require_decrease(measure, size(phi1.lhs()) + size(phi2), "distr");
      require_decrease(measure, size(phi1.rhs()) + size(phi2), "distr");
    }
    FormulaWI l = distr(phi1.lhs(), phi2, ctx);
    return ctx.And(std::move(l), distr(phi1.rhs(), phi2, ctx));
  }
  if (phi2.is(Connective::And)) {
    if (ctx.checked()) {
      require_decrease(measure, size(phi1) + size(phi2.lhs()), "distr");
      require_decrease(measure, size(phi1) + size(phi2.rhs()), "distr");
    }
    FormulaWI l = distr(phi1, phi2.lhs(), ctx);
    return ctx.And(std::move(l), distr(phi1, phi2.rhs(), ctx));
  }
  return ctx.Or(phi1, phi2);
}

inline FormulaWI cnfc(const FormulaWI& phi, Context& ctx) {
  if (ctx.checked()) require_nnf(phi, "cnfc");
  if (phi.is(Connective::Or)) {
    FormulaWI l = cnfc(phi.lhs(), ctx);
    FormulaWI r = cnfc(phi.rhs(), ctx);
    if (!ctx.checked() && !l.is(Connective::And) && !r.is(Connective::And) && unchanged(phi, l, r))
      return ctx.Rebuilt(phi);
    return distr(l, r, ctx);
  }
  if (phi.is(Connective::And)) {
    FormulaWI l = cnfc(phi.lhs(), ctx);
    FormulaWI r = cnfc(phi.rhs(), ctx);
    if (unchanged(phi, l, r)) return ctx.Rebuilt(phi);
    return ctx.And(std::move(l), std::move(r));
  }
  return phi;
}

// cnfc(nnfc(impl_free(phi))) in one pass, without the intermediate trees.
// Charges exactly what the three stages would: `positive` for phi, and
// `negative` for a subformula below an already charged `~`.
inline FormulaWI negative(const Formula& phi, Context& ctx);

inline FormulaWI positive(const Formula& phi, Context& ctx) {
  switch (phi.kind()) {
    case Connective::Var:
      return ctx.Var(phi);
    case Connective::Const:
      return ctx.Const(phi.value());
    case Connective::Neg:
      ctx.charge(1);
      return negative(phi.operand(), ctx);
    case Connective::Impl: {
      ctx.charge(3);
      FormulaWI l = negative(phi.lhs(), ctx);
      return distr(l, positive(phi.rhs(), ctx), ctx);
    }
    case Connective::And: {
      ctx.charge(2);
      FormulaWI l = positive(phi.lhs(), ctx);
      return ctx.And(std::move(l), positive(phi.rhs(), ctx));
    }
    case Connective::Or: {
      ctx.charge(2);
      FormulaWI l = positive(phi.lhs(), ctx);
      return distr(l, positive(phi.rhs(), ctx), ctx);
    }
  }
  throw std::logic_error("unreachable");
}

inline FormulaWI negative(const Formula& phi, Context& ctx) {
  switch (phi.kind()) {
    case Connective::Var:
      return FormulaWI::Neg(ctx.Var(phi));
    case Connective::Const:
      return FormulaWI::Neg(ctx.Const(phi.value()));
    case Connective::Neg:
      ctx.charge(1);
      return positive(phi.operand(), ctx);
    case Connective::Impl: {
      ctx.charge(5);
      FormulaWI l = positive(phi.lhs(), ctx);
      return ctx.And(std::move(l), negative(phi.rhs(), ctx));
    }
    case Connective::And: {
      ctx.charge(4);
      FormulaWI l = negative(phi.lhs(), ctx);
      return distr(l, negative(phi.rhs(), ctx), ctx);
    }
    case Connective::Or: {
      ctx.charge(4);
      FormulaWI l = negative(phi.lhs(), ctx);
      return ctx.And(std::move(l), negative(phi.rhs(), ctx));
    }
  }
  throw std::logic_error("unreachable");
}

inline FormulaWI to_cnf(const Formula& phi, Context& ctx) {
  if (!ctx.checked()) return positive(phi, ctx);
  FormulaWI without_impl = impl_free(phi, ctx);
  FormulaWI nnf = nnfc(without_impl, ctx);
  return cnfc(nnf, ctx);
}

}  // namespace detail

/// Replaces every `a -> b` with `~a | b`; homomorphic elsewhere.
inline FormulaWI impl_free(const Formula& phi, const Options& options = {}) {
  cnf::detail::Context ctx(options);
  return detail::impl_free(phi, ctx);
}

/// Negation normal form by double-negation elimination and De Morgan.
inline FormulaWI nnfc(const FormulaWI& phi, const Options& options = {}) {
  cnf::detail::Context ctx(options);
  return detail::nnfc(phi, ctx);
}

/// Distributes `phi1 | phi2` over the conjunctions of both operands.
/// Both operands must be in negation and conjunctive normal form.
inline FormulaWI distr(const FormulaWI& phi1, const FormulaWI& phi2, const Options& options = {}) {
  cnf::detail::Context ctx(options);
  return detail::distr(phi1, phi2, ctx);
}

/// Conjunctive normal form of a formula already in negation normal form.
inline FormulaWI cnfc(const FormulaWI& phi, const Options& options = {}) {
  cnf::detail::Context ctx(options);
  return detail::cnfc(phi, ctx);
}

/// Full pipeline: `cnfc(nnfc(impl_free(phi)))`.
inline FormulaWI to_cnf(const Formula& phi, const Options& options = {}) {
  cnf::detail::Context ctx(options);
  return detail::to_cnf(phi, ctx);
}

}  // namespace cnf::direct
