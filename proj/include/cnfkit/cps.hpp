#pragma once

// Continuation-passing variants of the pipeline. Continuations are ordinary
// function values; every call in the engine is a tail call. C++ does not
// guarantee tail-call elimination, so the nesting runs on the host stack and is
// bounded by Options::max_cps_depth.

#include <functional>
#include <type_traits>
#include <utility>

#include "cnfkit/direct.hpp"
#include "cnfkit/formula.hpp"
#include "cnfkit/options.hpp"

namespace cnf::cps {

template <class R>
using Kont = std::function<R(FormulaWI)>;

namespace detail {

using cnf::detail::Context;

class DepthGuard {
 public:
  explicit DepthGuard(Context& ctx) : ctx_(ctx) { ctx_.enter(); }
  ~DepthGuard() { ctx_.leave(); }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;

 private:
  Context& ctx_;
};

// Each continuation is invoked at most once, so closures move their captures
// onward instead of copying the chain.

template <class R>
R impl_free(const Formula& phi, Kont<R> k, Context& ctx) {
  DepthGuard frame(ctx);
  switch (phi.kind()) {
    case Connective::Neg:
      return impl_free<R>(
          phi.operand(),
          [k = std::move(k), &ctx](FormulaWI con) mutable -> R {
            DepthGuard f(ctx);
            return k(ctx.Neg(std::move(con)));
          },
          ctx);
    case Connective::Or:
    case Connective::And:
    case Connective::Impl:
      return impl_free<R>(
          phi.lhs(),
          [k = std::move(k), phi, &ctx](FormulaWI con) mutable -> R {
            DepthGuard f(ctx);
            return impl_free<R>(
                phi.rhs(),
                [k = std::move(k), con = std::move(con), kind = phi.kind(),
                 &ctx](FormulaWI con1) mutable -> R {
                  DepthGuard g(ctx);
                  switch (kind) {
                    case Connective::Or:
                      return k(ctx.Or(std::move(con), std::move(con1)));
                    case Connective::And:
                      return k(ctx.And(std::move(con), std::move(con1)));
                    default: {
                      FormulaWI negated = ctx.Neg(std::move(con));
                      return k(ctx.Or(std::move(negated), std::move(con1)));
                    }
                  }
                },
                ctx);
          },
          ctx);
    case Connective::Const:
      return k(ctx.Const(phi.value()));
    case Connective::Var:
      return k(ctx.Var(phi));
  }
  throw std::logic_error("unreachable");
}

template <class R>
R nnfc(const FormulaWI& phi, Kont<R> k, Context& ctx);

// Shared shape of the four binary cases: convert `first`, then `second`, then
// join the two results with `is_and ? And : Or`.
template <class R>
R nnfc_pair(FormulaWI first, FormulaWI second, bool is_and, Kont<R> k, Context& ctx) {
  return nnfc<R>(
      first,
      [second = std::move(second), is_and, k = std::move(k), &ctx](FormulaWI con) mutable -> R {
        DepthGuard f(ctx);
        return nnfc<R>(
            second,
            [con = std::move(con), is_and, k = std::move(k), &ctx](FormulaWI con1) mutable -> R {
              DepthGuard g(ctx);
              return k(is_and ? ctx.And(std::move(con), std::move(con1))
                              : ctx.Or(std::move(con), std::move(con1)));
            },
            ctx);
      },
      ctx);
}

template <class R>
R nnfc(const FormulaWI& phi, Kont<R> k, Context& ctx) {
  DepthGuard frame(ctx);
  if (phi.is(Connective::Neg)) {
    const FormulaWI& inner = phi.operand();
    if (inner.is(Connective::Neg)) {
      return nnfc<R>(
          inner.operand(),
          [k = std::move(k), &ctx](FormulaWI con) mutable -> R {
            DepthGuard f(ctx);
            return k(std::move(con));
          },
          ctx);
    }
    if (inner.is(Connective::And) || inner.is(Connective::Or)) {
      FormulaWI left = ctx.Neg(inner.lhs());
      // The right negation is built when the left result arrives, matching the
      // allocation order of the other engines.
      return nnfc<R>(
          left,
          [rhs = inner.rhs(), is_and = inner.is(Connective::Or), k = std::move(k),
           &ctx](FormulaWI con) mutable -> R {
            DepthGuard f(ctx);
            return nnfc<R>(
                ctx.Neg(rhs),
                [con = std::move(con), is_and, k = std::move(k),
                 &ctx](FormulaWI con1) mutable -> R {
                  DepthGuard g(ctx);
                  return k(is_and ? ctx.And(std::move(con), std::move(con1))
                                  : ctx.Or(std::move(con), std::move(con1)));
                },
                ctx);
          },
          ctx);
    }
    return k(phi);
  }
  if (phi.is(Connective::Or) || phi.is(Connective::And))
    return nnfc_pair<R>(phi.lhs(), phi.rhs(), phi.is(Connective::And), std::move(k), ctx);
  return k(phi);
}

template <class R>
R distr(const FormulaWI& phi1, const FormulaWI& phi2, Kont<R> k, Context& ctx) {
  DepthGuard frame(ctx);
  if (ctx.checked()) {
    direct::detail::require_cnf(phi1, "distr_cps");
    direct::detail::require_cnf(phi2, "distr_cps");
  }
  // Both conjunction cases share one shape: distribute over (a1, b1), then over
  // (a2, b2), then conjoin.
  auto split = [&](FormulaWI a1, FormulaWI b1, FormulaWI a2, FormulaWI b2) -> R {
    return distr<R>(
        a1, b1,
        [a2 = std::move(a2), b2 = std::move(b2), k = std::move(k),
         &ctx](FormulaWI con) mutable -> R {
          DepthGuard f(ctx);
          return distr<R>(
              a2, b2,
              [con = std::move(con), k = std::move(k), &ctx](FormulaWI con1) mutable -> R {
                DepthGuard g(ctx);
                return k(ctx.And(std::move(con), std::move(con1)));
              },
              ctx);
        },
        ctx);
  };
  if (phi1.is(Connective::And)) return split(phi1.lhs(), phi2, phi1.rhs(), phi2);
  if (phi2.is(Connective::And)) return split(phi1, phi2.lhs(), phi1, phi2.rhs());
  return k(ctx.Or(phi1, phi2));
}

template <class R>
R cnfc(const FormulaWI& phi, Kont<R> k, Context& ctx) {
  DepthGuard frame(ctx);
  if (ctx.checked()) direct::detail::require_nnf(phi, "cnfc_cps");
  if (phi.is(Connective::Or) || phi.is(Connective::And)) {
    return cnfc<R>(
        phi.lhs(),
        [rhs = phi.rhs(), is_and = phi.is(Connective::And), k = std::move(k),
         &ctx](FormulaWI con) mutable -> R {
          DepthGuard f(ctx);
          return cnfc<R>(
              rhs,
              [con = std::move(con), is_and, k = std::move(k),
               &ctx](FormulaWI con1) mutable -> R {
                DepthGuard g(ctx);
                if (is_and) return k(ctx.And(std::move(con), std::move(con1)));
                return distr<R>(con, con1, std::move(k), ctx);
              },
              ctx);
        },
        ctx);
  }
  return k(phi);
}

template <class K>
using result_of_t = std::invoke_result_t<K&, FormulaWI>;

}  // namespace detail

/// Continuation-passing implication elimination: returns `k(direct::impl_free(phi))`.
template <class K>
detail::result_of_t<K> impl_free_cps(const Formula& phi, K&& k, const Options& options = {}) {
  using R = detail::result_of_t<K>;
  cnf::detail::Context ctx(options);
  return detail::impl_free<R>(phi, Kont<R>(std::forward<K>(k)), ctx);
}

/// Returns `k(direct::nnfc(phi))`.
template <class K>
detail::result_of_t<K> nnfc_cps(const FormulaWI& phi, K&& k, const Options& options = {}) {
  using R = detail::result_of_t<K>;
  cnf::detail::Context ctx(options);
  return detail::nnfc<R>(phi, Kont<R>(std::forward<K>(k)), ctx);
}

/// Returns `k(direct::distr(phi1, phi2))`.
template <class K>
detail::result_of_t<K> distr_cps(const FormulaWI& phi1, const FormulaWI& phi2, K&& k,
                                 const Options& options = {}) {
  using R = detail::result_of_t<K>;
  cnf::detail::Context ctx(options);
  return detail::distr<R>(phi1, phi2, Kont<R>(std::forward<K>(k)), ctx);
}

/// Returns `k(direct::cnfc(phi))`.
template <class K>
detail::result_of_t<K> cnfc_cps(const FormulaWI& phi, K&& k, const Options& options = {}) {
  using R = detail::result_of_t<K>;
  cnf::detail::Context ctx(options);
  return detail::cnfc<R>(phi, Kont<R>(std::forward<K>(k)), ctx);
}

/// The pipeline as three continuation-passing stages, each started with the
/// identity continuation. The node budget spans all three stages.
inline FormulaWI to_cnf_cps(const Formula& phi, const Options& options = {}) {
  cnf::detail::Context ctx(options);
  auto identity = [](FormulaWI x) { return x; };
  FormulaWI without_impl = detail::impl_free<FormulaWI>(phi, identity, ctx);
  FormulaWI nnf = detail::nnfc<FormulaWI>(without_impl, identity, ctx);
  return detail::cnfc<FormulaWI>(nnf, identity, ctx);
}

}  // namespace cnf::cps
