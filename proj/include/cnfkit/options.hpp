#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "cnfkit/errors.hpp"
#include "cnfkit/formula.hpp"

namespace cnf {

/// Settings shared by all three conversion engines.
struct Options {
  /// Verify preconditions, termination measures, post relations and stack
  /// invariants while converting. Expensive; meant for tests.
  bool checked = false;
  /// Upper bound on the number of formula nodes one conversion may allocate.
  std::size_t max_nodes = 1'000'000;
  /// Upper bound on nested calls in the continuation-passing engine, which
  /// runs on the host call stack.
  std::size_t max_cps_depth = 20'000;
};

namespace detail {

/// Per-conversion state: allocates result nodes against the node budget.
/// Every engine allocates exactly the same nodes for the same input, so the
/// budget trips at the same point regardless of engine.
class Context {
 public:
  explicit Context(const Options& options) : options_(options) {}

  bool checked() const noexcept { return options_.checked; }
  const Options& options() const noexcept { return options_; }
  std::size_t allocated() const noexcept { return allocated_; }

  FormulaWI Var(const Formula& atom) {
    charge();
    return FormulaWI::Var(atom);
  }
  FormulaWI Const(bool value) {
    charge();
    return FormulaWI::Const(value);
  }
  FormulaWI Neg(FormulaWI operand) {
    charge();
    return FormulaWI::Neg(std::move(operand));
  }
  FormulaWI And(FormulaWI lhs, FormulaWI rhs) {
    charge();
    return FormulaWI::And(std::move(lhs), std::move(rhs));
  }
  FormulaWI Or(FormulaWI lhs, FormulaWI rhs) {
    charge();
    return FormulaWI::Or(std::move(lhs), std::move(rhs));
  }
  // Charges `n` nodes that an equivalent staged computation would have built.
  void charge(std::size_t n) {
    allocated_ += n;
    if (allocated_ > options_.max_nodes) throw OutputBudgetExceeded(options_.max_nodes);
  }
  // Charges a rebuild whose result is structurally identical to `same`, and
  // returns `same` instead of allocating.
  FormulaWI Rebuilt(const FormulaWI& same) {
    charge();
    return same;
  }

  // Continuation-passing engine call nesting.
  void enter() {
    if (++depth_ > options_.max_cps_depth) {
      --depth_;
      throw DepthLimitExceeded(options_.max_cps_depth);
    }
    if (depth_ > peak_depth_) peak_depth_ = depth_;
  }
  void leave() noexcept { --depth_; }
  std::size_t peak_depth() const noexcept { return peak_depth_; }

 private:
  void charge() {
    if (++allocated_ > options_.max_nodes) throw OutputBudgetExceeded(options_.max_nodes);
  }

  Options options_;
  std::size_t allocated_ = 0;
  std::size_t depth_ = 0;
  std::size_t peak_depth_ = 0;
};

}  // namespace detail
}  // namespace cnf
