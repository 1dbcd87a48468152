#pragma once

// Defunctionalized abstract machine for the pipeline.
//
// The machine state is {stage, mode, focus, stacks}. In Descend mode the focus
// is an input still to be converted; in Apply mode it is a converted value
// being handed to the top frame of the current stage's stack. One call to
// step() performs exactly one transition, so a run can be paused and resumed
// between transitions. The host call stack stays flat regardless of input depth.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnfkit/direct.hpp"
#include "cnfkit/errors.hpp"
#include "cnfkit/kont.hpp"
#include "cnfkit/options.hpp"
#include "cnfkit/post.hpp"
#include "cnfkit/syntax.hpp"
#include "cnfkit/wf.hpp"

namespace cnf::machine {

enum class Stage : std::uint8_t { ImplFree, Nnfc, Cnfc, Distr };
enum class Mode : std::uint8_t { Descend, Apply };

inline std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::ImplFree: return "impl_free";
    case Stage::Nnfc: return "nnfc";
    case Stage::Cnfc: return "cnfc";
    case Stage::Distr: return "distr";
  }
  return "?";
}

inline std::string_view to_string(Mode m) { return m == Mode::Descend ? "descend" : "apply"; }

struct FrameDescriptor {
  std::string frame;
  std::vector<std::string> payload;

  friend bool operator==(const FrameDescriptor&, const FrameDescriptor&) = default;
};

/// One machine transition, described before it is taken. `stack` lists the
/// current stage's frames top first and always ends with that stage's Id.
struct TraceEvent {
  std::size_t step = 0;
  Stage stage = Stage::ImplFree;
  Mode mode = Mode::Descend;
  std::string focus;
  std::vector<FrameDescriptor> stack;
  std::size_t depth = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using TraceSink = std::function<void(const TraceEvent&)>;

template <class Frame>
std::vector<std::string> frame_payload(const Frame& frame) {
  return std::visit(
      [](const auto& fr) {
        std::vector<std::string> out;
        if constexpr (requires { fr.unused; }) out.push_back(print(fr.unused));
        if constexpr (requires { fr.pending; }) out.push_back(print(fr.pending));
        if constexpr (requires { fr.pending1; }) {
          out.push_back(print(fr.pending1));
          out.push_back(print(fr.pending2));
        }
        if constexpr (requires { fr.done; }) out.push_back(print(fr.done));
        return out;
      },
      frame);
}

template <class Frame>
std::vector<FrameDescriptor> describe(const Kont<Frame>& k) {
  std::vector<FrameDescriptor> out;
  out.reserve(k.depth());
  for (const Frame& frame : k.frames())
    out.push_back({std::string(frame_name(frame)), frame_payload(frame)});
  return out;
}

class Machine {
 public:
  static Machine impl_free(Formula phi, const Options& options = {}) {
    Machine m(Stage::ImplFree, Stage::ImplFree, options);
    m.term_ = std::move(phi);
    m.begin_stage();
    return m;
  }

  static Machine nnfc(FormulaWI phi, const Options& options = {}) {
    Machine m(Stage::Nnfc, Stage::Nnfc, options);
    m.value_ = std::move(phi);
    m.begin_stage();
    return m;
  }

  static Machine cnfc(FormulaWI phi, const Options& options = {}) {
    Machine m(Stage::Cnfc, Stage::Cnfc, options);
    m.value_ = std::move(phi);
    m.begin_stage();
    return m;
  }

  static Machine distr(FormulaWI phi1, FormulaWI phi2, const Options& options = {}) {
    Machine m(Stage::Distr, Stage::Distr, options);
    m.value_ = std::move(phi1);
    m.value2_ = std::move(phi2);
    m.begin_stage();
    return m;
  }

  static Machine to_cnf(Formula phi, const Options& options = {}) {
    Machine m(Stage::ImplFree, Stage::Cnfc, options);
    m.term_ = std::move(phi);
    m.begin_stage();
    return m;
  }

  /// Trace events are only rendered while a sink is attached.
  void set_trace_sink(TraceSink sink) { sink_ = std::move(sink); }

  bool done() const noexcept { return done_; }
  std::size_t steps() const noexcept { return step_; }
  Stage stage() const noexcept { return stage_; }
  Mode mode() const noexcept { return mode_; }
  /// Nodes allocated so far, counted against Options::max_nodes.
  std::size_t allocated() const noexcept { return ctx_.allocated(); }

  const ImplKont& impl_stack() const noexcept { return impl_k_; }
  const NnfcKont& nnfc_stack() const noexcept { return nnfc_k_; }
  const DistrKont& distr_stack() const noexcept { return distr_k_; }
  const CnfcKont& cnfc_stack() const noexcept { return cnfc_k_; }

  const FormulaWI& result() const {
    if (!done_) throw std::logic_error("machine has not finished");
    return *value_;
  }

  /// The transition the next step() will take, as a trace event.
  TraceEvent peek() const {
    TraceEvent ev;
    ev.step = step_;
    ev.stage = stage_;
    ev.mode = mode_;
    if (stage_ == Stage::ImplFree && mode_ == Mode::Descend) {
      ev.focus = print(*term_);
    } else if (stage_ == Stage::Distr && mode_ == Mode::Descend) {
      ev.focus = print(*value_) + ", " + print(*value2_);
    } else {
      ev.focus = print(*value_);
    }
    switch (stage_) {
      case Stage::ImplFree: ev.stack = describe(impl_k_); break;
      case Stage::Nnfc: ev.stack = describe(nnfc_k_); break;
      case Stage::Cnfc: ev.stack = describe(cnfc_k_); break;
      case Stage::Distr: ev.stack = describe(distr_k_); break;
    }
    ev.depth = ev.stack.size();
    return ev;
  }

  void step() {
    if (done_) throw std::logic_error("step on a finished machine");
    if (ctx_.checked()) check_transition();
    if (sink_) sink_(peek());
    ++step_;
    switch (stage_) {
      case Stage::ImplFree: mode_ == Mode::Descend ? impl_descend() : impl_apply(); break;
      case Stage::Nnfc: mode_ == Mode::Descend ? nnfc_descend() : nnfc_apply(); break;
      case Stage::Cnfc: mode_ == Mode::Descend ? cnfc_descend() : cnfc_apply(); break;
      case Stage::Distr: mode_ == Mode::Descend ? distr_descend() : distr_apply(); break;
    }
  }

  const FormulaWI& run() {
    while (!done_) step();
    return *value_;
  }

 private:
  Machine(Stage first, Stage last, const Options& options)
      : stage_(first), last_(last), ctx_(options) {}

  // ---- transitions -------------------------------------------------------

  void impl_descend() {
    namespace f = impl_frame;
    const Formula phi = std::move(*term_);
    term_.reset();
    switch (phi.kind()) {
      case Connective::Neg:
        impl_k_.push(f::Neg{phi.operand()});
        term_ = phi.operand();
        return;
      case Connective::Or:
        impl_k_.push(f::OrLeft{phi.rhs()});
        term_ = phi.lhs();
        return;
      case Connective::And:
        impl_k_.push(f::AndLeft{phi.rhs()});
        term_ = phi.lhs();
        return;
      case Connective::Impl:
        impl_k_.push(f::ImplLeft{phi.rhs()});
        term_ = phi.lhs();
        return;
      case Connective::Const:
        apply(ctx_.Const(phi.value()));
        return;
      case Connective::Var:
        apply(ctx_.Var(phi));
        return;
    }
  }

  void impl_apply() {
    namespace f = impl_frame;
    if (impl_k_.at_id()) return end_stage();
    ImplFrame frame = impl_k_.pop();
    FormulaWI v = std::move(*value_);
    value_.reset();
    std::visit(overloaded{
                   [](f::Id&) {},
                   [&](f::Neg&) { apply(ctx_.Neg(std::move(v))); },
                   [&](f::OrLeft& fr) { descend_impl(std::move(fr.pending), f::OrRight{std::move(v)}); },
                   [&](f::OrRight& fr) { apply(ctx_.Or(std::move(fr.done), std::move(v))); },
                   [&](f::AndLeft& fr) { descend_impl(std::move(fr.pending), f::AndRight{std::move(v)}); },
                   [&](f::AndRight& fr) { apply(ctx_.And(std::move(fr.done), std::move(v))); },
                   [&](f::ImplLeft& fr) { descend_impl(std::move(fr.pending), f::ImplRight{std::move(v)}); },
                   [&](f::ImplRight& fr) {
                     FormulaWI negated = ctx_.Neg(std::move(fr.done));
                     apply(ctx_.Or(std::move(negated), std::move(v)));
                   },
               },
               frame);
  }

  void descend_impl(Formula next, ImplFrame frame) {
    impl_k_.push(std::move(frame));
    term_ = std::move(next);
    mode_ = Mode::Descend;
  }

  void nnfc_descend() {
    namespace f = nnfc_frame;
    const FormulaWI phi = *value_;
    if (phi.is(Connective::Neg)) {
      const FormulaWI& inner = phi.operand();
      if (inner.is(Connective::Neg)) {
        nnfc_k_.push(f::NegNeg{inner.operand()});
        value_ = inner.operand();
        return;
      }
      if (inner.is(Connective::And)) {
        nnfc_k_.push(f::NegAndLeft{inner.rhs()});
        value_ = ctx_.Neg(inner.lhs());
        return;
      }
      if (inner.is(Connective::Or)) {
        nnfc_k_.push(f::NegOrLeft{inner.rhs()});
        value_ = ctx_.Neg(inner.lhs());
        return;
      }
    } else if (phi.is(Connective::Or)) {
      nnfc_k_.push(f::OrLeft{phi.rhs()});
      value_ = phi.lhs();
      return;
    } else if (phi.is(Connective::And)) {
      nnfc_k_.push(f::AndLeft{phi.rhs()});
      value_ = phi.lhs();
      return;
    }
    mode_ = Mode::Apply;
  }

  void nnfc_apply() {
    namespace f = nnfc_frame;
    if (nnfc_k_.at_id()) return end_stage();
    NnfcFrame frame = nnfc_k_.pop();
    FormulaWI v = std::move(*value_);
    auto descend = [&](FormulaWI next, NnfcFrame pushed) {
      nnfc_k_.push(std::move(pushed));
      value_ = std::move(next);
      mode_ = Mode::Descend;
    };
    std::visit(overloaded{
                   [](f::Id&) {},
                   [&](f::NegNeg&) { value_ = std::move(v); },
                   [&](f::NegAndLeft& fr) { descend(ctx_.Neg(std::move(fr.pending)), f::NegAndRight{std::move(v)}); },
                   [&](f::NegAndRight& fr) { value_ = ctx_.Or(std::move(fr.done), std::move(v)); },
                   [&](f::NegOrLeft& fr) { descend(ctx_.Neg(std::move(fr.pending)), f::NegOrRight{std::move(v)}); },
                   [&](f::NegOrRight& fr) { value_ = ctx_.And(std::move(fr.done), std::move(v)); },
                   [&](f::AndLeft& fr) { descend(std::move(fr.pending), f::AndRight{std::move(v)}); },
                   [&](f::AndRight& fr) { value_ = ctx_.And(std::move(fr.done), std::move(v)); },
                   [&](f::OrLeft& fr) { descend(std::move(fr.pending), f::OrRight{std::move(v)}); },
                   [&](f::OrRight& fr) { value_ = ctx_.Or(std::move(fr.done), std::move(v)); },
               },
               frame);
  }

  void distr_descend() {
    namespace f = distr_frame;
    const FormulaWI phi1 = *value_;
    const FormulaWI phi2 = *value2_;
    if (phi1.is(Connective::And)) {
      distr_k_.push(f::Left{phi1.rhs(), phi2});
      value_ = phi1.lhs();
      return;
    }
    if (phi2.is(Connective::And)) {
      // The pending pair reuses the unsplit left operand.
      distr_k_.push(f::Left{phi1, phi2.rhs()});
      value2_ = phi2.lhs();
      return;
    }
    value2_.reset();
    apply(ctx_.Or(phi1, phi2));
  }

  void distr_apply() {
    namespace f = distr_frame;
    if (distr_k_.at_id()) {
      if (!nested_distr_) return finish();
      nested_distr_ = false;
      stage_ = Stage::Cnfc;
      mode_ = Mode::Apply;
      return;
    }
    DistrFrame frame = distr_k_.pop();
    FormulaWI v = std::move(*value_);
    std::visit(overloaded{
                   [](f::Id&) {},
                   [&](f::Left& fr) {
                     distr_k_.push(f::Right{std::move(v)});
                     value_ = std::move(fr.pending1);
                     value2_ = std::move(fr.pending2);
                     mode_ = Mode::Descend;
                   },
                   [&](f::Right& fr) { value_ = ctx_.And(std::move(fr.done), std::move(v)); },
               },
               frame);
  }

  void cnfc_descend() {
    namespace f = cnfc_frame;
    const FormulaWI phi = *value_;
    if (phi.is(Connective::Or)) {
      cnfc_k_.push(f::OrLeft{phi.rhs()});
      value_ = phi.lhs();
      return;
    }
    if (phi.is(Connective::And)) {
      cnfc_k_.push(f::AndLeft{phi.rhs()});
      value_ = phi.lhs();
      return;
    }
    mode_ = Mode::Apply;
  }

  void cnfc_apply() {
    namespace f = cnfc_frame;
    if (cnfc_k_.at_id()) return end_stage();
    CnfcFrame frame = cnfc_k_.pop();
    FormulaWI v = std::move(*value_);
    auto descend = [&](FormulaWI next, CnfcFrame pushed) {
      cnfc_k_.push(std::move(pushed));
      value_ = std::move(next);
      mode_ = Mode::Descend;
    };
    std::visit(overloaded{
                   [](f::Id&) {},
                   [&](f::OrLeft& fr) { descend(std::move(fr.pending), f::OrRight{std::move(v)}); },
                   [&](f::OrRight& fr) {
                     // Run a distribution sub-machine on a fresh stack, then come
                     // back here in Apply mode with its result.
                     nested_distr_ = true;
                     stage_ = Stage::Distr;
                     mode_ = Mode::Descend;
                     value_ = std::move(fr.done);
                     value2_ = std::move(v);
                   },
                   [&](f::AndLeft& fr) { descend(std::move(fr.pending), f::AndRight{std::move(v)}); },
                   [&](f::AndRight& fr) { value_ = ctx_.And(std::move(fr.done), std::move(v)); },
               },
               frame);
  }

  void apply(FormulaWI v) {
    value_ = std::move(v);
    mode_ = Mode::Apply;
  }

  // ---- stage boundaries --------------------------------------------------

  void begin_stage() {
    mode_ = Mode::Descend;
    if (!ctx_.checked()) return;
    switch (stage_) {
      case Stage::ImplFree: expected_ = direct::impl_free(*term_); break;
      case Stage::Nnfc: expected_ = direct::nnfc(*value_); break;
      case Stage::Cnfc:
        direct::detail::require_nnf(*value_, "cnfc_machine");
        expected_ = direct::cnfc(*value_);
        break;
      case Stage::Distr:
        direct::detail::require_cnf(*value_, "distr_machine");
        direct::detail::require_cnf(*value2_, "distr_machine");
        expected_ = direct::distr(*value_, *value2_);
        break;
    }
  }

  void end_stage() {
    if (ctx_.checked() && !(*value_ == *expected_))
      throw PostconditionViolation(std::string(to_string(stage_)) + " machine produced " +
                                   print(*value_) + ", expected " + print(*expected_));
    if (stage_ == last_) return finish();
    stage_ = stage_ == Stage::ImplFree ? Stage::Nnfc : Stage::Cnfc;
    begin_stage();
  }

  void finish() {
    if (ctx_.checked() && stage_ == Stage::Distr && !(*value_ == *expected_))
      throw PostconditionViolation("distr machine produced " + print(*value_) + ", expected " +
                                   print(*expected_));
    done_ = true;
  }

  // ---- checked mode ------------------------------------------------------

  [[noreturn]] void violated_post(std::string_view relation) const {
    throw PostconditionViolation(std::string(relation) + " fails at step " + std::to_string(step_) +
                                 " (" + std::string(to_string(mode_)) + " " + peek().focus + ")");
  }

  void require_stacks() const {
    if (!check_wf_cnfc_kont(cnfc_k_))
      throw StackInvariantViolation("cnfc stack ill-formed at step " + std::to_string(step_));
    if (!check_wf_distr_kont(distr_k_))
      throw StackInvariantViolation("distr stack ill-formed at step " + std::to_string(step_));
  }

  void check_transition() const {
    const bool descend = mode_ == Mode::Descend;
    switch (stage_) {
      case Stage::ImplFree:
        if (!descend && !check_impl_post(impl_k_, *value_, *expected_)) violated_post("impl_post");
        break;
      case Stage::Nnfc:
        if (!descend && !check_nnfc_post(nnfc_k_, *value_, *expected_)) violated_post("nnfc_post");
        break;
      case Stage::Cnfc: {
        if (descend) {
          direct::detail::require_nnf(*value_, "cnfc_machine");
        } else {
          direct::detail::require_cnf(*value_, "cnfc_machine");
        }
        require_stacks();
        if (!descend && !check_cnfc_post(cnfc_k_, *value_, *expected_)) violated_post("cnfc_post");
        break;
      }
      case Stage::Distr:
        direct::detail::require_cnf(*value_, "distr_machine");
        if (descend) direct::detail::require_cnf(*value2_, "distr_machine");
        require_stacks();
        break;
    }
  }

  Stage stage_;
  Stage last_;
  Mode mode_ = Mode::Descend;
  bool nested_distr_ = false;
  bool done_ = false;
  std::size_t step_ = 0;

  std::optional<Formula> term_;
  std::optional<FormulaWI> value_;
  std::optional<FormulaWI> value2_;

  ImplKont impl_k_;
  NnfcKont nnfc_k_;
  DistrKont distr_k_;
  CnfcKont cnfc_k_;

  cnf::detail::Context ctx_;
  std::optional<FormulaWI> expected_;
  TraceSink sink_;
};

namespace detail {
inline FormulaWI run(Machine m, const TraceSink& sink) {
  if (sink) m.set_trace_sink(sink);
  return m.run();
}
}  // namespace detail

inline FormulaWI impl_free_machine(const Formula& phi, const TraceSink& sink = {},
                                   const Options& options = {}) {
  return detail::run(Machine::impl_free(phi, options), sink);
}

inline FormulaWI nnfc_machine(const FormulaWI& phi, const TraceSink& sink = {},
                              const Options& options = {}) {
  return detail::run(Machine::nnfc(phi, options), sink);
}

inline FormulaWI distr_machine(const FormulaWI& phi1, const FormulaWI& phi2,
                               const TraceSink& sink = {}, const Options& options = {}) {
  return detail::run(Machine::distr(phi1, phi2, options), sink);
}

inline FormulaWI cnfc_machine(const FormulaWI& phi, const TraceSink& sink = {},
                              const Options& options = {}) {
  return detail::run(Machine::cnfc(phi, options), sink);
}

inline FormulaWI to_cnf_machine(const Formula& phi, const TraceSink& sink = {},
                                const Options& options = {}) {
  return detail::run(Machine::to_cnf(phi, options), sink);
}

}  // namespace cnf::machine
