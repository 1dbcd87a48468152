#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cnfkit/cnfkit.hpp"
#include "support/build.hpp"
#include "support/corpus.hpp"
#include "support/replay.hpp"

namespace {

using namespace cnf;
using namespace cnf::machine;
namespace g = cnf::testing::g;
using namespace cnf::testing::h;
using cnf::testing::collect;

Options checked() {
  Options o;
  o.checked = true;
  return o;
}

// Frames in the order they first appear on top of the stack.
std::vector<std::string> frames_pushed(const std::vector<TraceEvent>& trace) {
  std::vector<std::string> out;
  for (const auto& ev : trace) {
    const std::string& top = ev.stack.front().frame;
    if (ev.depth > 1 && std::find(out.begin(), out.end(), top) == out.end()) out.push_back(top);
  }
  return out;
}

TEST(ImplFreeMachine, VarTakesTwoTransitions) {
  std::vector<TraceEvent> trace;
  EXPECT_EQ(impl_free_machine(g::V("p"), collect(trace)), V("p"));
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0].mode, Mode::Descend);
  EXPECT_EQ(trace[0].focus, "p");
  EXPECT_EQ(trace[1].mode, Mode::Apply);
  EXPECT_EQ(trace[1].stack, (std::vector<FrameDescriptor>{{"impl.Id", {}}}));
}

TEST(ImplFreeMachine, Implication) {
  EXPECT_EQ(impl_free_machine(g::I(g::V("p"), g::V("q")), {}, checked()), O(N(V("p")), V("q")));
}

TEST(ImplFreeMachine, NegationFramePushedThenPopped) {
  std::vector<TraceEvent> trace;
  EXPECT_EQ(impl_free_machine(g::N(g::V("p")), collect(trace)), N(V("p")));
  ASSERT_EQ(trace.size(), 4u);
  EXPECT_EQ(trace[1].stack.front(), (FrameDescriptor{"impl.Neg", {"p"}}));
  EXPECT_EQ(trace[2].stack.front().frame, "impl.Neg");
  EXPECT_EQ(trace[3].stack.size(), 1u);
  EXPECT_EQ(trace[3].focus, "~p");
}

TEST(NnfcMachine, Examples) {
  EXPECT_EQ(nnfc_machine(N(N(V("p"))), {}, checked()), V("p"));
  EXPECT_EQ(nnfc_machine(V("p"), {}, checked()), V("p"));
  std::vector<TraceEvent> trace;
  EXPECT_EQ(nnfc_machine(N(O(V("p"), V("q"))), collect(trace), checked()), A(N(V("p")), N(V("q"))));
  EXPECT_EQ(frames_pushed(trace), (std::vector<std::string>{"nnfc.NegOrLeft", "nnfc.NegOrRight"}));
}

TEST(DistrMachine, Examples) {
  EXPECT_EQ(distr_machine(V("a"), A(V("b"), V("c")), {}, checked()), A(O(V("a"), V("b")), O(V("a"), V("c"))));
  EXPECT_EQ(distr_machine(V("a"), V("b"), {}, checked()), O(V("a"), V("b")));
  EXPECT_EQ(distr_machine(A(V("a"), V("b")), A(V("c"), V("d")), {}, checked()),
            A(A(O(V("a"), V("c")), O(V("a"), V("d"))), A(O(V("b"), V("c")), O(V("b"), V("d")))));
}

TEST(DistrMachine, FocusShowsBothOperands) {
  std::vector<TraceEvent> trace;
  distr_machine(V("a"), A(V("b"), V("c")), collect(trace));
  EXPECT_EQ(trace[0].stage, Stage::Distr);
  EXPECT_EQ(trace[0].focus, "a, b & c");
  EXPECT_EQ(trace[1].stack.front(), (FrameDescriptor{"distr.Left", {"a", "c"}}));
}

TEST(DistrMachine, CheckedModeRejectsNonCnf) {
  EXPECT_THROW(distr_machine(O(V("a"), A(V("b"), V("c"))), V("d"), {}, checked()), PreconditionViolation);
  EXPECT_NO_THROW(distr_machine(O(V("a"), A(V("b"), V("c"))), V("d")));
}

TEST(CnfcMachine, Examples) {
  EXPECT_EQ(cnfc_machine(O(V("p"), A(V("q"), V("r"))), {}, checked()), A(O(V("p"), V("q")), O(V("p"), V("r"))));
  EXPECT_EQ(cnfc_machine(V("p"), {}, checked()), V("p"));
  EXPECT_EQ(cnfc_machine(A(V("p"), O(V("q"), V("r"))), {}, checked()), A(V("p"), O(V("q"), V("r"))));
}

TEST(CnfcMachine, CheckedModeRequiresNnf) {
  EXPECT_THROW(cnfc_machine(N(A(V("p"), V("q"))), {}, checked()), PreconditionViolation);
  EXPECT_THROW(cnfc_machine(A(V("p"), N(N(V("q")))), {}, checked()), PreconditionViolation);
}

TEST(CnfcMachine, DistributionRunsAsNestedStage) {
  std::vector<TraceEvent> trace;
  cnfc_machine(O(V("p"), A(V("q"), V("r"))), collect(trace));
  bool saw_distr = false;
  for (const auto& ev : trace) saw_distr |= ev.stage == Stage::Distr;
  EXPECT_TRUE(saw_distr);
  EXPECT_EQ(trace.back().stage, Stage::Cnfc);
  EXPECT_EQ(trace.back().mode, Mode::Apply);
}

struct PipelineCase {
  Formula input;
  FormulaWI expected;
  std::size_t steps;
};

TEST(ToCnfMachine, ExamplesWithTraceLengths) {
  const std::vector<PipelineCase> cases = {
      {g::N(g::I(g::V("p"), g::V("q"))), A(V("p"), N(V("q"))), 22},
      {g::C(true), C(true), 6},
      {g::I(g::V("p"), g::V("q")), O(N(V("p")), V("q")), 20},
  };
  for (const auto& c : cases) {
    std::vector<TraceEvent> trace;
    EXPECT_EQ(to_cnf_machine(c.input, collect(trace), checked()), c.expected);
    EXPECT_EQ(trace.size(), c.steps) << print(c.input);
    EXPECT_EQ(cnf::testing::Replayer(true).replay(trace), print(c.expected));
  }
}

TEST(ToCnfMachine, StageBreakdownOfImplicationTrace) {
  std::vector<TraceEvent> trace;
  to_cnf_machine(g::I(g::V("p"), g::V("q")), collect(trace));
  auto count = [&](Stage s) { return std::count_if(trace.begin(), trace.end(), [s](const TraceEvent& e) { return e.stage == s; }); };
  EXPECT_EQ(count(Stage::ImplFree), 6);
  EXPECT_EQ(count(Stage::Nnfc), 6);
  EXPECT_EQ(count(Stage::Cnfc), 6);
  EXPECT_EQ(count(Stage::Distr), 2);
  EXPECT_EQ(trace[17].focus, "~p, q");
}

TEST(Machine, PauseInspectResume) {
  Machine m = Machine::to_cnf(parse("(p & q) | r"));
  EXPECT_FALSE(m.done());
  EXPECT_THROW((void)m.result(), std::logic_error);
  while (m.stage() != Stage::Cnfc) m.step();
  const TraceEvent paused = m.peek();
  EXPECT_EQ(paused.focus, "p & q | r");
  EXPECT_EQ(paused.mode, Mode::Descend);
  const std::size_t at = m.steps();
  m.run();
  EXPECT_GT(m.steps(), at);
  EXPECT_EQ(m.result(), A(O(V("p"), V("r")), O(V("q"), V("r"))));
  EXPECT_THROW(m.step(), std::logic_error);
}

TEST(Machine, PeekMatchesEmittedEvent) {
  Machine m = Machine::to_cnf(parse("~(a | b -> c & ~d)"));
  std::vector<TraceEvent> trace;
  m.set_trace_sink(collect(trace));
  while (!m.done()) {
    const TraceEvent expected = m.peek();
    m.step();
    ASSERT_EQ(trace.back(), expected);
  }
}

TEST(Machine, DeepNegationChainRunsInConstantHostStack) {
  Formula f = g::V("p");
  for (int i = 0; i < 100'000; ++i) f = g::N(std::move(f));
  EXPECT_EQ(to_cnf_machine(f), V("p"));
  f = g::N(std::move(f));
  EXPECT_EQ(to_cnf_machine(f), N(V("p")));
}

TEST(Machine, DeepConjunctionSpineRunsInConstantHostStack) {
  FormulaWI f = V("p");
  for (int i = 0; i < 100'000; ++i) f = A(V("q"), std::move(f));
  EXPECT_EQ(size(nnfc_machine(f)), size(f));
}

TEST(Machine, AgreesWithDirectAndCpsExhaustively) {
  cnf::testing::for_each_formula<true>(3, cnf::testing::atom_and_constant_leaves<true>(3), [&](const Formula& phi) {
    const FormulaWI expected = direct::to_cnf(phi);
    ASSERT_EQ(to_cnf_machine(phi, {}, checked()), expected) << print(phi);
    ASSERT_EQ(cps::to_cnf_cps(phi), expected) << print(phi);
  });
}

TEST(Machine, AgreesWithDirectOnRandomFormulas) {
  cnf::testing::RandomFormulas gen(33);
  for (int i = 0; i < 2000; ++i) {
    const Formula phi = gen.next<true>(8, 8);
    ASSERT_EQ(to_cnf_machine(phi, {}, i % 4 == 0 ? checked() : Options{}), direct::to_cnf(phi)) << print(phi);
  }
}

TEST(Machine, StageMachinesAgreeWithDirectStages) {
  cnf::testing::for_each_formula<true>(3, cnf::testing::atom_leaves<true>(2), [&](const Formula& phi) {
    const FormulaWI wi = direct::impl_free(phi);
    const FormulaWI nnf = direct::nnfc(wi);
    ASSERT_EQ(impl_free_machine(phi, {}, checked()), wi);
    ASSERT_EQ(nnfc_machine(wi, {}, checked()), nnf);
    ASSERT_EQ(cnfc_machine(nnf, {}, checked()), direct::cnfc(nnf));
  });
}

Formula blowup(int n) {
  Formula f = g::A(g::V("a0"), g::V("b0"));
  for (int i = 1; i < n; ++i)
    f = g::O(std::move(f), g::A(g::V("a" + std::to_string(i)), g::V("b" + std::to_string(i))));
  return f;
}

TEST(Budget, TripsAtTheSameNodeCountInEveryEngine) {
  for (int n : {1, 2, 3, 4, 6}) {
    const Formula phi = blowup(n);
    Machine m = Machine::to_cnf(phi);
    m.run();
    const std::size_t needed = m.allocated();
    cnf::detail::Context ctx(Options{});
    (void)direct::detail::to_cnf(phi, ctx);
    ASSERT_EQ(ctx.allocated(), needed);
    Options exact;
    exact.max_nodes = needed;
    EXPECT_NO_THROW(to_cnf_machine(phi, {}, exact));
    EXPECT_NO_THROW(cps::to_cnf_cps(phi, exact));
    EXPECT_NO_THROW(direct::to_cnf(phi, exact));
    exact.max_nodes = needed - 1;
    EXPECT_THROW(to_cnf_machine(phi, {}, exact), OutputBudgetExceeded);
    EXPECT_THROW(cps::to_cnf_cps(phi, exact), OutputBudgetExceeded);
    EXPECT_THROW(direct::to_cnf(phi, exact), OutputBudgetExceeded);
  }
}

TEST(Budget, ExponentialInputFailsWithError) {
  EXPECT_THROW(to_cnf_machine(blowup(22)), OutputBudgetExceeded);
}

}  // namespace
