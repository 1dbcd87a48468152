#include <gtest/gtest.h>

#include <stdexcept>

#include "cnfkit/cnfkit.hpp"
#include "support/build.hpp"

namespace {

using namespace cnf;
using namespace cnf::machine;
namespace g = cnf::testing::g;
using namespace cnf::testing::h;

TEST(Kont, StartsAtIdAndRejectsExtraIds) {
  CnfcKont k;
  EXPECT_TRUE(k.at_id());
  EXPECT_EQ(k.depth(), 1u);
  EXPECT_THROW(k.push(cnfc_frame::Id{}), std::invalid_argument);
  EXPECT_THROW(k.pop(), std::logic_error);
}

TEST(Kont, PushPopIsLastInFirstOut) {
  NnfcKont k;
  k.push(nnfc_frame::AndLeft{V("a")});
  k.push(nnfc_frame::OrRight{V("b")});
  EXPECT_EQ(k.depth(), 3u);
  EXPECT_EQ(frame_name(k.top()), "nnfc.OrRight");
  const NnfcFrame popped = k.pop();
  EXPECT_EQ(std::get<nnfc_frame::OrRight>(popped).done, V("b"));
  EXPECT_EQ(frame_name(k.top()), "nnfc.AndLeft");
}

TEST(Kont, FramesRunTopFirstToId) {
  const auto k = DistrKont::of({distr_frame::Right{V("x")}, distr_frame::Left{V("a"), V("b")}});
  std::vector<std::string> names;
  for (const auto& fr : k.frames()) names.emplace_back(frame_name(fr));
  EXPECT_EQ(names, (std::vector<std::string>{"distr.Right", "distr.Left", "distr.Id"}));
  const auto described = describe(k);
  ASSERT_EQ(described.size(), 3u);
  EXPECT_EQ(described[1].payload, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(described[2].payload.empty());
}

TEST(ImplPost, Examples) {
  EXPECT_TRUE(check_impl_post(ImplKont{}, V("p"), V("p")));
  EXPECT_FALSE(check_impl_post(ImplKont{}, V("p"), V("q")));
  EXPECT_TRUE(check_impl_post(ImplKont::of({impl_frame::Neg{g::V("p")}}), V("p"), N(V("p"))));
}

TEST(ImplPost, PendingInputsAreConvertedByTheDirectFunction) {
  const auto k = ImplKont::of({impl_frame::ImplLeft{g::I(g::V("q"), g::V("r"))}, impl_frame::AndRight{V("s")}});
  EXPECT_TRUE(check_impl_post(k, V("p"), A(V("s"), O(N(V("p")), O(N(V("q")), V("r"))))));
  EXPECT_FALSE(check_impl_post(k, V("p"), A(V("s"), O(N(V("p")), V("r")))));
  EXPECT_TRUE(check_impl_post(ImplKont::of({impl_frame::ImplRight{V("a")}}), V("b"), O(N(V("a")), V("b"))));
}

TEST(NnfcPost, Examples) {
  EXPECT_TRUE(check_nnfc_post(NnfcKont{}, V("p"), V("p")));
  EXPECT_TRUE(check_nnfc_post(NnfcKont::of({nnfc_frame::OrRight{V("q")}}), V("p"), O(V("q"), V("p"))));
  EXPECT_FALSE(check_nnfc_post(NnfcKont::of({nnfc_frame::OrRight{V("q")}}), V("p"), O(V("p"), V("q"))));
}

TEST(NnfcPost, NegatedPendingOperand) {
  const auto k = NnfcKont::of({nnfc_frame::NegAndLeft{A(V("q"), V("r"))}});
  EXPECT_TRUE(check_nnfc_post(k, N(V("p")), O(N(V("p")), O(N(V("q")), N(V("r"))))));
  EXPECT_TRUE(check_nnfc_post(NnfcKont::of({nnfc_frame::NegNeg{V("p")}}), V("p"), V("p")));
}

TEST(CnfcPost, Examples) {
  EXPECT_TRUE(check_cnfc_post(CnfcKont{}, V("p"), V("p")));
  EXPECT_TRUE(check_cnfc_post(CnfcKont::of({cnfc_frame::AndRight{V("q")}}), V("p"), A(V("q"), V("p"))));
  EXPECT_FALSE(check_cnfc_post(CnfcKont::of({cnfc_frame::AndRight{V("q")}}), V("p"), A(V("p"), V("q"))));
}

TEST(CnfcPost, OrFramesDistribute) {
  const auto k = CnfcKont::of({cnfc_frame::OrLeft{A(V("q"), V("r"))}});
  EXPECT_TRUE(check_cnfc_post(k, V("p"), A(O(V("p"), V("q")), O(V("p"), V("r")))));
  const auto right = CnfcKont::of({cnfc_frame::OrRight{A(V("a"), V("b"))}});
  EXPECT_TRUE(check_cnfc_post(right, V("c"), A(O(V("a"), V("c")), O(V("b"), V("c")))));
}

TEST(WfCnfcKont, Examples) {
  EXPECT_TRUE(check_wf_cnfc_kont(CnfcKont{}));
  EXPECT_FALSE(check_wf_cnfc_kont(CnfcKont::of({cnfc_frame::OrRight{O(V("p"), A(V("q"), V("r")))}})));
  EXPECT_FALSE(check_wf_cnfc_kont(CnfcKont::of({cnfc_frame::OrLeft{N(A(V("p"), V("q")))}})));
}

TEST(WfCnfcKont, LeftFramesMayHoldNonCnf) {
  EXPECT_TRUE(check_wf_cnfc_kont(CnfcKont::of({cnfc_frame::AndLeft{O(V("p"), A(V("q"), V("r")))}})));
  EXPECT_FALSE(check_wf_cnfc_kont(CnfcKont::of({cnfc_frame::AndLeft{V("p")}, cnfc_frame::AndRight{N(N(V("q")))}})));
}

TEST(WfDistrKont, Examples) {
  EXPECT_TRUE(check_wf_distr_kont(DistrKont{}));
  EXPECT_TRUE(check_wf_distr_kont(DistrKont::of({distr_frame::Left{A(V("a"), V("b")), O(V("c"), N(V("d")))}})));
  EXPECT_FALSE(check_wf_distr_kont(DistrKont::of({distr_frame::Left{V("a"), O(V("c"), A(V("d"), V("e")))}})));
  EXPECT_FALSE(check_wf_distr_kont(DistrKont::of({distr_frame::Right{N(O(V("a"), V("b")))}})));
}

}  // namespace
