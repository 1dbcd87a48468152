#include <gtest/gtest.h>

#include "cnfkit/cnfkit.hpp"
#include "support/build.hpp"
#include "support/corpus.hpp"

namespace {

using namespace cnf;
namespace g = cnf::testing::g;
namespace h = cnf::testing::h;

TEST(Atoms, Examples) {
  EXPECT_EQ(atoms(g::O(g::V("q"), g::A(g::V("p"), g::V("q")))), (std::vector<std::string>{"q", "p"}));
  EXPECT_TRUE(atoms(g::C(true)).empty());
  EXPECT_EQ(atoms(g::I(g::V("a"), g::V("a"))), (std::vector<std::string>{"a"}));
}

TEST(Equivalent, Examples) {
  EXPECT_TRUE(equivalent(g::I(g::V("p"), g::V("q")), h::O(h::N(h::V("p")), h::V("q"))));
  const Equivalence neg = equivalent(g::V("p"), h::N(h::V("p")));
  ASSERT_FALSE(neg);
  EXPECT_EQ(format_valuation(*neg.counterexample, {"p"}), "p=true");
  EXPECT_TRUE(equivalent(g::N(g::I(g::V("p"), g::V("q"))), h::A(h::V("p"), h::N(h::V("q")))));
}

TEST(Equivalent, DisjointAtomsAndConstants) {
  EXPECT_TRUE(equivalent(g::O(g::V("x"), g::N(g::V("x"))), h::C(true)));
  EXPECT_FALSE(equivalent(g::V("x"), h::V("y")));
  EXPECT_TRUE(equivalent(g::C(false), h::A(h::V("y"), h::N(h::V("y")))));
}

TEST(Equivalent, CounterexampleIsDeterministicAndPicksFromTheTop) {
  const Equivalence e = equivalent(g::A(g::V("a"), g::V("b")), h::A(h::V("a"), h::N(h::V("b"))));
  ASSERT_FALSE(e);
  EXPECT_EQ(format_valuation(*e.counterexample, {"a", "b"}), "a=true b=true");
}

TEST(Equivalent, TooManyAtoms) {
  Formula f = g::V("x0");
  for (int i = 1; i < 21; ++i) f = g::A(std::move(f), g::V("x" + std::to_string(i)));
  try {
    (void)equivalent(f, h::C(true));
    FAIL();
  } catch (const TooManyAtoms& e) {
    EXPECT_EQ(e.count(), 21u);
    EXPECT_EQ(e.limit(), kDefaultMaxAtoms);
  }
  EXPECT_NO_THROW((void)equivalent(f, h::C(true), 21));
  EXPECT_THROW((void)equivalent(g::V("a"), h::V("b"), 1), TooManyAtoms);
}

TEST(Equivalent, SoundOnEmbeddedFormulas) {
  cnf::testing::for_each_formula<false>(3, cnf::testing::atom_and_constant_leaves<false>(3), [](const FormulaWI& f) {
    ASSERT_TRUE(equivalent(embed(f), f)) << print(f);
  });
}

TEST(Equivalent, AgreesWithEvalBasedReferenceAndCounterexamplesVerify) {
  const auto corpus = cnf::testing::all_formulas<false>(2, cnf::testing::atom_and_constant_leaves<false>(3));
  const auto lhs = cnf::testing::all_formulas<true>(2, cnf::testing::atom_and_constant_leaves<true>(2));
  for (const auto& phi : lhs) {
    for (const auto& psi : corpus) {
      std::vector<std::string> vars = atoms(phi);
      for (const auto& a : atoms(psi))
        if (std::find(vars.begin(), vars.end(), a) == vars.end()) vars.push_back(a);
      const Equivalence e = equivalent(phi, psi);
      ASSERT_EQ(static_cast<bool>(e), cnf::testing::brute_equivalent(phi, psi, vars)) << print(phi) << " vs " << print(psi);
      if (!e) {
        ASSERT_NE(eval(*e.counterexample, phi), eval_wi(*e.counterexample, psi));
      }
    }
  }
}

TEST(Equivalent, WideFormulasUseMultiWordTables) {
  cnf::testing::RandomFormulas gen(8);
  for (int i = 0; i < 300; ++i) {
    const Formula phi = gen.next<true>(7, 8);
    const FormulaWI psi = gen.next<false>(7, 8);
    std::vector<std::string> vars = atoms(phi);
    for (const auto& a : atoms(psi))
      if (std::find(vars.begin(), vars.end(), a) == vars.end()) vars.push_back(a);
    const Equivalence e = equivalent(phi, psi);
    ASSERT_EQ(static_cast<bool>(e), cnf::testing::brute_equivalent(phi, psi, vars));
    if (!e) {
      ASSERT_NE(eval(*e.counterexample, phi), eval_wi(*e.counterexample, psi));
    }
    ASSERT_TRUE(equivalent(phi, direct::to_cnf(phi)));
  }
}

TEST(Equivalent, AtomCountCrossingOneWordBoundary) {
  // Six atoms fit one word; the seventh arrives only in the second formula.
  Formula six = g::V("a");
  for (const char* n : {"b", "c", "d", "e", "f"}) six = g::O(std::move(six), g::V(n));
  const FormulaWI seven = h::O(h::V("g"), h::N(h::V("g")));
  EXPECT_FALSE(equivalent(six, seven));
  const Equivalence e = equivalent(six, seven);
  EXPECT_EQ(format_valuation(*e.counterexample, {"a", "b", "c", "d", "e", "f", "g"}),
            "a=false b=false c=false d=false e=false f=false g=true");
  EXPECT_TRUE(equivalent(six, narrow(six).value()));
}

TEST(Equivalent, SingleWordAndMultiWordPathsAgree) {
  // A limit below six atoms disables the single-word path.
  cnf::testing::RandomFormulas gen(11);
  for (int i = 0; i < 3000; ++i) {
    const Formula phi = gen.next<true>(5, 5);
    const FormulaWI psi = gen.next<false>(5, 5);
    const Equivalence fast = equivalent(phi, psi);
    const Equivalence general = equivalent(phi, psi, 5);
    ASSERT_EQ(fast.equivalent(), general.equivalent()) << print(phi) << " vs " << print(psi);
    if (!fast) {
      const auto order = atoms(phi);
      ASSERT_EQ(format_valuation(*fast.counterexample, order), format_valuation(*general.counterexample, order));
    }
  }
}

TEST(Equivalent, NineAtomParity) {
  constexpr int n = 9;
  auto xor_of = [](Formula a, Formula b) { return g::O(g::A(a, g::N(b)), g::A(g::N(a), b)); };
  Formula f = g::V("x0");
  for (int i = 1; i < n; ++i) f = xor_of(std::move(f), g::V("x" + std::to_string(i)));
  // One clause excluding each even-parity assignment.
  std::optional<FormulaWI> odd;
  for (unsigned row = 0; row < (1u << n); ++row) {
    if (__builtin_popcount(row) % 2 != 0) continue;
    std::optional<FormulaWI> clause;
    for (int i = 0; i < n; ++i) {
      FormulaWI x = h::V("x" + std::to_string(i));
      FormulaWI lit = ((row >> i) & 1u) ? h::N(std::move(x)) : std::move(x);
      clause = clause ? h::O(std::move(*clause), std::move(lit)) : std::move(lit);
    }
    odd = odd ? h::A(std::move(*odd), std::move(*clause)) : std::move(*clause);
  }
  EXPECT_TRUE(equivalent(f, *odd));
  const Equivalence e = equivalent(g::N(f), *odd);
  ASSERT_FALSE(e);
  EXPECT_NE(eval(*e.counterexample, g::N(f)), eval_wi(*e.counterexample, *odd));
}

}  // namespace
