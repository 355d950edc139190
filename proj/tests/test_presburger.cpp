// SPDX-License-Identifier: Apache-2.0
#include "dw/presburger.hpp"
#include "presburger_gen.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dw;
using namespace dwtest;

namespace {

// q0 -a-> q0, q0 -b-> q1, F = {q1}
Nfa a_star_b() {
    Nfa n;
    n.ts = TransitionSystem(dwtest::letters(2), 2, {{0, 0, 0}, {0, 1, 1}});
    n.initial = 0;
    n.finals = {false, true};
    return n;
}

EPFormula free_only(std::size_t k, Matrix m) {
    EPFormula f;
    f.freeCount = k;
    f.matrix = std::move(m);
    return f;
}

void expect_sound(const PresburgerAutomaton& pa, const ParikhSolution& s) {
    EXPECT_TRUE(nfa_run_exists(pa.nfa, s.word));
    EXPECT_TRUE(eval_formula(pa.formula, parikh_of(s.word, pa.nfa.ts.symbol_count()), s.bound));
}

} // namespace

TEST(EvalFormula, Basics) {
    EXPECT_TRUE(eval_formula(free_only(2, Matrix::conj({})), {0, 0}, {}));
    EXPECT_TRUE(eval_formula(free_only(2, Matrix::of(LinearAtom::eq({0}, {1}))), {1, 1}, {}));
    auto f = free_only(2, Matrix::conj({Matrix::of(LinearAtom::geq_const({0}, 2)),
                                        Matrix::of(LinearAtom::leq_const({1}, 1))}));
    EXPECT_FALSE(eval_formula(f, {1, 0}, {}));
    EXPECT_THROW((void)eval_formula(f, {1}, {}), MissingVariable);
}

TEST(IntegerFeasible, Contradiction) {
    EXPECT_FALSE(integer_feasible({LinearAtom::geq_const({0}, 1), LinearAtom::leq_const({0}, 0)}, 1));
}

TEST(IntegerFeasible, SumWithLowerBound) {
    auto r = integer_feasible({LinearAtom::eq_const({0, 1}, 3), LinearAtom::geq_const({0}, 2)}, 2);
    ASSERT_TRUE(r);
    EXPECT_EQ((*r)[0] + (*r)[1], 3u);
    EXPECT_GE((*r)[0], 2u);
}

TEST(IntegerFeasible, ChainOfEqualitiesIsMinimal) {
    auto r = integer_feasible({LinearAtom::eq({0}, {1}), LinearAtom::eq({1}, {2}), LinearAtom::geq_const({2}, 5)}, 3);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, (std::vector<std::uint64_t>{5, 5, 5}));
}

TEST(IntegerFeasible, NeedsBranching) {
    // 2x = 2y + 1 has rational solutions only
    auto r = integer_feasible(
        {LinearAtom::eq({0, 0}, {1, 1, 2}), LinearAtom::eq_const({2}, 1), LinearAtom::leq_const({0}, 3)}, 3);
    EXPECT_FALSE(r);
    // 3x = 2y + 1, x >= 1: x = 1, y = 1
    auto s = integer_feasible({LinearAtom::eq({0, 0, 0}, {1, 1, 2}), LinearAtom::eq_const({2}, 1),
                               LinearAtom::geq_const({0}, 1)},
                              3);
    ASSERT_TRUE(s);
    EXPECT_EQ(3 * (*s)[0], 2 * (*s)[1] + 1);
}

TEST(IntegerFeasible, NodeLimit) {
    IlpOptions o;
    o.nodeLimit = 50;
    // parity-infeasible and unbounded: branch-and-bound walks up toward the small-solution bound
    EXPECT_THROW((void)integer_feasible({LinearAtom::eq({0, 0}, {1, 1, 2}), LinearAtom::eq_const({2}, 1)}, 3, o),
                 SearchLimitExceeded);
}

TEST(Dnf, NegatedEqualitySplits) {
    auto d = to_dnf(Matrix::negate(Matrix::of(LinearAtom::eq_const({0}, 2))));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0][0].rel, LinearConstraint::Rel::Le);
    EXPECT_EQ(d[0][0].rhs, 1);
    EXPECT_EQ(d[1][0].rel, LinearConstraint::Rel::Ge);
    EXPECT_EQ(d[1][0].rhs, 3);
    EXPECT_TRUE(to_dnf(Matrix::falsity()).empty());
    EXPECT_EQ(to_dnf(Matrix::truth()).size(), 1u);
}

TEST(ParikhFeasible, EqualCountsOnAStarB) {
    PresburgerAutomaton pa{a_star_b(), free_only(2, Matrix::of(LinearAtom::eq({0}, {1})))};
    auto w = parikh_feasible(pa);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (std::vector<Symbol>{0, 1}));
}

TEST(ParikhFeasible, TwoBsImpossible) {
    PresburgerAutomaton pa{a_star_b(), free_only(2, Matrix::of(LinearAtom::geq_const({1}, 2)))};
    EXPECT_FALSE(parikh_feasible(pa));
    EXPECT_FALSE(brute_force_oracle(pa, 6));
}

TEST(ParikhFeasible, EmptyLanguage) {
    PresburgerAutomaton pa;
    pa.nfa.ts = TransitionSystem(dwtest::letters(1), 2, {{1, 0, 1}});
    pa.nfa.finals = {false, true};
    pa.formula = free_only(1, Matrix::truth());
    EXPECT_FALSE(parikh_feasible(pa));
    EXPECT_FALSE(brute_force_oracle(pa, 8));
}

TEST(ParikhFeasible, DisconnectedCycleIsNotUsed) {
    // q0 -a-> q1 (final), c-loop on q1, b-edges between q1 and q2.
    PresburgerAutomaton pa;
    pa.nfa.ts = TransitionSystem(dwtest::letters(3), 3, {{0, 0, 1}, {1, 2, 1}, {2, 1, 2}, {1, 1, 2}, {2, 1, 1}});
    pa.nfa.finals = {false, true, false};
    // needs x_b >= 2 and x_c >= 1
    pa.formula = free_only(3, Matrix::conj({Matrix::of(LinearAtom::geq_const({1}, 2)),
                                            Matrix::of(LinearAtom::geq_const({2}, 1))}));
    auto s = parikh_solve(pa);
    ASSERT_TRUE(s);
    expect_sound(pa, *s);
}

TEST(ParikhFeasible, LazyCutRejectsFloatingCycle) {
    // q0 -a-> q1 (final), q1 -c-> q2, q2 -b-> q2, q2 -d-> q1.
    // With x_c = 0 the b-loop is a circulation the flow equations accept but no run can reach.
    PresburgerAutomaton pa;
    pa.nfa.ts = TransitionSystem(dwtest::letters(4), 3, {{0, 0, 1}, {1, 2, 2}, {2, 1, 2}, {2, 3, 1}});
    pa.nfa.finals = {false, true, false};
    pa.formula = free_only(4, Matrix::conj({Matrix::of(LinearAtom::geq_const({1}, 1)),
                                            Matrix::of(LinearAtom::eq_const({2}, 0))}));
    ParikhStats st;
    EXPECT_FALSE(parikh_solve(pa, {}, &st));
    EXPECT_GE(st.supportsTried, 2u);
    EXPECT_FALSE(brute_force_oracle(pa, 8));
    pa.formula = free_only(4, Matrix::of(LinearAtom::geq_const({1}, 1)));
    auto s = parikh_solve(pa);
    ASSERT_TRUE(s);
    expect_sound(pa, *s);
}

TEST(BruteForce, LengthZero) {
    PresburgerAutomaton pa;
    pa.nfa.ts = TransitionSystem(dwtest::letters(1), 1, {{0, 0, 0}});
    pa.nfa.finals = {true};
    pa.formula = free_only(1, Matrix::truth());
    auto w = brute_force_oracle(pa, 0);
    ASSERT_TRUE(w);
    EXPECT_TRUE(w->empty());
    pa.formula = free_only(1, Matrix::of(LinearAtom::geq_const({0}, 1)));
    EXPECT_FALSE(brute_force_oracle(pa, 0));
}

TEST(BruteForce, FindsShortest) {
    PresburgerAutomaton pa{a_star_b(), free_only(2, Matrix::of(LinearAtom::eq({0}, {1})))};
    auto w = brute_force_oracle(pa, 4);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (std::vector<Symbol>{0, 1}));
}

TEST(ParikhFeasible, AgreesWithBruteForceOnRandomInstances) {
    std::mt19937 rng(20240611);
    int decisive = 0;
    for (int i = 0; i < 300; ++i) {
        auto pa = random_instance(rng);
        auto s = parikh_solve(pa);
        auto o = brute_force_oracle(pa, 8);
        if (s)
            expect_sound(pa, *s);
        if (o) {
            EXPECT_TRUE(s.has_value()) << "instance " << i;
            ++decisive;
        } else if (s) {
            EXPECT_GT(s->word.size(), 8u) << "instance " << i;
        }
    }
    EXPECT_GT(decisive, 30);
}

TEST(ParikhFeasible, EulerPathMatchesCounts) {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto pa = random_instance(rng);
        auto s = parikh_solve(pa);
        if (!s)
            continue;
        std::vector<std::uint64_t> seen(pa.nfa.ts.transitions().size(), 0);
        for (auto ti : euler_path(pa.nfa.ts, pa.nfa.initial, s->transitionCounts))
            ++seen[ti];
        EXPECT_EQ(seen, s->transitionCounts);
    }
}

TEST(ParikhFeasible, ExtraAtomIsMonotone) {
    std::mt19937 rng(99);
    for (int i = 0; i < 150; ++i) {
        auto pa = random_instance(rng);
        bool before = parikh_feasible(pa).has_value();
        auto extra = random_matrix(rng, pa.formula.var_count(), 1);
        pa.formula.matrix = Matrix::conj({pa.formula.matrix, extra});
        bool after = parikh_feasible(pa).has_value();
        EXPECT_FALSE(!before && after) << "instance " << i;
    }
}

TEST(SmallSolutionBound, Saturates) {
    EXPECT_EQ(small_solution_bound(1, 0, 0), 1u);
    EXPECT_EQ(small_solution_bound(2, 1, 1), 2u * 8u);
    EXPECT_EQ(small_solution_bound(10, 30, 5), std::uint64_t{1} << 62);
}
