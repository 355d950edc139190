// SPDX-License-Identifier: Apache-2.0
#include "dw/data.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dw;

namespace {

DataWord word(std::initializer_list<std::pair<Symbol, DataValue>> xs) {
    DataWord w;
    for (auto [s, v] : xs)
        w.push_back({s, v});
    return w;
}

DataWord random_word(std::mt19937& rng, std::size_t k, std::size_t max_len, DataValue max_value) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<Symbol> sy(0, static_cast<Symbol>(k - 1));
    std::uniform_int_distribution<DataValue> va(1, max_value);
    DataWord w(len(rng));
    for (auto& l : w)
        l = {sy(rng), va(rng)};
    return w;
}

ConstraintSet random_constraints(std::mt19937& rng, std::size_t k, std::size_t max_count) {
    std::uniform_int_distribution<std::size_t> cnt(0, max_count);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<Symbol> sy(0, static_cast<Symbol>(k - 1));
    std::bernoulli_distribution coin(0.5);
    ConstraintSet c;
    std::size_t n = cnt(rng);
    for (std::size_t i = 0; i < n; ++i) {
        switch (kind(rng)) {
        case 0:
            c.add(Constraint::key(sy(rng)));
            break;
        case 1: {
            std::vector<Symbol> r;
            for (Symbol s = 0; s < k; ++s)
                if (coin(rng))
                    r.push_back(s);
            c.add(Constraint::inclusion(sy(rng), r));
            break;
        }
        default:
            c.add(Constraint::denial(sy(rng), sy(rng)));
            break;
        }
    }
    return c;
}

} // namespace

TEST(ValuesOf, FiniteAndLasso) {
    auto w = word({{0, 1}, {1, 1}, {0, 2}});
    EXPECT_EQ(values_of(w, 0), (std::set<DataValue>{1, 2}));
    EXPECT_EQ(values_of(w, 1), (std::set<DataValue>{1}));
    EXPECT_TRUE(values_of(w, 2).empty());
    LassoDataWord l{word({{0, 1}}), word({{0, 2}})};
    EXPECT_EQ(values_of(l, 0), (std::set<DataValue>{1, 2}));
}

TEST(ClassSets, Examples) {
    auto cs = class_sets(word({{0, 1}, {1, 1}, {0, 2}}));
    EXPECT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0b11], (std::set<DataValue>{1}));
    EXPECT_EQ(cs[0b01], (std::set<DataValue>{2}));
    EXPECT_FALSE(cs.count(0b10));
    auto one = class_sets(word({{0, 7}}));
    EXPECT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0b01], (std::set<DataValue>{7}));
    auto shared = class_sets(word({{0, 1}, {1, 1}, {1, 2}, {0, 2}}));
    EXPECT_EQ(shared.size(), 1u);
    EXPECT_EQ(shared[0b11], (std::set<DataValue>{1, 2}));
}

TEST(CheckConstraints, Key) {
    ConstraintSet k{Constraint::key(0)};
    EXPECT_TRUE(check_constraints(word({{0, 1}, {0, 2}, {1, 1}}), k)[0].holds);
    auto r = check_constraints(word({{0, 1}, {0, 1}}), k)[0];
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.first, 1u);
    EXPECT_EQ(r.second, 2u);
}

TEST(CheckConstraints, LassoInclusionAndDenial) {
    LassoDataWord l{{}, word({{0, 1}, {1, 1}})};
    ConstraintSet c{Constraint::inclusion(0, {1}), Constraint::denial(0, 1)};
    auto r = check_constraints(l, c);
    EXPECT_TRUE(r[0].holds);
    EXPECT_FALSE(r[1].holds);
    EXPECT_EQ(r[1].first, 1u);
    EXPECT_EQ(r[1].second, 2u);
}

TEST(CheckConstraints, KeyOnCycleLetterFails) {
    LassoDataWord l{word({{1, 5}}), word({{0, 1}})};
    auto r = check_constraints(l, {Constraint::key(0)})[0];
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.first, 2u);
    EXPECT_EQ(r.second, 3u);
}

TEST(ConstraintSet, Deduplicates) {
    ConstraintSet c{Constraint::denial(1, 0), Constraint::denial(0, 1), Constraint::inclusion(0, {1, 1, 0}),
                    Constraint::inclusion(0, {0, 1})};
    EXPECT_EQ(c.size(), 2u);
}

TEST(SZero, Examples) {
    EXPECT_EQ(s_zero_of({Constraint::inclusion(0, {1})}, 2), (std::vector<Mask>{0b01}));
    EXPECT_EQ(s_zero_of({Constraint::denial(0, 1)}, 2), (std::vector<Mask>{0b11}));
    EXPECT_TRUE(s_zero_of({}, 2).empty());
    EXPECT_TRUE(s_zero_of({Constraint::key(0)}, 2).empty());
}

TEST(ClassSets, DisjointAndCovering) {
    std::mt19937 rng(11);
    for (int i = 0; i < 600; ++i) {
        std::size_t k = 1 + i % 3;
        auto w = random_word(rng, k, 10, 6);
        auto cs = class_sets(w);
        std::set<DataValue> seen;
        for (const auto& [s, vals] : cs) {
            EXPECT_NE(s, 0u);
            for (auto v : vals)
                EXPECT_TRUE(seen.insert(v).second);
        }
        for (Symbol a = 0; a < k; ++a) {
            std::set<DataValue> u;
            for (const auto& [s, vals] : cs)
                if (s & bit(a))
                    u.insert(vals.begin(), vals.end());
            EXPECT_EQ(u, values_of(w, a));
        }
    }
}

TEST(CheckConstraints, InclusionDenialMatchClassReformulation) {
    std::mt19937 rng(12);
    for (int i = 0; i < 600; ++i) {
        std::size_t k = 1 + i % 3;
        auto w = random_word(rng, k, 10, 6);
        auto c = random_constraints(rng, k, 3);
        auto r = check_constraints(w, c);
        auto cs = class_sets(w);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const auto& con = c.items()[j];
            if (con.kind == Constraint::Kind::Key)
                continue;
            bool reform = true;
            for (const auto& [s, vals] : cs)
                if (forced_empty(s, ConstraintSet{con}))
                    reform = false;
            EXPECT_EQ(r[j].holds, reform) << "case " << i << " constraint " << j;
        }
    }
}

TEST(CheckConstraints, LassoAgreesWithUnrolling) {
    std::mt19937 rng(13);
    for (int i = 0; i < 500; ++i) {
        std::size_t k = 1 + i % 3;
        LassoDataWord l{random_word(rng, k, 4, 4), random_word(rng, k, 4, 4)};
        if (l.cycle.empty())
            l.cycle.push_back({0, 1});
        auto c = random_constraints(rng, k, 3);
        auto lr = check_constraints(l, c);
        auto ur = check_constraints(l.unroll(3), c);
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c.items()[j].kind == Constraint::Kind::Key) {
                if (!lr[j].holds)
                    EXPECT_FALSE(ur[j].holds);
                else
                    EXPECT_TRUE(ur[j].holds);
            } else {
                EXPECT_EQ(lr[j].holds, ur[j].holds);
            }
        }
    }
}

TEST(Fo2Encoding, UniqueClauseOnePredicate) {
    auto base = dwtest::letters(2);
    Fo2Clause cl;
    cl.guard.letter = 0;
    auto enc = encode_fo2_clauses(base, 1, {cl});
    EXPECT_EQ(enc.alphabet->size(), 4u);
    EXPECT_EQ(enc.alphabet->name(fo2_letter(1, 0, 1)), "(a,1)");
    ConstraintSet expect{Constraint::key(fo2_letter(1, 0, 0)), Constraint::key(fo2_letter(1, 0, 1)),
                         Constraint::denial(fo2_letter(1, 0, 0), fo2_letter(1, 0, 1))};
    EXPECT_EQ(enc.constraints.items(), expect.items());
}

TEST(Fo2Encoding, InclusionClause) {
    auto base = dwtest::letters(2);
    Fo2Clause cl;
    cl.kind = Fo2Clause::Kind::Inclusion;
    cl.guard.letter = 0;
    cl.target.letter = 1;
    auto enc = encode_fo2_clauses(base, 1, {cl});
    std::vector<Symbol> bs{fo2_letter(1, 1, 0), fo2_letter(1, 1, 1)};
    ConstraintSet expect{Constraint::inclusion(fo2_letter(1, 0, 0), bs), Constraint::inclusion(fo2_letter(1, 0, 1), bs)};
    EXPECT_EQ(enc.constraints.items(), expect.items());
}

TEST(Fo2Encoding, NoPredicatesAndErrors) {
    auto base = dwtest::letters(2);
    Fo2Clause cl;
    cl.guard.letter = 1;
    auto enc = encode_fo2_clauses(base, 0, {cl});
    EXPECT_EQ(enc.alphabet->names(), base->names());
    EXPECT_EQ(enc.constraints.items(), ConstraintSet{Constraint::key(1)}.items());
    cl.guard.predicates = {{2, true}};
    EXPECT_THROW((void)encode_fo2_clauses(base, 1, {cl}), ClauseError);
}

TEST(Fo2Encoding, UniqueClauseSemantics) {
    // The encoded key+denial constraints hold iff no two guard-consistent positions share a value.
    std::mt19937 rng(14);
    auto base = dwtest::letters(2);
    Fo2Clause cl;
    cl.guard.predicates = {{0, true}};
    auto enc = encode_fo2_clauses(base, 2, {cl});
    for (int i = 0; i < 300; ++i) {
        auto w = random_word(rng, enc.alphabet->size(), 8, 5);
        bool direct = true;
        for (std::size_t x = 0; x < w.size(); ++x)
            for (std::size_t y = x + 1; y < w.size(); ++y)
                if ((w[x].symbol & 1u) && (w[y].symbol & 1u) && w[x].value == w[y].value)
                    direct = false;
        EXPECT_EQ(satisfies(w, enc.constraints), direct);
    }
}
