// SPDX-License-Identifier: Apache-2.0
// Key-free instance generator and an independent emptiness oracle for it.
#pragma once

#include "dw/adc.hpp"
#include "support.hpp"

#include <deque>
#include <random>

namespace dwtest {

using namespace dw;

// Independent oracle for key-free constraints over letters {a, b} with any further letters
// unconstrained. A model exists iff it exists with one value per class restricted to {a, b},
// so values 1..3 suffice and satisfaction only depends on which (letter, value) pairs occur.
inline bool keyfree_oracle(const BuchiAutomaton& a, const ConstraintSet& c) {
    for (unsigned pairs = 0; pairs < 64; ++pairs) {
        // bit 2*v + x: letter x in {0,1} carries value v in {0,1,2}
        auto has = [&](unsigned x, unsigned v) { return (pairs >> (2 * v + x)) & 1u; };
        bool ok = true;
        for (const auto& con : c) {
            for (unsigned v = 0; v < 3; ++v) {
                if (con.kind == Constraint::Kind::Denial && has(con.a, v) && has(con.b, v))
                    ok = false;
                if (con.kind == Constraint::Kind::Inclusion && has(con.a, v)) {
                    bool covered = false;
                    for (Symbol t : con.targets)
                        covered = covered || (t < 2 && has(t, v));
                    if (!covered)
                        ok = false;
                }
            }
        }
        if (!ok)
            continue;
        unsigned need[2] = {0, 0};
        for (unsigned x = 0; x < 2; ++x)
            for (unsigned v = 0; v < 3; ++v)
                need[x] += has(x, v);
        // product state: (q, count_a capped at 3, count_b capped at 3)
        const std::size_t ns = a.ts.state_count() * 16;
        auto enc = [](State q, unsigned ca, unsigned cb) { return q * 16 + ca * 4 + cb; };
        std::vector<std::vector<std::size_t>> succ(ns);
        for (State q = 0; q < a.ts.state_count(); ++q)
            for (unsigned ca = 0; ca < 4; ++ca)
                for (unsigned cb = 0; cb < 4; ++cb)
                    for (const auto& t : a.ts.transitions()) {
                        if (t.from != q)
                            continue;
                        if (t.symbol < 2 && need[t.symbol] == 0)
                            continue;
                        unsigned na = ca + (t.symbol == 0 && ca < 3), nb = cb + (t.symbol == 1 && cb < 3);
                        succ[enc(q, ca, cb)].push_back(enc(t.to, na, nb));
                    }
        auto bfs = [&](std::vector<std::size_t> from) {
            std::vector<bool> seen(ns, false);
            std::deque<std::size_t> todo(from.begin(), from.end());
            for (auto s : from)
                seen[s] = true;
            while (!todo.empty()) {
                auto s = todo.front();
                todo.pop_front();
                for (auto t : succ[s])
                    if (!seen[t])
                        seen[t] = true, todo.push_back(t);
            }
            return seen;
        };
        auto reach = bfs({enc(a.initial, 0, 0)});
        for (State q = 0; q < a.ts.state_count(); ++q) {
            if (!a.final[q])
                continue;
            for (unsigned ca = need[0]; ca < 4; ++ca)
                for (unsigned cb = need[1]; cb < 4; ++cb) {
                    auto s = enc(q, ca, cb);
                    if (!reach[s])
                        continue;
                    auto back = bfs(succ[s]);
                    if (back[s])
                        return true;
                }
        }
    }
    return false;
}

inline ConstraintSet random_keyfree(std::mt19937& rng) {
    std::uniform_int_distribution<int> cnt(1, 3), kind(0, 1);
    std::uniform_int_distribution<Symbol> sy(0, 1);
    std::bernoulli_distribution coin(0.5);
    ConstraintSet c;
    for (int i = cnt(rng); i > 0; --i) {
        if (kind(rng) == 0) {
            std::vector<Symbol> r;
            for (Symbol s = 0; s < 2; ++s)
                if (coin(rng))
                    r.push_back(s);
            c.add(Constraint::inclusion(sy(rng), r));
        } else {
            c.add(Constraint::denial(sy(rng), sy(rng)));
        }
    }
    return c;
}

inline std::vector<Adc> random_keyfree_instances(unsigned seed, std::size_t count) {
    std::mt19937 rng(seed);
    auto alpha = letters(3);
    std::vector<Adc> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({dwtest::random_buchi(rng, alpha, 3, 7, 0.5), random_keyfree(rng)});
    return out;
}

} // namespace dwtest
