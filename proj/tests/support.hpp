// SPDX-License-Identifier: Apache-2.0
// Shared generators and independent oracles for the test suites.
#pragma once

#include "dw/automata.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace dwtest {

inline dw::AlphabetPtr letters(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    return dw::make_alphabet(names);
}

inline dw::BuchiAutomaton make_buchi(const dw::AlphabetPtr& alpha, std::size_t states, dw::State initial,
                                     const std::vector<dw::State>& finals,
                                     const std::vector<dw::Transition>& trans) {
    dw::BuchiAutomaton a;
    a.ts = dw::TransitionSystem(alpha, states, trans);
    a.initial = initial;
    a.final.assign(states, false);
    for (auto f : finals)
        a.final[f] = true;
    return a;
}

inline dw::BuchiAutomaton random_buchi(std::mt19937& rng, const dw::AlphabetPtr& alpha, std::size_t states,
                                       std::size_t transitions, double final_ratio = 0.4) {
    std::uniform_int_distribution<dw::State> st(0, static_cast<dw::State>(states - 1));
    std::uniform_int_distribution<dw::Symbol> sy(0, static_cast<dw::Symbol>(alpha->size() - 1));
    std::bernoulli_distribution fin(final_ratio);
    std::vector<dw::Transition> trans;
    for (std::size_t i = 0; i < transitions; ++i)
        trans.push_back({st(rng), sy(rng), st(rng)});
    std::vector<dw::State> finals;
    for (dw::State q = 0; q < states; ++q)
        if (fin(rng))
            finals.push_back(q);
    return make_buchi(alpha, states, 0, finals, trans);
}

// Exhaustive search for an accepting state lasso q0 .. q_j .. q_k = q_j with a final state in the loop.
inline bool oracle_state_lasso(const dw::BuchiAutomaton& a, std::size_t max_len) {
    std::vector<dw::State> path{a.initial};
    std::function<bool()> dfs = [&]() -> bool {
        dw::State last = path.back();
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            if (path[j] != last)
                continue;
            for (std::size_t m = j; m + 1 < path.size(); ++m)
                if (a.final[path[m]])
                    return true;
        }
        if (path.size() > max_len)
            return false;
        for (const auto& t : a.ts.transitions()) {
            if (t.from != last)
                continue;
            path.push_back(t.to);
            if (dfs())
                return true;
            path.pop_back();
        }
        return false;
    };
    return dfs();
}

// All words over `k` symbols of length exactly `len`, in lexicographic order.
inline std::vector<std::vector<dw::Symbol>> words_of_length(std::size_t k, std::size_t len) {
    std::vector<std::vector<dw::Symbol>> out;
    std::vector<dw::Symbol> w(len, 0);
    for (;;) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++w[i] < k)
                break;
            w[i] = 0;
            if (i == 0)
                return out;
        }
        if (len == 0)
            return out;
    }
}

} // namespace dwtest
