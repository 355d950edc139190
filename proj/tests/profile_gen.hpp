// SPDX-License-Identifier: Apache-2.0
// Random data words, constraint sets and small profile automata.
#pragma once

#include "dw/profile.hpp"
#include "support.hpp"

#include <functional>
#include <random>

namespace dwtest {

using namespace dw;

inline DataWord random_word(std::mt19937& rng, std::size_t k, std::size_t max_len, DataValue max_value) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<Symbol> sy(0, static_cast<Symbol>(k - 1));
    std::uniform_int_distribution<DataValue> va(1, max_value);
    DataWord w(len(rng));
    for (auto& l : w)
        l = {sy(rng), va(rng)};
    return w;
}

inline ConstraintSet random_constraints(std::mt19937& rng, std::size_t k, std::size_t max_count) {
    std::uniform_int_distribution<std::size_t> cnt(0, max_count);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<Symbol> sy(0, static_cast<Symbol>(k - 1));
    std::bernoulli_distribution coin(0.5);
    ConstraintSet c;
    for (std::size_t i = cnt(rng); i > 0; --i) {
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
        }
    }
    return c;
}

// Profile automaton with one state per entry of `states`; `allow(letter)` filters the
// profile letters every state may read, `to(state, letter)` picks the successor.
inline BuchiAutomaton profile_automaton(const AlphabetPtr& base, std::size_t states, std::vector<State> finals,
                                 const std::function<bool(const ProfileLetter&)>& allow,
                                 const std::function<State(State, const ProfileLetter&)>& to) {
    auto alpha = profile_alphabet(*base);
    std::vector<Transition> trans;
    for (State q = 0; q < states; ++q)
        for (Symbol s = 0; s < alpha->size(); ++s) {
            auto l = profile_letter(s);
            if (allow(l))
                trans.push_back({q, s, to(q, l)});
        }
    return dwtest::make_buchi(alpha, states, 0, finals, trans);
}

inline bool no_star_right(const ProfileLetter& l) { return l.right != Flag::Star; }

// all interior flags Same; letter 0 must recur
inline BuchiAutomaton all_same_a_recurring(const AlphabetPtr& base) {
    return profile_automaton(
        base, 2, {1}, [](const ProfileLetter& l) { return l.left != Flag::Diff && l.right == Flag::Same; },
        [](State, const ProfileLetter& l) { return l.symbol == 0 ? 1u : 0u; });
}

inline BuchiAutomaton all_diff(const AlphabetPtr& base) {
    return profile_automaton(
        base, 1, {0}, [](const ProfileLetter& l) { return l.left != Flag::Same && l.right == Flag::Diff; },
        [](State, const ProfileLetter&) { return 0u; });
}

} // namespace dwtest
