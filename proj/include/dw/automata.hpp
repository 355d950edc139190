// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dw {

using Symbol = std::uint32_t;
using State = std::uint32_t;

// Interned, ordered symbol names. The order fixes Parikh vector indexing.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    Symbol add(const std::string& name);
    [[nodiscard]] std::optional<Symbol> find(std::string_view name) const;
    [[nodiscard]] Symbol at(std::string_view name) const;
    [[nodiscard]] const std::string& name(Symbol s) const { return names_.at(s); }
    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);

struct Transition {
    State from = 0;
    Symbol symbol = 0;
    State to = 0;
    auto operator<=>(const Transition&) const = default;
};

// Immutable after construction. Transitions are kept sorted by (from, symbol, to)
// without duplicates, which fixes every tie-break downstream.
class TransitionSystem {
public:
    TransitionSystem() = default;
    TransitionSystem(AlphabetPtr alphabet, std::size_t state_count, std::vector<Transition> transitions);

    [[nodiscard]] const AlphabetPtr& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t state_count() const { return state_count_; }
    [[nodiscard]] std::size_t symbol_count() const { return alphabet_ ? alphabet_->size() : 0; }
    [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }
    // Indices into transitions() leaving `q`, ordered by (symbol, to).
    [[nodiscard]] const std::vector<std::uint32_t>& out(State q) const { return out_[q]; }

private:
    AlphabetPtr alphabet_;
    std::size_t state_count_ = 0;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::uint32_t>> out_;
};

struct BuchiAutomaton {
    TransitionSystem ts;
    State initial = 0;
    std::vector<bool> final;

    [[nodiscard]] bool is_final(State q) const { return final[q]; }
};

struct Nfa {
    TransitionSystem ts;
    State initial = 0;
    std::vector<bool> finals;
};

// One acceptance set per condition; a run is accepting if it meets every set infinitely often.
struct GeneralizedBuchi {
    TransitionSystem ts;
    State initial = 0;
    std::vector<std::vector<bool>> sets;
};

// prefixStates[i] is the state before reading prefixWord[i]; cycleStates[0] is
// reached after the prefix, and the last cycle letter returns to cycleStates[0].
struct Lasso {
    std::vector<State> prefixStates;
    std::vector<Symbol> prefixWord;
    std::vector<State> cycleStates;
    std::vector<Symbol> cycleWord;
};

[[nodiscard]] std::optional<Lasso> buchi_nonempty(const BuchiAutomaton& a);
[[nodiscard]] std::optional<Lasso> generalized_nonempty(const GeneralizedBuchi& g);

[[nodiscard]] BuchiAutomaton buchi_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);
[[nodiscard]] GeneralizedBuchi intersect_all(const std::vector<const BuchiAutomaton*>& parts);
[[nodiscard]] BuchiAutomaton degeneralize(const GeneralizedBuchi& g);

[[nodiscard]] BuchiAutomaton monitor_inf_often(const AlphabetPtr& alphabet, const std::vector<Symbol>& required);
[[nodiscard]] BuchiAutomaton monitor_avoid(const AlphabetPtr& alphabet, const std::vector<Symbol>& banned);
[[nodiscard]] BuchiAutomaton universal_automaton(const AlphabetPtr& alphabet);

[[nodiscard]] bool nfa_run_exists(const Nfa& n, const std::vector<Symbol>& word);
[[nodiscard]] bool accepts_lasso(const BuchiAutomaton& a, const std::vector<Symbol>& prefix,
                                 const std::vector<Symbol>& cycle);
[[nodiscard]] bool lasso_replays(const BuchiAutomaton& a, const Lasso& l);

// Same automaton with a different initial state.
[[nodiscard]] BuchiAutomaton rooted_at(const BuchiAutomaton& a, State q);

// Keep only states reachable from the initial state; renumbers in BFS order.
[[nodiscard]] BuchiAutomaton trim_reachable(const BuchiAutomaton& a);

// Tarjan SCC ids (component index per state, components numbered in reverse topological order).
[[nodiscard]] std::vector<std::uint32_t> scc_ids(const TransitionSystem& ts, std::uint32_t* count);

[[nodiscard]] std::vector<bool> reachable_from(const TransitionSystem& ts, State q);
[[nodiscard]] std::vector<bool> coreachable_to(const TransitionSystem& ts, const std::vector<bool>& targets);

// Symbols that label some transition of some accepting run, and those that can recur forever.
struct LetterUse {
    std::vector<bool> occurs;
    std::vector<bool> recurs;
};
[[nodiscard]] LetterUse letter_use(const BuchiAutomaton& a);

} // namespace dw
