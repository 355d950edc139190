// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dw/automata.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dw {

using DataValue = std::uint64_t;
// Subset of an alphabet as a bitmask (bit i = symbol i).
using Mask = std::uint64_t;

inline Mask bit(Symbol s) { return Mask{1} << s; }

struct DataLetter {
    Symbol symbol = 0;
    DataValue value = 0;
    bool operator==(const DataLetter&) const = default;
};

using DataWord = std::vector<DataLetter>;

// prefix . cycle^omega
struct LassoDataWord {
    DataWord prefix;
    DataWord cycle;
    bool operator==(const LassoDataWord&) const = default;

    [[nodiscard]] DataWord unroll(std::size_t copies) const;
    // First n positions of the omega-word.
    [[nodiscard]] DataWord take(std::size_t n) const;
};

struct Constraint {
    enum class Kind { Key, Inclusion, Denial };

    Kind kind = Kind::Key;
    Symbol a = 0;
    Symbol b = 0;                 // Denial only
    std::vector<Symbol> targets;  // Inclusion only; sorted, unique

    static Constraint key(Symbol a) { return {Kind::Key, a, 0, {}}; }
    static Constraint inclusion(Symbol a, std::vector<Symbol> r);
    static Constraint denial(Symbol a, Symbol b) { return {Kind::Denial, a, b, {}}; }

    [[nodiscard]] Mask target_mask() const;
    auto operator<=>(const Constraint&) const = default;
};

// Deduplicated on insertion; keeps first-insertion order.
class ConstraintSet {
public:
    ConstraintSet() = default;
    ConstraintSet(std::initializer_list<Constraint> cs);
    explicit ConstraintSet(const std::vector<Constraint>& cs);

    void add(Constraint c);
    [[nodiscard]] const std::vector<Constraint>& items() const { return items_; }
    [[nodiscard]] std::size_t size() const { return items_.size(); }
    [[nodiscard]] bool empty() const { return items_.empty(); }
    [[nodiscard]] bool has_key() const;
    [[nodiscard]] Mask key_mask() const;
    [[nodiscard]] std::string describe(const Constraint& c, const Alphabet& alpha) const;

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::vector<Constraint> items_;
};

[[nodiscard]] std::set<DataValue> values_of(const DataWord& w, Symbol a);
[[nodiscard]] std::set<DataValue> values_of(const LassoDataWord& w, Symbol a);

// [S]_w for every S with a nonempty class; absent keys denote the empty class.
[[nodiscard]] std::map<Mask, std::set<DataValue>> class_sets(const DataWord& w);
[[nodiscard]] std::map<Mask, std::set<DataValue>> class_sets(const LassoDataWord& w);

struct ConstraintCheck {
    bool holds = true;
    // 1-based offending positions (first in lexicographic order). For inclusion only
    // `first` is set: the position whose value is not covered.
    std::optional<std::size_t> first;
    std::optional<std::size_t> second;
};

[[nodiscard]] std::vector<ConstraintCheck> check_constraints(const DataWord& w, const ConstraintSet& c);
[[nodiscard]] std::vector<ConstraintCheck> check_constraints(const LassoDataWord& w, const ConstraintSet& c);
[[nodiscard]] bool satisfies(const DataWord& w, const ConstraintSet& c);
[[nodiscard]] bool satisfies(const LassoDataWord& w, const ConstraintSet& c);

// True when the class of S must be empty in every word satisfying c.
[[nodiscard]] bool forced_empty(Mask s, const ConstraintSet& c);
// All nonempty S over the first `alphabet_size` symbols with forced_empty(S), ascending.
[[nodiscard]] std::vector<Mask> s_zero_of(const ConstraintSet& c, std::size_t alphabet_size);

// Guard of a normal-form clause: optional letter and a partial sign vector over k predicates.
struct ClauseGuard {
    std::optional<Symbol> letter;
    std::vector<std::pair<std::size_t, bool>> predicates; // (index, positive)
};

struct Fo2Clause {
    enum class Kind { Unique, Inclusion }; // forall x forall y (g(x) & g(y) & x~y -> x=y) / forall x exists y g(x) -> x~y & g'(y)
    Kind kind = Kind::Unique;
    ClauseGuard guard;
    ClauseGuard target;
};

struct Fo2Encoding {
    AlphabetPtr alphabet; // base letter x bit vector, named "(a,0110)"
    ConstraintSet constraints;
};

class ClauseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] Fo2Encoding encode_fo2_clauses(const AlphabetPtr& base, std::size_t k, const std::vector<Fo2Clause>& clauses);
// Index of (letter, bits) in the extended alphabet.
[[nodiscard]] Symbol fo2_letter(std::size_t k, Symbol letter, std::uint64_t bits);

} // namespace dw
