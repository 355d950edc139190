// SPDX-License-Identifier: Apache-2.0
// LTL over data words with data diamonds and data-aware next operators.
#pragma once

#include "dw/profile.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dw {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Op { True, False, Atom, Not, And, Or, Next, NextSame, NextDiff, Until, Release, DiamondW, DiamondS };
    Op op = Op::True;
    std::string atom;   // Atom only
    FormulaPtr left;    // unary operand, or left operand
    FormulaPtr right;   // binary only
};

// Structural comparison; a total order so formulas can key ordered containers.
[[nodiscard]] int compare(const Formula& x, const Formula& y);
[[nodiscard]] bool operator==(const Formula& x, const Formula& y);
[[nodiscard]] bool same(const FormulaPtr& x, const FormulaPtr& y);
struct FormulaLess {
    bool operator()(const FormulaPtr& x, const FormulaPtr& y) const { return compare(*x, *y) < 0; }
};

namespace ltl {
[[nodiscard]] FormulaPtr top();
[[nodiscard]] FormulaPtr bottom();
[[nodiscard]] FormulaPtr atom(std::string name);
[[nodiscard]] FormulaPtr lnot(FormulaPtr f);
[[nodiscard]] FormulaPtr land(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr lor(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr implies(FormulaPtr a, FormulaPtr b); // !a | b
[[nodiscard]] FormulaPtr next(FormulaPtr f);
[[nodiscard]] FormulaPtr next_same(FormulaPtr f);
[[nodiscard]] FormulaPtr next_diff(FormulaPtr f);
[[nodiscard]] FormulaPtr until(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr release(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr eventually(FormulaPtr f); // true U f
[[nodiscard]] FormulaPtr globally(FormulaPtr f);   // false R f
[[nodiscard]] FormulaPtr diamond_w(FormulaPtr f);
[[nodiscard]] FormulaPtr diamond_s(FormulaPtr f);
} // namespace ltl

class LtlSyntaxError : public std::invalid_argument {
public:
    LtlSyntaxError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at offset " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// ASCII syntax: true false ident ! & | -> X Xs Xd U R F G Dw Ds and parentheses.
// Unary operators bind tightest, then U and R (right associative), then &, then |, then ->.
[[nodiscard]] FormulaPtr parse_formula(std::string_view text);
[[nodiscard]] std::string to_string(const Formula& f);
[[nodiscard]] std::size_t formula_size(const Formula& f);
[[nodiscard]] std::vector<std::string> atoms_of(const Formula& f);

enum class Fragment { Plain, WeakOnly, StrongOnly, StrongWithProfiles };
[[nodiscard]] const char* to_string(Fragment f);
// Plain: no data operators. WeakOnly: Dw only. StrongOnly: Ds (Dw allowed), no Xs/Xd.
// StrongWithProfiles: Xs or Xd present.
[[nodiscard]] Fragment fragment_of(const Formula& f);

// Truth at 1-based position i of the omega-word prefix.cycle^omega. Atoms are resolved by
// name in `alphabet`; an unknown atom is false everywhere.
[[nodiscard]] bool evaluate(const LassoDataWord& w, const Alphabet& alphabet, std::size_t i, const Formula& f);

// Negations pushed down to atoms and data diamonds.
[[nodiscard]] FormulaPtr normal_form(const FormulaPtr& f);
[[nodiscard]] bool is_normal_form(const Formula& f);

// Least set containing f and every atom of the alphabet, closed under taking operands,
// where !a also contributes the disjunction of the other letters. Sorted by FormulaLess.
[[nodiscard]] std::vector<FormulaPtr> closure(const FormulaPtr& f, const Alphabet& alphabet);

class FragmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Letter alphabet of a translation. Each letter is a position type: the label plus, for
// every data diamond D = Dw psi or Ds psi of the closure (in closure order), one digit:
//   0 psi false, D false   1 psi false, D true   2 psi true, D false
//   3 psi true, D true     4 same as 3 with the bar set (strong diamonds only)
// Names look like "a:13". Without data diamonds the name is the label itself.
struct LtlLetters {
    AlphabetPtr alphabet;
    std::vector<Symbol> label; // base letter per type letter
    std::vector<std::string> digits;
};

struct LtlTranslation {
    Adc adc;
    LtlLetters letters;
};

struct LtlProfileTranslation {
    ProfileAdc adc;
    LtlLetters letters;
};

struct TableauStats {
    std::size_t closureSize = 0;
    std::size_t states = 0;       // local states of the tableau before degeneralization
    std::size_t untilSets = 0;    // generalized acceptance sets
};

// Plain LTL over `alphabet` as a Büchi automaton over the same alphabet.
[[nodiscard]] BuchiAutomaton plain_tableau(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats = nullptr);
[[nodiscard]] LtlTranslation translate_weak(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats = nullptr);
[[nodiscard]] LtlTranslation translate_strong(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats = nullptr);
[[nodiscard]] LtlProfileTranslation translate_full(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats = nullptr);

// Replaces every type letter by its label, keeping the values.
[[nodiscard]] DataWord erase_types(const DataWord& w, const LtlLetters& letters);

struct LtlVerdict {
    bool satisfiable = false;
    Fragment fragment = Fragment::Plain;
    std::string procedure;
    Verdict inner;                  // verdict of the underlying emptiness check
    TableauStats tableau;
    std::optional<DataWord> prefix; // concretized model prefix over the input alphabet
    bool replayOk = false;          // the recipe replays through the translated automaton
    // A genuine lasso model, when the concretized recipe turned out periodic and evaluate
    // confirms the formula at position 1.
    std::optional<LassoDataWord> lasso;
};

// prefix_length: length of the concretized prefix; 0 picks stem + 3 cycle copies of the recipe.
[[nodiscard]] LtlVerdict ltl_sat(const FormulaPtr& f, const AlphabetPtr& alphabet, const SearchOptions& opts = {},
                                 std::size_t prefix_length = 0);

} // namespace dw
