// SPDX-License-Identifier: Apache-2.0
// Emptiness of Buchi automata with data constraints, witness recipes and their replay.
#pragma once

#include "dw/automata.hpp"
#include "dw/data.hpp"
#include "dw/presburger.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dw {

struct Adc {
    BuchiAutomaton automaton;
    ConstraintSet constraints;
};

enum class ClassTag { Zero, Fin, Inf, FinSmall, FinBig };

[[nodiscard]] const char* to_string(ClassTag t);

struct ClassGuess {
    Mask set = 0;
    ClassTag tag = ClassTag::Zero;
    std::uint32_t size = 0; // |Gamma_S| for FinSmall
    bool operator==(const ClassGuess&) const = default;
};

// Only the non-Zero classes are listed, ascending by mask; everything else is Zero.
struct PartitionGuess {
    std::vector<ClassGuess> classes;

    [[nodiscard]] ClassTag tag_of(Mask s) const;
    [[nodiscard]] std::size_t count(ClassTag t) const;
    bool operator==(const PartitionGuess&) const = default;
};

// Four-way mode (locally different words) uses FinSmall/FinBig instead of Fin.
enum class GuessMode { ThreeWay, FourWay };

struct EngineConfig {
    GuessMode mode = GuessMode::ThreeWay;
    // Letters carrying data values; the others are ignored by classes and constraints.
    // 0 means every letter.
    Mask dataMask = 0;
    // Tail may not read any data letter (words with finitely many data positions).
    bool finiteData = false;
};

struct ExtSymbol {
    enum class Kind { Plain, Pair, Constant };
    Kind kind = Kind::Plain;
    Symbol base = 0;
    Mask set = 0;           // Pair and Constant: the class
    DataValue constant = 0; // Constant: its value
};

// Base transitions plus pair-symbol copies (Inf classes) and constant copies (FinSmall
// classes). In four-way mode the states also remember the constant read at the last data
// position so that equal constants are never adjacent.
struct ExtendedSystem {
    AlphabetPtr alphabet;
    std::vector<ExtSymbol> symbols;
    TransitionSystem ts;
    State initial = 0;
    std::size_t stride = 1; // product states are q * stride + last-constant slot
    std::vector<bool> final;

    [[nodiscard]] State base_state(State s) const { return static_cast<State>(s / stride); }
};

struct ValueLayout {
    std::size_t epsilon = 0;           // |D| + 3 in four-way mode, 0 otherwise
    std::vector<DataValue> xiStart;    // first xi value per class (classes order); unused for non-z classes
    std::vector<std::uint64_t> counts; // m_S per class (classes order); 0 for non-z classes
    DataValue poolBase = 0;
    std::size_t poolCount = 0;
};

struct WitnessRecipe {
    PartitionGuess partition;
    GuessMode mode = GuessMode::ThreeWay;
    Mask dataMask = 0;
    AlphabetPtr alphabet; // extended alphabet
    std::vector<ExtSymbol> symbols;
    std::vector<Symbol> u;       // finite part accepted by the Presburger side
    std::vector<Symbol> vPrefix; // tail stem
    std::vector<Symbol> vCycle;  // tail cycle
    ValueLayout layout;

    [[nodiscard]] std::size_t length() const { return u.size() + vPrefix.size() + vCycle.size(); }
    [[nodiscard]] Symbol at(std::size_t i) const;
    // Base-alphabet lasso (u.vPrefix, vCycle) obtained by erasing pair and constant tags.
    [[nodiscard]] std::vector<Symbol> projected_prefix() const;
    [[nodiscard]] std::vector<Symbol> projected_cycle() const;
};

struct SearchStats {
    std::size_t partitionsTried = 0;
    std::size_t probes = 0;
    std::size_t tailChecks = 0;
    std::size_t presburgerQueries = 0;
    std::size_t supportsTried = 0;
    std::size_t rejectedWitnesses = 0;
};

struct Verdict {
    bool nonEmpty = false;
    std::optional<WitnessRecipe> witness;
    SearchStats stats;
    std::string procedure; // which routine decided
};

struct SearchOptions {
    bool parallel = false;
    std::size_t blockSize = 32;
    // Apply the forced-empty pruning before enumeration. Without it every subset is a
    // candidate and only witnesses that pass verification are accepted.
    bool prune = true;
    bool cache = true;
    // 0 = unlimited; otherwise SearchLimitExceeded once more guesses would be needed.
    std::size_t partitionLimit = 0;
    ParikhOptions parikh;
};

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] ExtendedSystem build_extended_system(const BuchiAutomaton& a, const PartitionGuess& p,
                                                   const EngineConfig& cfg = {});
[[nodiscard]] PresburgerAutomaton build_presburger_side(const ExtendedSystem& ext, State q, const PartitionGuess& p,
                                                        const ConstraintSet& c, const EngineConfig& cfg = {});
[[nodiscard]] BuchiAutomaton build_tail_buchi(const ExtendedSystem& ext, State q, const PartitionGuess& p,
                                              const ConstraintSet& c, const EngineConfig& cfg = {});

// Dispatches to the key-free routine when no key constraint is present.
[[nodiscard]] Verdict adc_nonempty(const Adc& adc, const SearchOptions& opts = {});
// Full partition search regardless of keys.
[[nodiscard]] Verdict adc_nonempty_general(const Adc& adc, const SearchOptions& opts = {});
// Class families restricted to images of functions f : letters -> classes; rejects keys.
[[nodiscard]] Verdict adc_nonempty_keyfree(const Adc& adc, const SearchOptions& opts = {});
// Locally different words (four-way guesses).
[[nodiscard]] Verdict locally_different_nonempty(const BuchiAutomaton& a, const ConstraintSet& c,
                                                 const SearchOptions& opts = {});
// Generic entry used by the zonal pipeline.
[[nodiscard]] Verdict engine_nonempty(const Adc& adc, const EngineConfig& cfg, const SearchOptions& opts,
                                      bool keyfree_families);

[[nodiscard]] WitnessRecipe synthesize_witness(const PartitionGuess& p, const ExtendedSystem& ext,
                                               std::vector<Symbol> u, std::vector<Symbol> v_prefix,
                                               std::vector<Symbol> v_cycle,
                                               const std::vector<std::uint64_t>& counts, const ConstraintSet& c,
                                               const EngineConfig& cfg = {});

// First n positions of the data word the recipe denotes; fails when the data assignment
// cannot be completed (reported through the optional).
[[nodiscard]] std::optional<DataWord> concretize(const WitnessRecipe& r, std::size_t n, const ConstraintSet& c);

struct VerifyReport {
    bool ok = false;
    bool runAccepted = false;
    bool keysAndDenials = false;
    bool pairsRecur = false;
    bool inclusionFinite = false;
    bool inclusionStructural = false; // pool values: decided from the class structure
    bool locallyDifferent = true;
    std::string failure;
    std::optional<std::pair<std::size_t, std::size_t>> positions;
    DataWord prefix;
};

[[nodiscard]] VerifyReport verify_witness_prefix(const WitnessRecipe& r, std::size_t n, const Adc& adc);

// Data word carried by the data letters of w (positions of other letters dropped).
[[nodiscard]] DataWord data_subsequence(const DataWord& w, Mask data_mask);

} // namespace dw
