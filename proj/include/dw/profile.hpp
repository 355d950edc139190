// SPDX-License-Identifier: Apache-2.0
// Profile automata: letters annotated with neighbour-equality flags, zones and zonal words.
#pragma once

#include "dw/adc.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dw {

enum class Flag { Star, Same, Diff };

[[nodiscard]] const char* flag_text(Flag f); // "*", "=", "!"

struct ProfileLetter {
    Symbol symbol = 0;
    Flag left = Flag::Star;
    Flag right = Flag::Star;
    bool operator==(const ProfileLetter&) const = default;
};

using ProfileWord = std::vector<ProfileLetter>;

// prefix covers the word's prefix plus the first cycle copy; cycle is the steady state
// of every later copy.
struct ProfileLasso {
    ProfileWord prefix;
    ProfileWord cycle;
    bool operator==(const ProfileLasso&) const = default;
};

// Σ x {*,=,!}^2, symbol index = base * 9 + left * 3 + right; names "(a,*,=)".
[[nodiscard]] AlphabetPtr profile_alphabet(const Alphabet& base);
[[nodiscard]] Symbol profile_symbol(const ProfileLetter& l);
[[nodiscard]] ProfileLetter profile_letter(Symbol s);
[[nodiscard]] std::vector<Symbol> profile_symbols(const ProfileWord& w);

[[nodiscard]] ProfileWord profile_of(const DataWord& w);
[[nodiscard]] ProfileLasso profile_of(const LassoDataWord& w);

struct Zone {
    std::size_t start = 0;            // 1-based
    std::optional<std::size_t> end;   // inclusive; empty = the zone never ends
    Mask labelSet = 0;
    DataValue value = 0;
    bool operator==(const Zone&) const = default;
};

[[nodiscard]] std::vector<Zone> zones_of(const DataWord& w);
// Zones starting within the first n positions (ends computed on the infinite word).
[[nodiscard]] std::vector<Zone> zones_of(const LassoDataWord& w, std::size_t n);

struct ZonalLetter {
    bool isSet = false;
    Symbol symbol = 0; // plain letters
    Mask set = 0;      // set letters
    DataValue value = 0;
    bool operator==(const ZonalLetter&) const = default;
};

using ZonalWord = std::vector<ZonalLetter>;

[[nodiscard]] ZonalWord zonal_of(const DataWord& w);
// Inverse of zonal_of: every plain letter takes the value of its zone.
[[nodiscard]] DataWord data_word_of(const ZonalWord& z);
[[nodiscard]] bool well_formed(const ZonalWord& z);

// Σ ∪ (2^Σ \ {∅}): plain letters keep their index, set S has index |Σ| + S - 1.
[[nodiscard]] AlphabetPtr zonal_alphabet(const Alphabet& base);
[[nodiscard]] Symbol zonal_set_symbol(std::size_t base_size, Mask s);
[[nodiscard]] Mask zonal_set_mask(std::size_t base_size);
// Set-letter positions only, as a data word over the zonal alphabet.
[[nodiscard]] DataWord zonal_set_letters(const ZonalWord& z, std::size_t base_size);

struct ZonalConstraints {
    ConstraintSet constraints; // over the zonal alphabet
    Mask onceFlags = 0;        // letters that occur at most once per zone
};

[[nodiscard]] ZonalConstraints translate_constraints_zonal(const ConstraintSet& c, std::size_t base_size);
// Every flagged letter occurs at most once inside each zone.
[[nodiscard]] bool once_per_zone(const ZonalWord& z, Mask once_flags);

class ProfileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Accepts exactly the projections of well-formed zonal words whose profile is accepted by
// `profile` (an automaton over profile_alphabet(base)) and that respect once_flags.
[[nodiscard]] BuchiAutomaton zonal_automaton(const BuchiAutomaton& profile, const Alphabet& base, Mask once_flags);

struct ProfileAdc {
    AlphabetPtr base;
    BuchiAutomaton automaton; // over profile_alphabet(*base)
    ConstraintSet constraints; // over base
};

// Data attached to states: the result reads (q, a) letters, where q is the state the run is
// in before reading a.
struct StateReduction {
    ProfileAdc adc;                  // base alphabet Q x Σ, names "(q0,a)"
    [[nodiscard]] Symbol letter(State q, Symbol a) const { return static_cast<Symbol>(q * baseSize + a); }
    std::size_t baseSize = 0;
};

[[nodiscard]] StateReduction state_constraint_reduction(const BuchiAutomaton& profile, const Alphabet& base,
                                                        const ConstraintSet& state_constraints);

// Permutes each letter's values so that adjacent values differ. Requires every nonempty
// value set to have at least alphabet_size + 3 elements.
[[nodiscard]] DataWord rearrange_locally_different(const DataWord& w, std::size_t alphabet_size);

[[nodiscard]] Verdict zonal_nonempty(const BuchiAutomaton& zonal, const ConstraintSet& c, std::size_t base_size,
                                     const SearchOptions& opts = {});

[[nodiscard]] Verdict profile_adc_nonempty(const ProfileAdc& p, const SearchOptions& opts = {});

struct ProfileReplay {
    bool ok = false;
    bool zonalVerified = false;
    bool profileAccepted = false;
    bool flagsMatch = false;
    bool keysAndDenials = false;
    std::string failure;
    DataWord prefix;          // data word over base letters
    ProfileLasso profile;     // symbolic profile of the recipe
};

// Replays a profile_adc_nonempty witness: the zonal recipe is concretized to n zonal
// positions and read back as a data word.
[[nodiscard]] ProfileReplay replay_profile_witness(const ProfileAdc& p, const WitnessRecipe& r, std::size_t n);

} // namespace dw
