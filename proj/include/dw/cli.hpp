// SPDX-License-Identifier: Apache-2.0
// Problem files, reports and the three commands behind the dwsat tool.
#pragma once

#include "dw/ltl.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace dw::cli {

using Json = nlohmann::json;

enum class Mode { Adc, AdcKeyfree, ProfileAdc, Zonal, LocallyDifferent, Ltl, Presburger };

[[nodiscard]] const char* to_string(Mode m);
[[nodiscard]] std::optional<Mode> parse_mode(std::string_view s);

// Malformed input. `pointer` is a JSON pointer into the problem file ("" for the root).
class SchemaError : public std::invalid_argument {
public:
    SchemaError(std::string pointer, const std::string& what)
        : std::invalid_argument(pointer + ": " + what), pointer(std::move(pointer)) {}
    std::string pointer;
};

struct Problem {
    Mode mode = Mode::Adc;
    AlphabetPtr alphabet;           // base alphabet
    BuchiAutomaton automaton;       // over the mode's letter alphabet
    std::vector<bool> nfaFinals;    // presburger mode
    ConstraintSet constraints;      // over the mode's letter alphabet
    FormulaPtr formula;             // ltl mode
    EPFormula presburger;           // presburger mode
};

// Alphabet the automaton reads in a mode: base, profile letters or zonal letters.
[[nodiscard]] AlphabetPtr letter_alphabet(Mode m, const AlphabetPtr& base);

// `mode_override` replaces the file's "mode" field.
[[nodiscard]] Problem load_problem(const Json& doc, std::optional<Mode> mode_override = std::nullopt);
[[nodiscard]] Json save_problem(const Problem& p);

struct RunOptions {
    std::size_t unroll = 0; // 0 = 3 * recipe length
    std::size_t maxSupport = 0;
    std::size_t partitionLimit = 0;
    std::size_t nodeLimit = 0;
    bool parallel = false;
};

struct Outcome {
    int exitCode = 0; // 0 nonempty / sat, 1 empty / unsat
    Json report;
};

[[nodiscard]] Outcome cmd_check(const Problem& p, const RunOptions& o);
// Like check, but the report always carries the concretized prefix and its verification.
[[nodiscard]] Outcome cmd_witness(const Problem& p, const RunOptions& o);

enum class Target { Adc, Zonal, NormalForm };
[[nodiscard]] std::optional<Target> parse_target(std::string_view s);

class TranslateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] Json cmd_translate(const Problem& p, Target t);

// Report with the timing field removed, for byte comparison between runs.
[[nodiscard]] Json without_timing(Json report);

} // namespace dw::cli
