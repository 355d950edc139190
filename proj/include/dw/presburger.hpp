// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dw/automata.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dw {

using VarId = std::uint32_t;

// Sum of variables (as multisets) compared against another sum or a constant.
struct LinearAtom {
    enum class Kind { SumLeqSum, SumLeqConst, SumGeqConst, SumEqSum, SumEqConst };

    Kind kind = Kind::SumLeqConst;
    std::vector<VarId> lhs;
    std::vector<VarId> rhs;
    std::int64_t constant = 0;

    static LinearAtom leq(std::vector<VarId> l, std::vector<VarId> r) {
        return {Kind::SumLeqSum, std::move(l), std::move(r), 0};
    }
    static LinearAtom eq(std::vector<VarId> l, std::vector<VarId> r) {
        return {Kind::SumEqSum, std::move(l), std::move(r), 0};
    }
    static LinearAtom leq_const(std::vector<VarId> l, std::int64_t c) { return {Kind::SumLeqConst, std::move(l), {}, c}; }
    static LinearAtom geq_const(std::vector<VarId> l, std::int64_t c) { return {Kind::SumGeqConst, std::move(l), {}, c}; }
    static LinearAtom eq_const(std::vector<VarId> l, std::int64_t c) { return {Kind::SumEqConst, std::move(l), {}, c}; }

    bool operator==(const LinearAtom&) const = default;
};

// Boolean combination of atoms.
struct Matrix {
    enum class Op { True, False, Atom, And, Or, Not };

    Op op = Op::True;
    LinearAtom atom;
    std::vector<Matrix> kids;

    static Matrix truth() { return {}; }
    static Matrix falsity() { return {Op::False, {}, {}}; }
    static Matrix of(LinearAtom a) { return {Op::Atom, std::move(a), {}}; }
    static Matrix conj(std::vector<Matrix> k) { return {Op::And, {}, std::move(k)}; }
    static Matrix disj(std::vector<Matrix> k) { return {Op::Or, {}, std::move(k)}; }
    static Matrix negate(Matrix m) { return {Op::Not, {}, {std::move(m)}}; }

    bool operator==(const Matrix&) const = default;
};

// Existential Presburger formula. Variables 0..freeCount-1 are the Parikh counts x_a
// (one per alphabet symbol, alphabet order); the bound variables follow.
struct EPFormula {
    std::size_t freeCount = 0;
    std::vector<std::string> boundNames;
    Matrix matrix;

    [[nodiscard]] std::size_t var_count() const { return freeCount + boundNames.size(); }
    [[nodiscard]] VarId bound(std::size_t i) const { return static_cast<VarId>(freeCount + i); }
};

using ParikhVector = std::vector<std::uint64_t>;

struct PresburgerAutomaton {
    Nfa nfa;
    EPFormula formula;
};

class MissingVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SearchLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] bool eval_formula(const EPFormula& f, const ParikhVector& assignment,
                                const std::vector<std::uint64_t>& bound_assignment);

// Linear constraint sum(coeff * var) rel rhs over nonnegative integers.
struct LinearConstraint {
    enum class Rel { Le, Ge, Eq };

    std::vector<std::pair<VarId, std::int64_t>> terms;
    Rel rel = Rel::Le;
    std::int64_t rhs = 0;
};

[[nodiscard]] LinearConstraint lower_atom(const LinearAtom& a);
// Disjunctive normal form; each branch is a conjunction of constraints.
[[nodiscard]] std::vector<std::vector<LinearConstraint>> to_dnf(const Matrix& m);

struct IlpOptions {
    // Overrides the small-solution bound used to cut off branch-and-bound.
    std::optional<std::uint64_t> variableBound;
    // 0 = unlimited; otherwise SearchLimitExceeded is thrown past this many nodes.
    std::size_t nodeLimit = 0;
};

struct IlpStats {
    std::size_t nodes = 0;
    std::size_t bigRationalFallbacks = 0;
    std::size_t exactFallbacks = 0; // LPs whose floating-point basis could not be certified
};

// n * (m * (a_max + 1))^(2m + 1), saturated.
[[nodiscard]] std::uint64_t small_solution_bound(std::size_t n, std::size_t m, std::int64_t a_max);

// Nonnegative integer point minimizing sum(objective * x) found first by depth-first
// branch-and-bound over exact LP relaxations. objective must be nonnegative.
[[nodiscard]] std::optional<std::vector<std::uint64_t>>
solve_ilp(const std::vector<LinearConstraint>& rows, std::size_t var_count, const std::vector<std::int64_t>& objective,
          const IlpOptions& options = {}, IlpStats* stats = nullptr);

[[nodiscard]] std::optional<std::vector<std::uint64_t>>
integer_feasible(const std::vector<LinearAtom>& atoms, std::size_t var_count, const IlpOptions& options = {});

struct ParikhOptions {
    IlpOptions ilp;
    // 0 = unlimited; caps connectivity branches per query.
    std::size_t maxSupports = 0;
};

struct ParikhStats {
    std::size_t queries = 0;
    std::size_t supportsTried = 0;
    std::size_t ilpNodes = 0;
};

struct ParikhSolution {
    std::vector<Symbol> word;
    std::vector<std::uint64_t> transitionCounts; // indexed like nfa.ts.transitions()
    std::vector<std::uint64_t> bound;
};

[[nodiscard]] std::optional<ParikhSolution> parikh_solve(const PresburgerAutomaton& pa, const ParikhOptions& options = {},
                                                         ParikhStats* stats = nullptr);
[[nodiscard]] std::optional<std::vector<Symbol>> parikh_feasible(const PresburgerAutomaton& pa);

[[nodiscard]] std::optional<std::vector<Symbol>> brute_force_oracle(const PresburgerAutomaton& pa, std::size_t max_len);

[[nodiscard]] ParikhVector parikh_of(const std::vector<Symbol>& word, std::size_t alphabet_size);

// Euler path from `start` using every transition exactly counts[t] times.
[[nodiscard]] std::vector<std::uint32_t> euler_path(const TransitionSystem& ts, State start,
                                                    const std::vector<std::uint64_t>& counts);

} // namespace dw
