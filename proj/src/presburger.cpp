// SPDX-License-Identifier: Apache-2.0
#include "dw/presburger.hpp"

#include "simplex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace dw {

namespace {

std::int64_t sum_of(const std::vector<VarId>& vars, const std::vector<std::uint64_t>& values) {
    std::int64_t s = 0;
    for (VarId v : vars) {
        if (v >= values.size())
            throw MissingVariable("variable " + std::to_string(v) + " has no value");
        s += static_cast<std::int64_t>(values[v]);
    }
    return s;
}

bool eval_atom(const LinearAtom& a, const std::vector<std::uint64_t>& values) {
    std::int64_t l = sum_of(a.lhs, values);
    switch (a.kind) {
    case LinearAtom::Kind::SumLeqSum:
        return l <= sum_of(a.rhs, values);
    case LinearAtom::Kind::SumEqSum:
        return l == sum_of(a.rhs, values);
    case LinearAtom::Kind::SumLeqConst:
        return l <= a.constant;
    case LinearAtom::Kind::SumGeqConst:
        return l >= a.constant;
    case LinearAtom::Kind::SumEqConst:
        return l == a.constant;
    }
    return false;
}

bool eval_matrix(const Matrix& m, const std::vector<std::uint64_t>& values) {
    switch (m.op) {
    case Matrix::Op::True:
        return true;
    case Matrix::Op::False:
        return false;
    case Matrix::Op::Atom:
        return eval_atom(m.atom, values);
    case Matrix::Op::And:
        return std::all_of(m.kids.begin(), m.kids.end(), [&](const Matrix& k) { return eval_matrix(k, values); });
    case Matrix::Op::Or:
        return std::any_of(m.kids.begin(), m.kids.end(), [&](const Matrix& k) { return eval_matrix(k, values); });
    case Matrix::Op::Not:
        return !eval_matrix(m.kids.at(0), values);
    }
    return false;
}

} // namespace

bool eval_formula(const EPFormula& f, const ParikhVector& assignment, const std::vector<std::uint64_t>& bound_assignment) {
    if (assignment.size() != f.freeCount)
        throw MissingVariable("free assignment has wrong length");
    if (bound_assignment.size() != f.boundNames.size())
        throw MissingVariable("bound assignment has wrong length");
    std::vector<std::uint64_t> values(assignment);
    values.insert(values.end(), bound_assignment.begin(), bound_assignment.end());
    return eval_matrix(f.matrix, values);
}

LinearConstraint lower_atom(const LinearAtom& a) {
    std::map<VarId, std::int64_t> coeff;
    for (VarId v : a.lhs)
        coeff[v] += 1;
    LinearConstraint c;
    switch (a.kind) {
    case LinearAtom::Kind::SumLeqSum:
    case LinearAtom::Kind::SumEqSum:
        for (VarId v : a.rhs)
            coeff[v] -= 1;
        c.rel = a.kind == LinearAtom::Kind::SumLeqSum ? LinearConstraint::Rel::Le : LinearConstraint::Rel::Eq;
        c.rhs = 0;
        break;
    case LinearAtom::Kind::SumLeqConst:
        c.rel = LinearConstraint::Rel::Le;
        c.rhs = a.constant;
        break;
    case LinearAtom::Kind::SumGeqConst:
        c.rel = LinearConstraint::Rel::Ge;
        c.rhs = a.constant;
        break;
    case LinearAtom::Kind::SumEqConst:
        c.rel = LinearConstraint::Rel::Eq;
        c.rhs = a.constant;
        break;
    }
    for (auto [v, k] : coeff)
        if (k != 0)
            c.terms.emplace_back(v, k);
    return c;
}

namespace {

using Dnf = std::vector<std::vector<LinearConstraint>>;

Dnf negated(const LinearConstraint& c) {
    LinearConstraint lo = c, hi = c;
    switch (c.rel) {
    case LinearConstraint::Rel::Le:
        hi.rel = LinearConstraint::Rel::Ge;
        hi.rhs = c.rhs + 1;
        return {{hi}};
    case LinearConstraint::Rel::Ge:
        lo.rel = LinearConstraint::Rel::Le;
        lo.rhs = c.rhs - 1;
        return {{lo}};
    case LinearConstraint::Rel::Eq:
        lo.rel = LinearConstraint::Rel::Le;
        lo.rhs = c.rhs - 1;
        hi.rel = LinearConstraint::Rel::Ge;
        hi.rhs = c.rhs + 1;
        return {{lo}, {hi}};
    }
    return {};
}

Dnf dnf(const Matrix& m, bool neg) {
    using Op = Matrix::Op;
    switch (m.op) {
    case Op::True:
        return neg ? Dnf{} : Dnf{{}};
    case Op::False:
        return neg ? Dnf{{}} : Dnf{};
    case Op::Atom: {
        auto c = lower_atom(m.atom);
        return neg ? negated(c) : Dnf{{c}};
    }
    case Op::Not:
        return dnf(m.kids.at(0), !neg);
    case Op::And:
    case Op::Or: {
        bool conj = (m.op == Op::And) != neg;
        if (conj) {
            Dnf acc{{}};
            for (const auto& k : m.kids) {
                Dnf part = dnf(k, neg);
                Dnf next;
                for (const auto& a : acc) {
                    for (const auto& b : part) {
                        auto merged = a;
                        merged.insert(merged.end(), b.begin(), b.end());
                        next.push_back(std::move(merged));
                    }
                }
                acc = std::move(next);
                if (acc.empty())
                    break;
            }
            return acc;
        }
        Dnf acc;
        for (const auto& k : m.kids) {
            Dnf part = dnf(k, neg);
            acc.insert(acc.end(), part.begin(), part.end());
        }
        return acc;
    }
    }
    return {};
}

} // namespace

std::vector<std::vector<LinearConstraint>> to_dnf(const Matrix& m) { return dnf(m, false); }

std::uint64_t small_solution_bound(std::size_t n, std::size_t m, std::int64_t a_max) {
    constexpr std::uint64_t cap = std::uint64_t{1} << 62;
    auto mul = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        if (a == 0 || b == 0)
            return 0;
        if (a > cap / b)
            return cap;
        return std::min(cap, a * b);
    };
    std::uint64_t base = mul(std::max<std::uint64_t>(m, 1), static_cast<std::uint64_t>(std::max<std::int64_t>(a_max, 0)) + 1);
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < 2 * m + 1 && p < cap; ++i)
        p = mul(p, base);
    return mul(std::max<std::uint64_t>(n, 1), p);
}

namespace {

template <typename Num>
std::optional<std::vector<Num>> lp(const std::vector<detail::LpRow>& rows, std::size_t n,
                                   const std::vector<std::int64_t>& cost) {
    return detail::simplex_solve<Num>(rows, n, cost);
}

struct Relaxed {
    bool feasible = false;
    std::size_t fractional = SIZE_MAX; // most fractional variable
    std::int64_t floor_value = 0;
    std::int64_t sum_ceil = 0;         // ceil of the sum of all variables
    std::vector<std::uint64_t> integral;
};

template <typename Num>
Relaxed summarize(const std::optional<std::vector<Num>>& x) {
    Relaxed r;
    if (!x)
        return r;
    r.feasible = true;
    r.integral.resize(x->size());
    Num total(0), best(2);
    for (std::size_t j = 0; j < x->size(); ++j) {
        const Num& v = (*x)[j];
        total = total + v;
        const std::int64_t f = detail::floor_of(v);
        r.integral[j] = static_cast<std::uint64_t>(f);
        if (detail::is_integer(v))
            continue;
        // distance from one half, doubled
        Num d = (v - Num(f)) * Num(2) - Num(1);
        if (d < Num(0))
            d = Num(0) - d;
        if (d < best) {
            best = d;
            r.fractional = j;
            r.floor_value = f;
        }
    }
    r.sum_ceil = detail::floor_of(total) + (detail::is_integer(total) ? 0 : 1);
    return r;
}

Relaxed relax(const std::vector<detail::LpRow>& rows, std::size_t n, const std::vector<std::int64_t>& cost,
              IlpStats* stats) {
    // a floating-point run proposes a basis, which is then confirmed exactly
    std::optional<detail::LpResult<double>> hint;
    try {
        hint = detail::simplex_core<double>(rows, n, cost);
    } catch (const std::exception&) {
    }
    if (hint) {
        try {
            if (auto c = detail::certify_basis<detail::Rat64>(rows, n, hint->basis, hint->feasible))
                return summarize(c->feasible ? std::optional(std::move(c->x)) : std::nullopt);
        } catch (const detail::RatOverflow&) {
            if (auto c = detail::certify_basis<detail::BigRat>(rows, n, hint->basis, hint->feasible))
                return summarize(c->feasible ? std::optional(std::move(c->x)) : std::nullopt);
        }
    }
    if (stats)
        ++stats->exactFallbacks;
    try {
        return summarize(lp<detail::Rat64>(rows, n, cost));
    } catch (const detail::RatOverflow&) {
        if (stats)
            ++stats->bigRationalFallbacks;
        return summarize(lp<detail::BigRat>(rows, n, cost));
    }
}

// Exact reductions before branch and bound: rows that force their variables to zero, and
// equalities x_k = sum d_j x_j (d_j >= 0) which eliminate x_k. Both keep integrality and
// nonnegativity, so solutions map back one to one.
struct Presolved {
    bool infeasible = false;
    std::vector<detail::LpRow> rows;          // over reduced columns
    std::vector<std::int64_t> cost;           // per reduced column
    std::vector<std::uint32_t> columns;       // reduced column -> original variable
    std::size_t original = 0;
    std::vector<std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::int64_t>>>> definitions;

    [[nodiscard]] std::vector<std::uint64_t> expand(const std::vector<std::uint64_t>& x) const {
        std::vector<std::uint64_t> out(original, 0);
        for (std::size_t c = 0; c < columns.size(); ++c)
            out[columns[c]] = x[c];
        for (auto it = definitions.rbegin(); it != definitions.rend(); ++it) {
            std::uint64_t v = 0;
            for (auto [j, d] : it->second)
                v += static_cast<std::uint64_t>(d) * out[j];
            out[it->first] = v;
        }
        return out;
    }
};

struct PresolveOverflow {};

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
    std::int64_t m = 0, r = 0;
    if (__builtin_mul_overflow(a, b, &m) || __builtin_add_overflow(acc, m, &r))
        throw PresolveOverflow{};
    return r;
}

Presolved presolve(const std::vector<detail::LpRow>& base, std::size_t var_count, const std::vector<std::int64_t>& cost_in) {
    struct Row {
        std::map<std::uint32_t, std::int64_t> terms;
        int rel = 0;
        std::int64_t rhs = 0;
        bool live = true;
    };
    auto identity = [&] {
        Presolved p;
        p.original = var_count;
        p.rows = base;
        p.cost = cost_in;
        p.columns.resize(var_count);
        std::iota(p.columns.begin(), p.columns.end(), 0u);
        return p;
    };
    try {
        Presolved p;
        p.original = var_count;
        std::vector<Row> rows;
        for (const auto& r : base) {
            Row w;
            for (auto [v, k] : r.terms)
                w.terms[v] = checked_mul_add(w.terms[v], k, 1);
            std::erase_if(w.terms, [](const auto& t) { return t.second == 0; });
            w.rel = r.rel;
            w.rhs = r.rhs;
            rows.push_back(std::move(w));
        }
        std::vector<std::int64_t> cost(cost_in);
        std::vector<bool> gone(var_count, false); // fixed to zero or eliminated
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& r : rows) {
                if (!r.live)
                    continue;
                std::erase_if(r.terms, [&](const auto& t) { return gone[t.first] || t.second == 0; });
                if (r.terms.empty()) {
                    bool ok = r.rel < 0 ? 0 <= r.rhs : (r.rel > 0 ? 0 >= r.rhs : r.rhs == 0);
                    if (!ok) {
                        p.infeasible = true;
                        return p;
                    }
                    r.live = false;
                    continue;
                }
                bool all_pos = true, all_neg = true;
                for (auto [v, k] : r.terms)
                    (k > 0 ? all_neg : all_pos) = false;
                // sum of nonnegative terms <= 0 (or >= 0 after negation)
                if (r.rhs == 0 && ((all_pos && r.rel <= 0) || (all_neg && r.rel >= 0))) {
                    for (auto [v, k] : r.terms)
                        gone[v] = true;
                    r.live = false;
                    changed = true;
                    continue;
                }
                if (r.rel != 0 || r.rhs != 0)
                    continue;
                // x_k with coefficient +-1 against terms of the opposite sign
                std::optional<std::uint32_t> pick;
                for (auto [v, k] : r.terms) {
                    if (k != 1 && k != -1)
                        continue;
                    bool opposite = true;
                    for (auto [u, c] : r.terms)
                        if (u != v && (c > 0) == (k > 0))
                            opposite = false;
                    if (opposite && r.terms.size() > 1)
                        pick = v; // keeps the last, so lower variables represent merged pairs
                }
                if (!pick)
                    continue;
                const std::uint32_t k = *pick;
                const std::int64_t sk = r.terms[k];
                std::vector<std::pair<std::uint32_t, std::int64_t>> def;
                for (auto [u, c] : r.terms)
                    if (u != k)
                        def.emplace_back(u, -c * sk);
                r.live = false;
                for (auto& o : rows) {
                    if (!o.live)
                        continue;
                    auto it = o.terms.find(k);
                    if (it == o.terms.end())
                        continue;
                    const std::int64_t f = it->second;
                    o.terms.erase(it);
                    for (auto [u, d] : def)
                        o.terms[u] = checked_mul_add(o.terms[u], f, d);
                }
                for (auto [u, d] : def)
                    cost[u] = checked_mul_add(cost[u], cost[k], d);
                cost[k] = 0;
                gone[k] = true;
                p.definitions.emplace_back(k, std::move(def));
                changed = true;
            }
        }
        std::vector<std::int64_t> column(var_count, -1);
        for (const auto& r : rows) {
            if (!r.live)
                continue;
            detail::LpRow out;
            for (auto [v, k] : r.terms) {
                if (k == 0)
                    continue;
                if (column[v] < 0) {
                    column[v] = static_cast<std::int64_t>(p.columns.size());
                    p.columns.push_back(v);
                }
                out.terms.emplace_back(static_cast<std::uint32_t>(column[v]), k);
            }
            out.rel = r.rel;
            out.rhs = r.rhs;
            if (out.terms.empty()) {
                bool ok = out.rel < 0 ? 0 <= out.rhs : (out.rel > 0 ? 0 >= out.rhs : out.rhs == 0);
                if (!ok) {
                    p.infeasible = true;
                    return p;
                }
                continue;
            }
            p.rows.push_back(std::move(out));
        }
        for (std::uint32_t v : p.columns)
            p.cost.push_back(cost[v]);
        return p;
    } catch (const PresolveOverflow&) {
        return identity();
    }
}

// Depth-first branch and bound under a cap on the sum of all variables. The cap doubles
// until it covers var_count * bound, so every round is a finite search and small solutions
// are found before deep ceil chains are explored.
std::optional<std::vector<std::uint64_t>> branch_and_bound(const std::vector<detail::LpRow>& base, std::size_t var_count,
                                                           const std::vector<std::int64_t>& cost, std::uint64_t bound,
                                                           const IlpOptions& options, IlpStats* stats) {
    std::vector<std::int64_t> lo(var_count, 0), hi(var_count, -1); // hi < 0: unbounded
    std::size_t nodes = 0;
    std::int64_t cap = 0;
    std::function<std::optional<std::vector<std::uint64_t>>()> node = [&]() -> std::optional<std::vector<std::uint64_t>> {
        ++nodes;
        if (stats)
            ++stats->nodes;
        if (options.nodeLimit && nodes > options.nodeLimit)
            throw SearchLimitExceeded("branch-and-bound node limit exceeded");
        std::vector<detail::LpRow> all(base);
        for (std::size_t j = 0; j < var_count; ++j) {
            if (lo[j] > 0)
                all.push_back({{{static_cast<std::uint32_t>(j), 1}}, 1, lo[j]});
            if (hi[j] >= 0)
                all.push_back({{{static_cast<std::uint32_t>(j), 1}}, -1, hi[j]});
        }
        if (cap > 0) {
            detail::LpRow sum;
            for (std::size_t j = 0; j < var_count; ++j)
                sum.terms.emplace_back(static_cast<std::uint32_t>(j), 1);
            sum.rel = -1;
            sum.rhs = cap;
            all.push_back(std::move(sum));
        }
        auto r = relax(all, var_count, cost, stats);
        if (!r.feasible)
            return std::nullopt;
        if (r.fractional == SIZE_MAX)
            return r.integral;
        const std::size_t j = r.fractional;
        const std::int64_t f = r.floor_value;
        auto saved_lo = lo[j], saved_hi = hi[j];
        hi[j] = f;
        auto down = node();
        hi[j] = saved_hi;
        if (down)
            return down;
        if (static_cast<std::uint64_t>(f + 1) <= bound) {
            lo[j] = f + 1;
            auto up = node();
            lo[j] = saved_lo;
            if (up)
                return up;
        }
        return std::nullopt;
    };

    auto root = relax(base, var_count, cost, stats);
    if (!root.feasible)
        return std::nullopt;
    if (root.fractional == SIZE_MAX)
        return root.integral;
    // beyond this the cap no longer restricts anything the bound allows
    const double full = static_cast<double>(bound) * static_cast<double>(std::max<std::size_t>(var_count, 1));
    const double last = std::min(full, 0x1p61);
    cap = std::max<std::int64_t>(2 * root.sum_ceil, 8);
    while (static_cast<double>(cap) < last) {
        if (auto x = node())
            return x;
        cap *= 2;
    }
    cap = 0;
    return node();
}

} // namespace

std::optional<std::vector<std::uint64_t>> solve_ilp(const std::vector<LinearConstraint>& rows, std::size_t var_count,
                                                    const std::vector<std::int64_t>& objective,
                                                    const IlpOptions& options, IlpStats* stats) {
    std::vector<detail::LpRow> base;
    std::int64_t a_max = 0;
    for (const auto& c : rows) {
        detail::LpRow r;
        for (auto [v, k] : c.terms) {
            if (v >= var_count)
                throw MissingVariable("constraint references undeclared variable");
            r.terms.emplace_back(v, k);
            a_max = std::max(a_max, std::abs(k));
        }
        a_max = std::max(a_max, std::abs(c.rhs));
        r.rel = c.rel == LinearConstraint::Rel::Le ? -1 : (c.rel == LinearConstraint::Rel::Ge ? 1 : 0);
        r.rhs = c.rhs;
        if (r.terms.empty()) {
            bool ok = r.rel < 0 ? 0 <= r.rhs : (r.rel > 0 ? 0 >= r.rhs : r.rhs == 0);
            if (!ok)
                return std::nullopt;
            continue;
        }
        base.push_back(std::move(r));
    }
    const std::uint64_t bound =
        options.variableBound ? *options.variableBound : small_solution_bound(var_count, base.size(), a_max);
    std::vector<std::int64_t> cost(objective);
    cost.resize(var_count, 0);

    Presolved red = presolve(base, var_count, cost);
    if (red.infeasible)
        return std::nullopt;
    auto x = branch_and_bound(red.rows, red.columns.size(), red.cost, bound, options, stats);
    if (!x)
        return std::nullopt;
    return red.expand(*x);
}

std::optional<std::vector<std::uint64_t>> integer_feasible(const std::vector<LinearAtom>& atoms, std::size_t var_count,
                                                           const IlpOptions& options) {
    std::vector<LinearConstraint> rows;
    for (const auto& a : atoms)
        rows.push_back(lower_atom(a));
    return solve_ilp(rows, var_count, std::vector<std::int64_t>(var_count, 1), options);
}

ParikhVector parikh_of(const std::vector<Symbol>& word, std::size_t alphabet_size) {
    ParikhVector p(alphabet_size, 0);
    for (Symbol s : word)
        p.at(s) += 1;
    return p;
}

std::vector<std::uint32_t> euler_path(const TransitionSystem& ts, State start, const std::vector<std::uint64_t>& counts) {
    std::vector<std::uint64_t> left(counts);
    std::vector<std::size_t> ptr(ts.state_count(), 0);
    std::vector<std::pair<State, std::uint32_t>> stack{{start, UINT32_MAX}};
    std::vector<std::uint32_t> path;
    while (!stack.empty()) {
        State v = stack.back().first;
        const auto& outs = ts.out(v);
        auto& p = ptr[v];
        while (p < outs.size() && left[outs[p]] == 0)
            ++p;
        if (p < outs.size()) {
            auto ti = outs[p];
            --left[ti];
            stack.emplace_back(ts.transitions()[ti].to, ti);
        } else {
            if (stack.back().second != UINT32_MAX)
                path.push_back(stack.back().second);
            stack.pop_back();
        }
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a < b)
            parent[b] = a;
        else if (b < a)
            parent[a] = b;
    }
};

} // namespace

std::optional<ParikhSolution> parikh_solve(const PresburgerAutomaton& pa, const ParikhOptions& options,
                                           ParikhStats* stats) {
    const auto& ts = pa.nfa.ts;
    const std::size_t k = ts.symbol_count();
    if (pa.formula.freeCount != k)
        throw std::invalid_argument("parikh_solve: formula/alphabet mismatch");
    const std::size_t nb = pa.formula.boundNames.size();
    const State s = pa.nfa.initial;
    auto reach = reachable_from(ts, s);
    auto branches = to_dnf(pa.formula.matrix);
    if (branches.empty())
        return std::nullopt;

    for (State f = 0; f < ts.state_count(); ++f) {
        if (!pa.nfa.finals[f] || !reach[f])
            continue;
        std::vector<bool> target(ts.state_count(), false);
        target[f] = true;
        auto co = coreachable_to(ts, target);
        std::vector<std::uint32_t> used; // useful transition indices
        for (std::uint32_t ti = 0; ti < ts.transitions().size(); ++ti) {
            const auto& t = ts.transitions()[ti];
            if (reach[t.from] && co[t.to])
                used.push_back(ti);
        }
        const std::size_t base_vars = k + nb;
        const std::size_t n = base_vars + used.size();
        auto count_var = [&](std::size_t i) { return static_cast<VarId>(base_vars + i); };

        std::vector<LinearConstraint> flow;
        for (Symbol a = 0; a < k; ++a) {
            LinearConstraint c;
            c.terms.emplace_back(a, 1);
            for (std::size_t i = 0; i < used.size(); ++i)
                if (ts.transitions()[used[i]].symbol == a)
                    c.terms.emplace_back(count_var(i), -1);
            c.rel = LinearConstraint::Rel::Eq;
            flow.push_back(std::move(c));
        }
        for (State v = 0; v < ts.state_count(); ++v) {
            LinearConstraint c;
            std::map<VarId, std::int64_t> coeff;
            for (std::size_t i = 0; i < used.size(); ++i) {
                const auto& t = ts.transitions()[used[i]];
                if (t.from == v)
                    coeff[count_var(i)] += 1;
                if (t.to == v)
                    coeff[count_var(i)] -= 1;
            }
            for (auto [var, w] : coeff)
                if (w != 0)
                    c.terms.emplace_back(var, w);
            c.rel = LinearConstraint::Rel::Eq;
            c.rhs = (v == s ? 1 : 0) - (v == f ? 1 : 0);
            if (c.terms.empty() && c.rhs == 0)
                continue;
            flow.push_back(std::move(c));
        }
        std::vector<std::int64_t> cost(n, 0);
        for (std::size_t i = 0; i < used.size(); ++i)
            cost[count_var(i)] = 1;

        for (const auto& branch : branches) {
            if (stats)
                ++stats->queries;
            std::vector<LinearConstraint> rows(flow);
            rows.insert(rows.end(), branch.begin(), branch.end());
            std::size_t supports = 0;

            // Lazy connectivity: a disconnected component C of the used edges forces either
            // no edge inside C or some edge crossing C's boundary.
            std::function<std::optional<ParikhSolution>(std::vector<LinearConstraint>&)> search =
                [&](std::vector<LinearConstraint>& cur) -> std::optional<ParikhSolution> {
                ++supports;
                if (stats)
                    ++stats->supportsTried;
                if (options.maxSupports && supports > options.maxSupports)
                    throw SearchLimitExceeded("support limit exceeded");
                IlpStats ist;
                auto sol = solve_ilp(cur, n, cost, options.ilp, &ist);
                if (stats)
                    stats->ilpNodes += ist.nodes;
                if (!sol)
                    return std::nullopt;
                UnionFind uf(ts.state_count());
                std::vector<bool> touched(ts.state_count(), false);
                for (std::size_t i = 0; i < used.size(); ++i) {
                    if ((*sol)[count_var(i)] == 0)
                        continue;
                    const auto& t = ts.transitions()[used[i]];
                    uf.unite(t.from, t.to);
                    touched[t.from] = touched[t.to] = true;
                }
                std::uint32_t root = uf.find(s);
                std::optional<std::uint32_t> bad;
                for (State v = 0; v < ts.state_count(); ++v) {
                    if (touched[v] && uf.find(v) != root) {
                        bad = uf.find(v);
                        break;
                    }
                }
                if (!bad) {
                    ParikhSolution out;
                    out.transitionCounts.assign(ts.transitions().size(), 0);
                    for (std::size_t i = 0; i < used.size(); ++i)
                        out.transitionCounts[used[i]] = (*sol)[count_var(i)];
                    for (auto ti : euler_path(ts, s, out.transitionCounts))
                        out.word.push_back(ts.transitions()[ti].symbol);
                    out.bound.assign(sol->begin() + static_cast<std::ptrdiff_t>(k),
                                     sol->begin() + static_cast<std::ptrdiff_t>(base_vars));
                    return out;
                }
                std::vector<bool> in_c(ts.state_count(), false);
                for (State v = 0; v < ts.state_count(); ++v)
                    in_c[v] = touched[v] && uf.find(v) == *bad;
                LinearConstraint inside, crossing;
                inside.rel = LinearConstraint::Rel::Le;
                inside.rhs = 0;
                crossing.rel = LinearConstraint::Rel::Ge;
                crossing.rhs = 1;
                for (std::size_t i = 0; i < used.size(); ++i) {
                    const auto& t = ts.transitions()[used[i]];
                    if (in_c[t.from] && in_c[t.to])
                        inside.terms.emplace_back(count_var(i), 1);
                    else if (in_c[t.from] != in_c[t.to])
                        crossing.terms.emplace_back(count_var(i), 1);
                }
                cur.push_back(inside);
                auto r = search(cur);
                cur.pop_back();
                if (r)
                    return r;
                if (crossing.terms.empty())
                    return std::nullopt;
                cur.push_back(crossing);
                r = search(cur);
                cur.pop_back();
                return r;
            };
            auto r = search(rows);
            if (r)
                return r;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Symbol>> parikh_feasible(const PresburgerAutomaton& pa) {
    auto r = parikh_solve(pa);
    if (!r)
        return std::nullopt;
    return r->word;
}

namespace {

std::int64_t max_constant(const Matrix& m) {
    std::int64_t c = m.op == Matrix::Op::Atom ? m.atom.constant : 0;
    for (const auto& k : m.kids)
        c = std::max(c, max_constant(k));
    return c;
}

bool formula_holds_bounded(const EPFormula& f, const ParikhVector& p, std::uint64_t zmax) {
    std::vector<std::uint64_t> z(f.boundNames.size(), 0);
    for (;;) {
        if (eval_formula(f, p, z))
            return true;
        std::size_t i = 0;
        for (; i < z.size(); ++i) {
            if (++z[i] <= zmax)
                break;
            z[i] = 0;
        }
        if (i == z.size())
            return false;
    }
}

} // namespace

std::optional<std::vector<Symbol>> brute_force_oracle(const PresburgerAutomaton& pa, std::size_t max_len) {
    const auto& ts = pa.nfa.ts;
    const std::size_t k = ts.symbol_count();
    const std::uint64_t zmax = max_len + static_cast<std::uint64_t>(max_constant(pa.formula.matrix)) + 1;
    std::vector<Symbol> word;
    std::optional<std::vector<Symbol>> found;
    std::function<void(const std::vector<bool>&, std::size_t)> dfs = [&](const std::vector<bool>& cur,
                                                                         std::size_t len) {
        if (found)
            return;
        if (word.size() == len) {
            bool acc = false;
            for (State q = 0; q < ts.state_count(); ++q)
                acc = acc || (cur[q] && pa.nfa.finals[q]);
            if (acc && formula_holds_bounded(pa.formula, parikh_of(word, k), zmax))
                found = word;
            return;
        }
        for (Symbol a = 0; a < k && !found; ++a) {
            std::vector<bool> next(ts.state_count(), false);
            bool any = false;
            for (State q = 0; q < ts.state_count(); ++q) {
                if (!cur[q])
                    continue;
                for (auto ti : ts.out(q)) {
                    const auto& t = ts.transitions()[ti];
                    if (t.symbol == a) {
                        next[t.to] = true;
                        any = true;
                    }
                }
            }
            if (!any)
                continue;
            word.push_back(a);
            dfs(next, len);
            word.pop_back();
        }
    };
    std::vector<bool> init(ts.state_count(), false);
    if (ts.state_count() == 0)
        return std::nullopt;
    init[pa.nfa.initial] = true;
    for (std::size_t len = 0; len <= max_len && !found; ++len)
        dfs(init, len);
    return found;
}

} // namespace dw
