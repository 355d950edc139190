// SPDX-License-Identifier: Apache-2.0
// Two-phase primal simplex over a dense tableau, exact rationals or double.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace dw::detail {

struct RatOverflow : std::overflow_error {
    RatOverflow() : std::overflow_error("rational overflow") {}
};

// int64 rational with overflow detection; callers fall back to big rationals on overflow.
class Rat64 {
public:
    Rat64() = default;
    Rat64(std::int64_t v) : n_(v), d_(1) {} // NOLINT(google-explicit-constructor)

    [[nodiscard]] std::int64_t num() const { return n_; }
    [[nodiscard]] std::int64_t den() const { return d_; }
    [[nodiscard]] int sign() const { return (n_ > 0) - (n_ < 0); }
    [[nodiscard]] bool is_zero() const { return n_ == 0; }

    friend Rat64 operator+(const Rat64& a, const Rat64& b) {
        if (a.d_ == b.d_)
            return make(static_cast<__int128>(a.n_) + b.n_, a.d_);
        return make(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                    static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat64 operator-(const Rat64& a, const Rat64& b) {
        if (a.d_ == b.d_)
            return make(static_cast<__int128>(a.n_) - b.n_, a.d_);
        return make(static_cast<__int128>(a.n_) * b.d_ - static_cast<__int128>(b.n_) * a.d_,
                    static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat64 operator*(const Rat64& a, const Rat64& b) {
        if (a.n_ == 0 || b.n_ == 0)
            return Rat64();
        return make(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat64 operator/(const Rat64& a, const Rat64& b) {
        if (b.n_ == 0)
            throw std::domain_error("division by zero");
        return make(static_cast<__int128>(a.n_) * b.d_, static_cast<__int128>(a.d_) * b.n_);
    }
    friend bool operator<(const Rat64& a, const Rat64& b) {
        return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    }
    friend bool operator==(const Rat64& a, const Rat64& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0)
            a = -a;
        if (b < 0)
            b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static Rat64 make(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0)
            return Rat64();
        constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
        if (d == 1) {
            if (n > lim || n < -lim)
                throw RatOverflow();
            Rat64 r;
            r.n_ = static_cast<std::int64_t>(n);
            return r;
        }
        __int128 g = 1;
        if (n <= lim && n >= -lim && d <= lim)
            g = std::gcd(static_cast<std::int64_t>(n < 0 ? -n : n), static_cast<std::int64_t>(d));
        else
            g = gcd128(n, d);
        n /= g;
        d /= g;
        if (n > lim || n < -lim || d > lim)
            throw RatOverflow();
        Rat64 r;
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
};

using BigRat = boost::multiprecision::cpp_rational;

inline int sign_of(const Rat64& r) { return r.sign(); }
inline int sign_of(const BigRat& r) { return r.sign(); }
inline bool zero_of(const Rat64& r) { return r.is_zero(); }
inline bool zero_of(const BigRat& r) { return r.is_zero(); }

// floor/ceil/integrality of an exact value
inline bool is_integer(const Rat64& r) { return r.den() == 1; }
inline bool is_integer(const BigRat& r) { return boost::multiprecision::denominator(r) == 1; }
inline std::int64_t floor_of(const Rat64& r) {
    std::int64_t q = r.num() / r.den();
    if (r.num() % r.den() != 0 && r.num() < 0)
        --q;
    return q;
}
inline std::int64_t floor_of(const BigRat& r) {
    boost::multiprecision::cpp_int n = boost::multiprecision::numerator(r);
    boost::multiprecision::cpp_int d = boost::multiprecision::denominator(r);
    boost::multiprecision::cpp_int q = n / d;
    if (n % d != 0 && n < 0)
        --q;
    if (q > INT64_MAX || q < INT64_MIN)
        throw RatOverflow();
    return static_cast<std::int64_t>(q);
}

struct LpRow {
    std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
    int rel = 0; // -1: <=, 0: =, +1: >=
    std::int64_t rhs = 0;
};

// Column layout shared by the simplex and the exact basis check: [0,n) structural, then
// one slack per inequality row, then one artificial per row with rel >= 0 (after making
// every right-hand side nonnegative).
struct StandardForm {
    std::size_t m = 0, n = 0, cols = 0, firstArt = 0;
    std::vector<int> sign, rel;
    std::vector<std::int64_t> slackCol, artCol;

    StandardForm(const std::vector<LpRow>& rows, std::size_t n_) : m(rows.size()), n(n_), cols(n_) {
        sign.assign(m, 1);
        rel.resize(m);
        slackCol.assign(m, -1);
        artCol.assign(m, -1);
        for (std::size_t i = 0; i < m; ++i) {
            rel[i] = rows[i].rel;
            if (rows[i].rhs < 0) {
                sign[i] = -1;
                rel[i] = -rel[i];
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            if (rel[i] != 0)
                slackCol[i] = static_cast<std::int64_t>(cols++);
        firstArt = cols;
        for (std::size_t i = 0; i < m; ++i)
            if (rel[i] >= 0)
                artCol[i] = static_cast<std::int64_t>(cols++);
    }
};

inline int sign_of(double v) { return v > 1e-9 ? 1 : (v < -1e-9 ? -1 : 0); }
inline bool zero_of(double v) { return sign_of(v) == 0; }

// Entries usable as pivots; in floating point tiny entries are treated as noise.
template <typename Num>
bool pivot_candidate(const Num& v) {
    if constexpr (std::is_floating_point_v<Num>)
        return v > 1e-7;
    else
        return sign_of(v) > 0;
}

template <typename Num>
struct LpResult {
    bool feasible = false;
    std::vector<Num> x;
    std::vector<std::size_t> basis; // final basis, one column per row
};

// min c.x subject to rows, x >= 0. Costs must be nonnegative, so the problem is never
// unbounded. With Num = double the result is only a hint (see certify_basis).
template <typename Num>
LpResult<Num> simplex_core(const std::vector<LpRow>& rows, std::size_t n, const std::vector<std::int64_t>& cost) {
    const StandardForm sf(rows, n);
    const std::size_t m = sf.m, cols = sf.cols, first_art = sf.firstArt;

    const std::size_t width = cols + 1;
    std::vector<std::vector<Num>> t(m, std::vector<Num>(width, Num(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (auto [v, c] : rows[i].terms)
            t[i][v] = t[i][v] + Num(sf.sign[i] * c);
        t[i][cols] = Num(sf.sign[i] * rows[i].rhs);
        if (sf.rel[i] < 0) {
            t[i][sf.slackCol[i]] = Num(1);
            basis[i] = static_cast<std::size_t>(sf.slackCol[i]);
        } else {
            if (sf.rel[i] > 0)
                t[i][sf.slackCol[i]] = Num(-1);
            t[i][sf.artCol[i]] = Num(1);
            basis[i] = static_cast<std::size_t>(sf.artCol[i]);
        }
    }

    std::vector<Num> obj(width, Num(0));
    std::vector<std::size_t> nz;
    auto pivot = [&](std::size_t r, std::size_t c) {
        Num p = t[r][c];
        nz.clear();
        for (std::size_t j = 0; j < width; ++j) {
            if (!zero_of(t[r][j])) {
                t[r][j] = t[r][j] / p;
                nz.push_back(j);
            } else {
                t[r][j] = Num(0);
            }
        }
        auto eliminate = [&](std::vector<Num>& row) {
            Num f = row[c];
            if (zero_of(f))
                return;
            for (std::size_t j : nz) {
                row[j] = row[j] - f * t[r][j];
                if constexpr (std::is_floating_point_v<Num>)
                    if (row[j] < 1e-11 && row[j] > -1e-11)
                        row[j] = 0;
            }
            row[c] = Num(0);
        };
        for (std::size_t i = 0; i < m; ++i)
            if (i != r)
                eliminate(t[i]);
        eliminate(obj);
        basis[r] = c;
    };
    auto optimize = [&](std::size_t allowed_cols) {
        // Dantzig pricing; after a run of degenerate pivots fall back to Bland's rule, which
        // cannot cycle, until the objective moves again.
        std::size_t degenerate = 0;
        for (std::size_t iter = 0;; ++iter) {
            if constexpr (std::is_floating_point_v<Num>) {
                if (iter > 50 * (m + cols) + 1000)
                    throw std::runtime_error("simplex: iteration limit");
            }
            std::size_t enter = allowed_cols;
            const bool bland = degenerate > 2 * m + 8;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (sign_of(obj[j]) < 0 && (enter == allowed_cols || (!bland && obj[j] < obj[enter]))) {
                    enter = j;
                    if (bland)
                        break;
                }
            }
            if (enter == allowed_cols)
                return;
            std::size_t leave = m;
            Num best(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (!pivot_candidate(t[i][enter]))
                    continue;
                Num ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m)
                throw std::logic_error("simplex: unbounded with nonnegative costs");
            degenerate = zero_of(best) ? degenerate + 1 : 0;
            pivot(leave, enter);
        }
    };

    LpResult<Num> out;
    // phase 1: minimize the sum of artificials
    if (first_art < cols) {
        for (std::size_t j = first_art; j < cols; ++j)
            obj[j] = Num(1);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= first_art) {
                for (std::size_t j = 0; j < width; ++j)
                    obj[j] = obj[j] - t[i][j];
            }
        }
        optimize(cols);
        bool positive = sign_of(obj[cols]) != 0; // obj[cols] = -(phase-1 optimum)
        if constexpr (std::is_floating_point_v<Num>)
            positive = obj[cols] < -1e-6;
        if (positive) {
            out.basis = basis;
            return out;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < first_art)
                continue;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (pivot_candidate(t[i][j]) || pivot_candidate(Num(0) - t[i][j])) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // phase 2
    std::fill(obj.begin(), obj.end(), Num(0));
    for (std::size_t j = 0; j < n; ++j)
        obj[j] = Num(cost[j]);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t b = basis[i];
        if (b < n && !zero_of(obj[b])) {
            Num f = obj[b];
            for (std::size_t j = 0; j < width; ++j)
                obj[j] = obj[j] - f * t[i][j];
        }
    }
    optimize(first_art);

    out.feasible = true;
    out.x.assign(n, Num(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n)
            out.x[basis[i]] = t[i][cols];
    out.basis = std::move(basis);
    return out;
}

template <typename Num>
std::optional<std::vector<Num>> simplex_solve(const std::vector<LpRow>& rows, std::size_t n,
                                              const std::vector<std::int64_t>& cost) {
    auto r = simplex_core<Num>(rows, n, cost);
    if (!r.feasible)
        return std::nullopt;
    return std::move(r.x);
}

// Gaussian elimination on a square system; nullopt when singular.
template <typename Num>
std::optional<std::vector<Num>> solve_square(std::vector<std::vector<Num>> a, std::vector<Num> b) {
    const std::size_t m = b.size();
    std::vector<std::size_t> where(m, m);
    for (std::size_t c = 0, r = 0; c < m; ++c) {
        std::size_t p = m;
        for (std::size_t i = r; i < m; ++i)
            if (!zero_of(a[i][c])) {
                p = i;
                break;
            }
        if (p == m)
            return std::nullopt;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || zero_of(a[i][c]))
                continue;
            Num f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < m; ++j)
                if (!zero_of(a[r][j]))
                    a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        where[c] = r++;
    }
    std::vector<Num> x(m);
    for (std::size_t c = 0; c < m; ++c)
        x[c] = b[where[c]] / a[where[c]][c];
    return x;
}

// Exact check of a basis proposed by an inexact run. A feasibility claim holds when the
// basic solution is nonnegative with every artificial at zero; an infeasibility claim holds
// when the phase-1 duals give a Farkas certificate (y.A_j <= 0 on real columns, y.b > 0).
// Returns nullopt when the claim cannot be confirmed.
template <typename Num>
std::optional<LpResult<Num>> certify_basis(const std::vector<LpRow>& rows, std::size_t n,
                                           const std::vector<std::size_t>& basis, bool feasible) {
    const StandardForm sf(rows, n);
    const std::size_t m = sf.m;
    if (basis.size() != m)
        return std::nullopt;
    // sparse columns of the standard-form matrix
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> col(sf.cols);
    for (std::size_t i = 0; i < m; ++i) {
        for (auto [v, c] : rows[i].terms)
            col[v].emplace_back(i, sf.sign[i] * c);
        if (sf.slackCol[i] >= 0)
            col[sf.slackCol[i]].emplace_back(i, sf.rel[i] < 0 ? 1 : -1);
        if (sf.artCol[i] >= 0)
            col[sf.artCol[i]].emplace_back(i, 1);
    }
    std::vector<std::vector<Num>> bm(m, std::vector<Num>(m, Num(0)));
    for (std::size_t k = 0; k < m; ++k) {
        if (basis[k] >= sf.cols)
            return std::nullopt;
        for (auto [i, c] : col[basis[k]])
            bm[i][k] = bm[i][k] + Num(c);
    }
    std::vector<Num> b(m);
    for (std::size_t i = 0; i < m; ++i)
        b[i] = Num(sf.sign[i] * rows[i].rhs);
    LpResult<Num> out;
    out.basis = basis;
    if (feasible) {
        auto xb = solve_square<Num>(bm, b);
        if (!xb)
            return std::nullopt;
        out.x.assign(n, Num(0));
        for (std::size_t k = 0; k < m; ++k) {
            const Num& v = (*xb)[k];
            if (sign_of(v) < 0 || (basis[k] >= sf.firstArt && !zero_of(v)))
                return std::nullopt;
            if (basis[k] < n)
                out.x[basis[k]] = v;
        }
        out.feasible = true;
        return out;
    }
    // B^T y = c_B with phase-1 costs
    std::vector<std::vector<Num>> bt(m, std::vector<Num>(m, Num(0)));
    std::vector<Num> cb(m, Num(0));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < m; ++i)
            bt[k][i] = bm[i][k];
        if (basis[k] >= sf.firstArt)
            cb[k] = Num(1);
    }
    auto y = solve_square<Num>(bt, cb);
    if (!y)
        return std::nullopt;
    for (std::size_t j = 0; j < sf.firstArt; ++j) {
        Num d(0);
        for (auto [i, c] : col[j])
            d = d + (*y)[i] * Num(c);
        if (sign_of(d) > 0)
            return std::nullopt;
    }
    Num yb(0);
    for (std::size_t i = 0; i < m; ++i)
        yb = yb + (*y)[i] * b[i];
    if (sign_of(yb) <= 0)
        return std::nullopt;
    return out;
}

} // namespace dw::detail
