#pragma once

// Reference LP answers by exhaustive vertex enumeration: every choice of n
// tight rows (constraints or x_k >= 0 bounds) is solved by Gaussian
// elimination and kept if the solution is unique and feasible. Only for tiny
// LPs with nonnegative variables, where the feasible region is pointed.

#include <optional>
#include <vector>

#include "pcog/lp.hpp"

namespace pcog::fixtures {

struct OracleRow {
    std::vector<Rational> a;
    Rational b;
};

/// Unique solution of the square system, if any.
inline std::optional<std::vector<Rational>> solve_square(std::vector<OracleRow> rows) {
    const auto n = rows.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && rows[piv].a[col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(rows[piv], rows[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || rows[r].a[col] == 0) continue;
            const Rational f = rows[r].a[col] / rows[col].a[col];
            for (std::size_t k = col; k < n; ++k) rows[r].a[k] -= f * rows[col].a[k];
            rows[r].b -= f * rows[col].b;
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rows[i].b / rows[i].a[i];
    return x;
}

/// All basic feasible points of a nonnegative-variable LP.
inline std::vector<std::vector<Rational>> enumerate_vertices(const LinearProgram& lp) {
    const auto n = lp.num_vars();
    std::vector<OracleRow> pool;
    for (const auto& c : lp.constraints) pool.push_back({c.coeffs, c.rhs});
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> e(n, Rational(0));
        e[k] = 1;
        pool.push_back({e, Rational(0)});
    }
    std::vector<std::vector<Rational>> out;
    if (n == 0) {
        if (satisfies(lp, {})) out.push_back({});
        return out;
    }
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    const auto m = pool.size();
    if (m < n) return out;
    for (;;) {
        std::vector<OracleRow> sys;
        for (auto i : pick) sys.push_back(pool[i]);
        if (auto x = solve_square(sys); x && satisfies(lp, *x)) {
            if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
        }
        // next combination
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == m - n + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

inline bool oracle_feasible(const LinearProgram& lp) { return !enumerate_vertices(lp).empty(); }

/// Minimum over vertices; meaningful only when the LP is known to be bounded.
inline std::optional<Rational> oracle_minimum(const LinearProgram& lp) {
    std::optional<Rational> best;
    for (const auto& x : enumerate_vertices(lp)) {
        Rational v = 0;
        for (std::size_t k = 0; k < x.size(); ++k) v += (*lp.objective)[k] * x[k];
        if (!best || v < *best) best = v;
    }
    return best;
}

}  // namespace pcog::fixtures
