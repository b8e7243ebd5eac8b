#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcog/error.hpp"
#include "pcog/rational.hpp"

namespace pcog {

enum class Relation { LessEq, GreaterEq, Equal };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs;
};

struct LinearProgram {
    std::vector<std::string> variables;
    std::vector<Constraint> constraints;
    std::optional<std::vector<Rational>> objective;  // minimized
    bool nonneg = true;

    std::size_t num_vars() const noexcept { return variables.size(); }

    void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

    void check_shape() const {
        for (std::size_t i = 0; i < constraints.size(); ++i)
            if (constraints[i].coeffs.size() != variables.size())
                throw InputError("constraint " + std::to_string(i) + " has " +
                                 std::to_string(constraints[i].coeffs.size()) + " coefficients, expected " +
                                 std::to_string(variables.size()));
        if (objective && objective->size() != variables.size())
            throw InputError("objective length does not match the variable count");
    }
};

enum class LpKind { Feasible, Infeasible, Optimal, Unbounded };

inline std::string_view lp_kind_name(LpKind k) {
    switch (k) {
        case LpKind::Feasible: return "FEASIBLE";
        case LpKind::Infeasible: return "INFEASIBLE";
        case LpKind::Optimal: return "OPTIMAL";
        case LpKind::Unbounded: return "UNBOUNDED";
    }
    return "?";
}

/// `farkas` has one multiplier per constraint: for a <= row it scales
/// (a.x <= b), for a >= row it scales (-a.x <= -b), both nonnegative; for an
/// equality it is free and scales (a.x = b). The scaled rows add up to
/// l.x <= r with r < 0 and l >= 0 (l = 0 on free variables), which no
/// admissible x satisfies.
struct LpOutcome {
    LpKind kind = LpKind::Infeasible;
    std::vector<Rational> point;
    Rational objective_value;
    std::vector<Rational> farkas;
};

inline bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.num_vars()) return false;
    if (lp.nonneg && std::any_of(x.begin(), x.end(), [](const Rational& v) { return v < 0; }))
        return false;
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (c.coeffs[k] != 0) lhs += c.coeffs[k] * x[k];
        switch (c.rel) {
            case Relation::LessEq: if (lhs > c.rhs) return false; break;
            case Relation::GreaterEq: if (lhs < c.rhs) return false; break;
            case Relation::Equal: if (lhs != c.rhs) return false; break;
        }
    }
    return true;
}

inline bool check_farkas(const LinearProgram& lp, const std::vector<Rational>& lambda) {
    if (lambda.size() != lp.constraints.size()) return false;
    std::vector<Rational> combo(lp.num_vars(), Rational(0));
    Rational rhs = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const auto& c = lp.constraints[i];
        if (c.coeffs.size() != lp.num_vars()) return false;
        if (c.rel != Relation::Equal && lambda[i] < 0) return false;
        if (lambda[i] == 0) continue;
        const Rational s = c.rel == Relation::GreaterEq ? Rational(-lambda[i]) : lambda[i];
        for (std::size_t k = 0; k < combo.size(); ++k)
            if (c.coeffs[k] != 0) combo[k] += s * c.coeffs[k];
        rhs += s * c.rhs;
    }
    for (const auto& l : combo)
        if (lp.nonneg ? l < 0 : l != 0) return false;
    return rhs < 0;
}

namespace detail {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

/// Revised simplex with an explicit exact basis inverse and Bland's rule:
/// minimize g.z subject to M z = h, z >= 0, starting from a feasible basis of
/// unit columns. Only the handful of rows is dense; the (possibly very many)
/// columns stay sparse.
class RevisedSimplex {
public:
    enum class Status { Optimal, Unbounded };

    RevisedSimplex(std::size_t rows, std::vector<SparseColumn> cols, std::vector<Rational> h,
                   std::vector<std::size_t> basis)
        : rows_(rows), cols_(std::move(cols)), basis_(std::move(basis)), xb_(std::move(h)),
          allowed_(cols_.size(), true), in_basis_(cols_.size(), false) {
        binv_.assign(rows_, std::vector<Rational>(rows_, Rational(0)));
        for (std::size_t i = 0; i < rows_; ++i) {
            binv_[i][i] = 1;
            in_basis_[basis_[i]] = true;
        }
    }

    void set_costs(std::vector<Rational> g) { g_ = std::move(g); }
    void forbid(std::size_t j) { allowed_[j] = false; }
    std::size_t num_columns() const { return cols_.size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }

    Status run() {
        for (;;) {
            const auto pi = duals();
            std::size_t enter = cols_.size();
            for (std::size_t j = 0; j < cols_.size() && enter == cols_.size(); ++j) {
                if (in_basis_[j] || !allowed_[j]) continue;
                Rational d = g_[j];
                for (const auto& [k, v] : cols_[j]) d -= pi[k] * v;
                if (d < 0) enter = j;
            }
            if (enter == cols_.size()) return Status::Optimal;

            auto u = ftran(enter);
            std::size_t leave = rows_;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (u[i] <= 0) continue;
                Rational ratio = xb_[i] / u[i];
                if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave]))
                    leave = i, best = std::move(ratio);
            }
            if (leave == rows_) {
                ray_column_ = enter;
                ray_u_ = std::move(u);
                return Status::Unbounded;
            }
            pivot(leave, enter, u);
        }
    }

    /// pi = g_B B^-1.
    std::vector<Rational> duals() const {
        std::vector<Rational> pi(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            const Rational& gb = g_[basis_[i]];
            if (gb == 0) continue;
            for (std::size_t k = 0; k < rows_; ++k)
                if (binv_[i][k] != 0) pi[k] += gb * binv_[i][k];
        }
        return pi;
    }

    std::vector<Rational> values() const {
        std::vector<Rational> z(cols_.size(), Rational(0));
        for (std::size_t i = 0; i < rows_; ++i) z[basis_[i]] = xb_[i];
        return z;
    }

    /// Direction of unboundedness found by the last run().
    std::vector<Rational> ray() const {
        std::vector<Rational> dz(cols_.size(), Rational(0));
        dz[ray_column_] = 1;
        for (std::size_t i = 0; i < rows_; ++i) dz[basis_[i]] = -ray_u_[i];
        return dz;
    }

    std::vector<Rational> ftran(std::size_t j) const {
        std::vector<Rational> u(rows_, Rational(0));
        for (const auto& [k, v] : cols_[j])
            for (std::size_t i = 0; i < rows_; ++i)
                if (binv_[i][k] != 0) u[i] += binv_[i][k] * v;
        return u;
    }

    /// After phase 1: swap basic columns rejected by `keep` for admissible
    /// ones where some pivot element is nonzero. Rows where none exists are
    /// redundant and keep their (zero-valued) column.
    template <class Keep>
    void drive_out(Keep keep) {
        for (std::size_t p = 0; p < rows_; ++p) {
            if (keep(basis_[p])) continue;
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (in_basis_[j] || !keep(j)) continue;
                auto u = ftran(j);
                if (u[p] != 0) {
                    pivot(p, j, u);
                    break;
                }
            }
        }
    }

private:
    void pivot(std::size_t p, std::size_t enter, const std::vector<Rational>& u) {
        const Rational up = u[p];
        for (auto& v : binv_[p]) v /= up;
        xb_[p] /= up;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == p || u[i] == 0) continue;
            const Rational f = u[i];
            for (std::size_t k = 0; k < rows_; ++k)
                if (binv_[p][k] != 0) binv_[i][k] -= f * binv_[p][k];
            xb_[i] -= f * xb_[p];
        }
        in_basis_[basis_[p]] = false;
        in_basis_[enter] = true;
        basis_[p] = enter;
    }

    std::size_t rows_;
    std::vector<SparseColumn> cols_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> xb_;
    std::vector<Rational> g_;
    std::vector<bool> allowed_, in_basis_;
    std::vector<std::vector<Rational>> binv_;
    std::size_t ray_column_ = 0;
    std::vector<Rational> ray_u_;
};

/// The LP rewritten as  min c.x  s.t.  A x >= b, x >= 0  (free variables
/// split in two, <= rows negated, equalities doubled), together with the maps
/// needed to translate answers back.
struct StandardForm {
    std::size_t n = 0;                       // standard-form columns
    std::vector<SparseColumn> rows;          // one sparse row of A per >= row
    std::vector<Rational> b, c;
    std::vector<std::size_t> origin;         // row -> original constraint
    std::vector<int> row_sign;               // +1 if row is a.x >= b, -1 if -a.x >= -b
    std::vector<std::pair<std::size_t, int>> var_of_col;  // column -> (variable, sign)
};

inline StandardForm standardize(const LinearProgram& lp, bool with_objective) {
    StandardForm sf;
    const auto nv = lp.num_vars();
    std::vector<std::vector<std::pair<std::size_t, int>>> cols_of(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        cols_of[k].emplace_back(sf.var_of_col.size(), 1);
        sf.var_of_col.emplace_back(k, 1);
        if (!lp.nonneg) {
            cols_of[k].emplace_back(sf.var_of_col.size(), -1);
            sf.var_of_col.emplace_back(k, -1);
        }
    }
    sf.n = sf.var_of_col.size();
    sf.c.assign(sf.n, Rational(0));
    if (with_objective)
        for (std::size_t col = 0; col < sf.n; ++col)
            sf.c[col] = (*lp.objective)[sf.var_of_col[col].first] * sf.var_of_col[col].second;

    auto emit = [&](std::size_t i, int sign) {
        const auto& con = lp.constraints[i];
        SparseColumn row;
        for (std::size_t k = 0; k < nv; ++k) {
            if (con.coeffs[k] == 0) continue;
            for (auto [col, s] : cols_of[k]) row.emplace_back(col, con.coeffs[k] * (s * sign));
        }
        sf.rows.push_back(std::move(row));
        sf.b.push_back(con.rhs * sign);
        sf.origin.push_back(i);
        sf.row_sign.push_back(sign);
    };
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        switch (lp.constraints[i].rel) {
            case Relation::GreaterEq: emit(i, 1); break;
            case Relation::LessEq: emit(i, -1); break;
            case Relation::Equal: emit(i, 1); emit(i, -1); break;
        }
    }
    return sf;
}

enum class DualResult { Optimal, Unbounded, Infeasible };

/// Solves the dual  max b.y  s.t.  A^T y <= c, y >= 0  of a standard form.
/// On Optimal fills `x` with the primal solution read off the final basis;
/// on Unbounded fills `ray` with y >= 0, y^T A <= 0, y.b > 0.
inline DualResult solve_dual(const StandardForm& sf, std::vector<Rational>& x, std::vector<Rational>& ray) {
    const auto r = sf.n, m = sf.rows.size();
    std::vector<int> sigma(r, 1);
    for (std::size_t k = 0; k < r; ++k)
        if (sf.c[k] < 0) sigma[k] = -1;

    // columns: y_0..y_{m-1}, slack s_0..s_{r-1}, then artificials
    std::vector<SparseColumn> cols(m + r);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [k, v] : sf.rows[i]) cols[i].emplace_back(k, v * sigma[k]);
    for (std::size_t k = 0; k < r; ++k) cols[m + k].emplace_back(k, Rational(sigma[k]));
    std::vector<Rational> h(r);
    std::vector<std::size_t> basis(r);
    std::vector<std::size_t> artificial;
    for (std::size_t k = 0; k < r; ++k) {
        h[k] = sf.c[k] * sigma[k];
        if (sigma[k] > 0) {
            basis[k] = m + k;
        } else {
            basis[k] = cols.size();
            artificial.push_back(cols.size());
            cols.push_back({{k, Rational(1)}});
        }
    }
    const std::size_t first_art = m + r;
    RevisedSimplex sx(r, std::move(cols), std::move(h), std::move(basis));

    if (!artificial.empty()) {
        std::vector<Rational> g(sx.num_columns(), Rational(0));
        for (auto a : artificial) g[a] = 1;
        sx.set_costs(std::move(g));
        sx.run();  // bounded below by zero
        const auto z = sx.values();
        for (auto a : artificial)
            if (z[a] != 0) return DualResult::Infeasible;
        sx.drive_out([&](std::size_t j) { return j < first_art; });
        for (auto a : artificial) sx.forbid(a);
    }

    std::vector<Rational> g(sx.num_columns(), Rational(0));
    for (std::size_t i = 0; i < m; ++i) g[i] = -sf.b[i];
    sx.set_costs(std::move(g));
    if (sx.run() == RevisedSimplex::Status::Unbounded) {
        auto dz = sx.ray();
        ray.assign(dz.begin(), dz.begin() + static_cast<std::ptrdiff_t>(m));
        return DualResult::Unbounded;
    }
    const auto pi = sx.duals();
    x.assign(r, Rational(0));
    for (std::size_t k = 0; k < r; ++k) x[k] = -pi[k] * sigma[k];
    return DualResult::Optimal;
}

inline std::vector<Rational> farkas_from_ray(const LinearProgram& lp, const StandardForm& sf,
                                             const std::vector<Rational>& ray) {
    std::vector<Rational> lambda(lp.constraints.size(), Rational(0));
    for (std::size_t row = 0; row < ray.size(); ++row) {
        const auto i = sf.origin[row];
        if (lp.constraints[i].rel == Relation::Equal)
            lambda[i] += sf.row_sign[row] > 0 ? Rational(-ray[row]) : ray[row];
        else
            lambda[i] += ray[row];
    }
    return lambda;
}

inline std::vector<Rational> point_from_columns(const LinearProgram& lp, const StandardForm& sf,
                                                const std::vector<Rational>& xs) {
    std::vector<Rational> x(lp.num_vars(), Rational(0));
    for (std::size_t col = 0; col < sf.n; ++col) {
        const auto [k, s] = sf.var_of_col[col];
        if (s > 0) x[k] += xs[col];
        else x[k] -= xs[col];
    }
    return x;
}

inline LpOutcome solve_lp(const LinearProgram& lp, bool with_objective) {
    lp.check_shape();
    LpOutcome out;
    auto sf = standardize(lp, with_objective);
    std::vector<Rational> xs, ray;
    auto res = solve_dual(sf, xs, ray);
    if (res == DualResult::Infeasible) {
        // Dual infeasible: the primal is unbounded or infeasible. The
        // feasibility version settles which.
        sf.c.assign(sf.n, Rational(0));
        res = solve_dual(sf, xs, ray);
        if (res == DualResult::Optimal) {
            out.kind = LpKind::Unbounded;
            out.point = point_from_columns(lp, sf, xs);
            return out;
        }
    }
    if (res == DualResult::Unbounded) {
        out.kind = LpKind::Infeasible;
        out.farkas = farkas_from_ray(lp, sf, ray);
        if (!check_farkas(lp, out.farkas)) throw std::logic_error("simplex produced an invalid Farkas vector");
        return out;
    }
    out.point = point_from_columns(lp, sf, xs);
    if (!satisfies(lp, out.point)) throw std::logic_error("simplex produced an infeasible point");
    if (with_objective) {
        out.kind = LpKind::Optimal;
        out.objective_value = 0;
        for (std::size_t k = 0; k < out.point.size(); ++k)
            out.objective_value += (*lp.objective)[k] * out.point[k];
    } else {
        out.kind = LpKind::Feasible;
    }
    return out;
}

}  // namespace detail

/// FEASIBLE with an exact point, or INFEASIBLE with a Farkas vector. Any
/// objective in `lp` is ignored.
inline LpOutcome find_feasible(const LinearProgram& lp) { return detail::solve_lp(lp, false); }

/// OPTIMAL with a basic optimal point, INFEASIBLE with a Farkas vector, or
/// UNBOUNDED (the point is then merely feasible).
inline LpOutcome minimize(const LinearProgram& lp) {
    if (!lp.objective) throw InputError("minimize needs an objective");
    return detail::solve_lp(lp, true);
}

}  // namespace pcog
