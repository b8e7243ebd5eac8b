#pragma once

#include <stdexcept>
#include <vector>

#include "pcog/error.hpp"
#include "pcog/game.hpp"
#include "pcog/lp.hpp"
#include "pcog/optima.hpp"
#include "pcog/rational.hpp"

namespace pcog {

struct FractionalDsReport {
    Rational fractional_value;
    Rational integer_value;
    bool equal = false;
    std::vector<Rational> lp_point;  // one entry per vertex, in vertex order
};

/// min sum_v y_v  s.t.  y(N[v]) >= 1 for every v,  y >= 0.
inline LinearProgram fractional_ds_lp(const Graph& g) {
    LinearProgram lp;
    lp.variables = g.vertices();
    lp.nonneg = true;
    const auto n = g.num_vertices();
    lp.objective = std::vector<Rational>(n, Rational(1));
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Rational> row(n, Rational(0));
        row[v] = 1;
        for (auto w : g.neighbors(v)) row[w] = 1;
        lp.add(std::move(row), Relation::GreaterEq, Rational(1));
    }
    return lp;
}

inline FractionalDsReport fractional_ds_value(const Graph& g) {
    const auto out = minimize(fractional_ds_lp(g));
    if (out.kind != LpKind::Optimal) throw std::logic_error("fractional domination LP is always bounded and feasible");
    FractionalDsReport rep;
    rep.fractional_value = out.objective_value;
    rep.lp_point = out.point;
    rep.integer_value = min_dominating_set(g).value;
    rep.equal = rep.fractional_value == rep.integer_value;
    return rep;
}

/// Core existence of the unpartitioned dominating set game (one vertex per
/// agent): nonempty exactly when the fractional and integer domination
/// numbers coincide.
inline bool cog_ds_core_exists(const GameInstance& inst) {
    if (inst.goal != Goal::MinDominatingSet)
        throw UnsupportedError("the fractional characterization covers dominating set games only");
    require_valid(inst);
    for (const auto& a : inst.ownership.agents)
        if (inst.ownership.owned_by(a).size() != 1)
            throw UnsupportedError("the fractional characterization needs exactly one vertex per agent");
    return fractional_ds_value(inst.graph).equal;
}

}  // namespace pcog
