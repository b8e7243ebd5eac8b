#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcog/error.hpp"
#include "pcog/game.hpp"
#include "pcog/lp.hpp"
#include "pcog/optima.hpp"
#include "pcog/rational.hpp"

namespace pcog {

/// Nonnegative payoff per agent; `values[i]` belongs to `agents[i]`.
struct Allocation {
    std::vector<AgentId> agents;
    std::vector<Rational> values;

    Allocation() = default;
    Allocation(std::vector<AgentId> a, std::vector<Rational> v) : agents(std::move(a)), values(std::move(v)) {
        if (agents.size() != values.size()) throw InputError("allocation: agent and value counts differ");
        std::set<AgentId> seen;
        for (std::size_t i = 0; i < agents.size(); ++i) {
            if (!seen.insert(agents[i]).second) throw InputError("allocation: duplicate agent '" + agents[i] + "'");
            if (values[i] < 0) throw InputError("allocation: negative value for '" + agents[i] + "'");
        }
    }

    std::size_t size() const noexcept { return agents.size(); }

    const Rational& at(const AgentId& a) const {
        for (std::size_t i = 0; i < agents.size(); ++i)
            if (agents[i] == a) return values[i];
        throw InputError("allocation has no entry for agent '" + a + "'");
    }

    Rational total() const {
        Rational s = 0;
        for (const auto& v : values) s += v;
        return s;
    }

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Values reordered to the game's agent order. The agent sets must match.
inline std::vector<Rational> aligned_values(const Game& game, const Allocation& a) {
    if (a.size() != game.num_agents()) throw InputError("allocation does not cover exactly the instance's agents");
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto& agent : game.agents()) out.push_back(a.at(agent));
    return out;
}

/// The same payoffs limited to `agents` (in that order).
inline Allocation restrict_allocation(const Allocation& a, const std::vector<AgentId>& agents) {
    std::vector<Rational> v;
    for (const auto& agent : agents) v.push_back(a.at(agent));
    return {agents, std::move(v)};
}

inline Rational coalition_sum(const std::vector<Rational>& alpha, Coalition s) {
    Rational sum = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (s.contains(i)) sum += alpha[i];
    return sum;
}

/// Strict violation of the coalition's core constraint.
inline bool violates(Goal goal, const Rational& allocated, const Rational& value) {
    return is_minimization(goal) ? allocated > value : allocated < value;
}

enum class CoreVerdict { CoreStable, NotPreImputation, Blocked };

inline std::string_view verdict_name(CoreVerdict v) {
    switch (v) {
        case CoreVerdict::CoreStable: return "CORE_STABLE";
        case CoreVerdict::NotPreImputation: return "NOT_PRE_IMPUTATION";
        case CoreVerdict::Blocked: return "BLOCKED";
    }
    return "?";
}

struct BlockingCoalition {
    Coalition coalition;
    Rational value;      // c(S) or v(S)
    Rational allocated;  // sum of the allocation over S
    OptResult witness;
};

struct VerificationReport {
    CoreVerdict verdict = CoreVerdict::CoreStable;
    Rational grand_value;
    Rational allocated_total;
    std::optional<BlockingCoalition> blocking;
};

inline bool is_pre_imputation(const Game& game, const Allocation& a) {
    const auto alpha = aligned_values(game, a);
    return coalition_sum(alpha, game.grand()) == game.grand_value();
}

inline bool is_pre_imputation(const GameInstance& inst, const Allocation& a) {
    return is_pre_imputation(Game(inst), a);
}

inline std::optional<BlockingCoalition> find_blocking_coalition(const Game& game, const Allocation& a) {
    const auto alpha = aligned_values(game, a);
    const std::uint32_t end = game.grand().mask;
    for (std::uint32_t m = 1; m != 0 && m <= end; ++m) {
        const Coalition s{m};
        Rational allocated = coalition_sum(alpha, s);
        Rational value = game.value(s);
        if (violates(game.goal(), allocated, value))
            return BlockingCoalition{s, std::move(value), std::move(allocated), game.solve_coalition(s)};
    }
    return std::nullopt;
}

inline std::optional<BlockingCoalition> find_blocking_coalition(const GameInstance& inst, const Allocation& a) {
    return find_blocking_coalition(Game(inst), a);
}

inline VerificationReport verify_core(const Game& game, const Allocation& a) {
    VerificationReport rep;
    rep.grand_value = game.grand_value();
    rep.allocated_total = coalition_sum(aligned_values(game, a), game.grand());
    if (rep.allocated_total != rep.grand_value) {
        rep.verdict = CoreVerdict::NotPreImputation;
        return rep;
    }
    rep.blocking = find_blocking_coalition(game, a);
    rep.verdict = rep.blocking ? CoreVerdict::Blocked : CoreVerdict::CoreStable;
    return rep;
}

inline VerificationReport verify_core(const GameInstance& inst, const Allocation& a) {
    return verify_core(Game(inst), a);
}

// ---------------------------------------------------------------------------
// Core existence.

/// Proof that no allocation is in the core. With minimization rows
/// sum_S(alpha) <= value and maximization rows -sum_S(alpha) <= -value, the
/// equality scaled by `equality_multiplier`, each listed row by its
/// multiplier, and each -alpha_k <= 0 by `nonnegativity[k]` add up to
/// 0 <= (negative number).
struct EmptinessCertificate {
    struct Row {
        Coalition coalition;
        Rational value;
        Rational multiplier;
    };
    Rational grand_value;
    Rational equality_multiplier;
    std::vector<Row> coalitions;
    std::vector<Rational> nonnegativity;  // game agent order
};

inline bool check_emptiness_certificate(const Game& game, const EmptinessCertificate& cert) {
    const auto n = game.num_agents();
    if (cert.nonnegativity.size() != n) return false;
    if (cert.grand_value != game.grand_value()) return false;
    const bool minimize = is_minimization(game.goal());
    std::vector<Rational> coeff(n, cert.equality_multiplier);
    Rational rhs = cert.equality_multiplier * cert.grand_value;
    for (const auto& row : cert.coalitions) {
        if (row.coalition.empty() || (row.coalition.mask & ~game.grand().mask) != 0) return false;
        if (row.multiplier < 0) return false;
        if (row.value != game.value(row.coalition)) return false;
        const Rational s = minimize ? row.multiplier : Rational(-row.multiplier);
        for (std::size_t k = 0; k < n; ++k)
            if (row.coalition.contains(k)) coeff[k] += s;
        rhs += s * row.value;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (cert.nonnegativity[k] < 0) return false;
        if (coeff[k] - cert.nonnegativity[k] != 0) return false;
    }
    return rhs < 0;
}

inline bool check_emptiness_certificate(const GameInstance& inst, const EmptinessCertificate& cert) {
    try {
        return check_emptiness_certificate(Game(inst), cert);
    } catch (const InputError&) {
        return false;
    }
}

enum class ExistenceVerdict { CoreNonempty, CoreEmpty };
enum class ExistenceMethod { FullLp, CuttingPlane };

inline std::string_view verdict_name(ExistenceVerdict v) {
    return v == ExistenceVerdict::CoreNonempty ? "CORE_NONEMPTY" : "CORE_EMPTY";
}
inline std::string_view method_name(ExistenceMethod m) {
    return m == ExistenceMethod::FullLp ? "FULL_LP" : "CUTTING_PLANE";
}

struct ExistenceReport {
    ExistenceVerdict verdict = ExistenceVerdict::CoreEmpty;
    std::optional<Allocation> allocation;
    std::optional<EmptinessCertificate> certificate;
    ExistenceMethod method = ExistenceMethod::FullLp;
    std::size_t oracle_calls = 0;
    std::size_t lp_rows = 0;  // coalition constraints in the last LP solved
};

namespace detail {

/// Core LP over alpha >= 0: row 0 is the efficiency equality, row i > 0 is
/// the constraint of `rows[i-1]`.
class CoreLp {
public:
    explicit CoreLp(const Game& game) : game_(game) {
        lp_.variables = game.agents();
        lp_.nonneg = true;
        lp_.add(std::vector<Rational>(game.num_agents(), Rational(1)), Relation::Equal, game.grand_value());
    }

    void add(Coalition s) {
        std::vector<Rational> coeffs(game_.num_agents(), Rational(0));
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            if (s.contains(k)) coeffs[k] = 1;
        lp_.add(std::move(coeffs), is_minimization(game_.goal()) ? Relation::LessEq : Relation::GreaterEq,
                game_.value(s));
        rows_.push_back(s);
    }

    std::size_t num_rows() const { return rows_.size(); }
    LpOutcome solve() const { return find_feasible(lp_); }

    EmptinessCertificate certificate(const std::vector<Rational>& farkas) const {
        EmptinessCertificate cert;
        cert.grand_value = lp_.constraints[0].rhs;
        cert.equality_multiplier = farkas[0];
        std::vector<Rational> combo(game_.num_agents(), farkas[0]);
        const bool minimize = is_minimization(game_.goal());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& mult = farkas[i + 1];
            if (mult == 0) continue;
            cert.coalitions.push_back({rows_[i], lp_.constraints[i + 1].rhs, mult});
            for (std::size_t k = 0; k < combo.size(); ++k)
                if (rows_[i].contains(k)) combo[k] += minimize ? mult : Rational(-mult);
        }
        cert.nonnegativity = std::move(combo);
        return cert;
    }

    Allocation allocation(const std::vector<Rational>& point) const { return {game_.agents(), point}; }

private:
    const Game& game_;
    LinearProgram lp_;
    std::vector<Coalition> rows_;
};

}  // namespace detail

inline constexpr std::size_t kMaxFullLpAgents = 20;

inline ExistenceReport core_existence_full_lp(const Game& game) {
    if (game.num_agents() > kMaxFullLpAgents) throw SizeError("full core LP limited to 20 agents");
    detail::CoreLp lp(game);
    for (std::uint32_t m = 1; m <= game.grand().mask; ++m) lp.add(Coalition{m});
    ExistenceReport rep;
    rep.method = ExistenceMethod::FullLp;
    rep.lp_rows = lp.num_rows();
    const auto out = lp.solve();
    if (out.kind == LpKind::Feasible) {
        rep.verdict = ExistenceVerdict::CoreNonempty;
        rep.allocation = lp.allocation(out.point);
    } else {
        rep.verdict = ExistenceVerdict::CoreEmpty;
        rep.certificate = lp.certificate(out.farkas);
    }
    return rep;
}

/// Constraint generation: solve the LP over the coalitions found so far, ask
/// the blocking-coalition search about the candidate, add what it returns.
inline ExistenceReport core_existence_cutting_plane(const Game& game) {
    detail::CoreLp lp(game);
    std::set<std::uint32_t> added;
    ExistenceReport rep;
    rep.method = ExistenceMethod::CuttingPlane;
    for (;;) {
        const auto out = lp.solve();
        rep.lp_rows = lp.num_rows();
        if (out.kind == LpKind::Infeasible) {
            rep.verdict = ExistenceVerdict::CoreEmpty;
            rep.certificate = lp.certificate(out.farkas);
            return rep;
        }
        auto candidate = lp.allocation(out.point);
        ++rep.oracle_calls;
        const auto block = find_blocking_coalition(game, candidate);
        if (!block) {
            rep.verdict = ExistenceVerdict::CoreNonempty;
            rep.allocation = std::move(candidate);
            return rep;
        }
        if (!added.insert(block->coalition.mask).second)
            throw std::logic_error("cutting plane returned a coalition that is already constrained");
        lp.add(block->coalition);
    }
}

inline ExistenceReport core_existence_full_lp(const GameInstance& inst) {
    return core_existence_full_lp(Game(inst));
}
inline ExistenceReport core_existence_cutting_plane(const GameInstance& inst) {
    return core_existence_cutting_plane(Game(inst));
}

// ---------------------------------------------------------------------------
// Closed-form allocations.

/// Maximization: v({i}) plus an equal share of the surplus. Minimization:
/// c({i}) scaled by c(N) / sum_i c({i}).
inline Allocation ir_allocation(const Game& game) {
    const auto n = game.num_agents();
    std::vector<Rational> single(n);
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        single[i] = game.value(Coalition::singleton(i));
        total += single[i];
    }
    const Rational grand = game.grand_value();
    std::vector<Rational> alpha(n, Rational(0));
    if (!is_minimization(game.goal())) {
        const Rational beta = (grand - total) / static_cast<long>(n);
        for (std::size_t i = 0; i < n; ++i) alpha[i] = single[i] + beta;
    } else if (total != 0) {
        const Rational r = grand / total;
        for (std::size_t i = 0; i < n; ++i) alpha[i] = single[i] * r;
    }
    return {game.agents(), std::move(alpha)};
}

inline Allocation ir_allocation(const GameInstance& inst) { return ir_allocation(Game(inst)); }

/// alpha'_j = b * sum of alpha_i over the i with f(i) = j.
inline Allocation lift_allocation(const Allocation& source, const std::map<AgentId, AgentId>& f,
                                  const std::vector<AgentId>& target_agents, const Rational& b) {
    if (b < 0) throw InputError("lift factor must be nonnegative");
    std::map<AgentId, Rational> sums;
    for (const auto& t : target_agents) sums.emplace(t, Rational(0));
    std::set<AgentId> hit;
    for (std::size_t i = 0; i < source.size(); ++i) {
        auto it = f.find(source.agents[i]);
        if (it == f.end()) throw InputError("lift map has no image for '" + source.agents[i] + "'");
        auto target = sums.find(it->second);
        if (target == sums.end()) throw InputError("lift map sends '" + source.agents[i] + "' outside the target agents");
        target->second += source.values[i];
        hit.insert(it->second);
    }
    if (hit.size() != sums.size()) throw InputError("lift map is not surjective onto the target agents");
    std::vector<Rational> values;
    for (const auto& t : target_agents) values.push_back(b * sums.at(t));
    return {target_agents, std::move(values)};
}

/// Per-vertex payments of Bird's rule: the weight of the edge to the parent in
/// the MST rooted at the supply vertex.
inline Allocation bird_vertex_payments(const GameInstance& inst) {
    if (inst.goal != Goal::MinSpanningTree) throw InputError("Bird's rule needs a spanning tree game");
    require_valid(inst);
    const Graph& g = inst.graph;
    const auto tree = mst_weight(g).witness_edges;
    std::vector<std::vector<const Edge*>> adj(g.num_vertices());
    for (const auto& e : tree) {
        adj[g.index_of(e.u)].push_back(&e);
        adj[g.index_of(e.v)].push_back(&e);
    }
    std::map<VertexId, Rational> pay;
    std::deque<VertexId> queue{*inst.supply};
    std::set<VertexId> seen{*inst.supply};
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (const Edge* e : adj[g.index_of(v)]) {
            const VertexId& w = e->other(v);
            if (!seen.insert(w).second) continue;
            pay.emplace(w, *e->weight);
            queue.push_back(w);
        }
    }
    std::vector<AgentId> names;
    std::vector<Rational> values;
    for (auto& [v, p] : pay) names.push_back(v), values.push_back(p);
    return {std::move(names), std::move(values)};
}

inline Allocation bird_allocation(const GameInstance& inst) {
    const auto payments = bird_vertex_payments(inst);
    // agents owning nothing are outside the image of the owner map; they pay 0
    std::vector<AgentId> owners;
    for (const auto& a : inst.ownership.agents)
        if (!inst.ownership.owned_by(a).empty()) owners.push_back(a);
    const auto lifted = lift_allocation(payments, inst.ownership.assignment, owners, Rational(1));
    std::vector<Rational> values;
    for (const auto& a : inst.ownership.agents)
        values.push_back(std::find(owners.begin(), owners.end(), a) == owners.end() ? Rational(0) : lifted.at(a));
    return {inst.ownership.agents, std::move(values)};
}

inline Allocation bird_allocation(const Game& game) { return bird_allocation(game.instance()); }

}  // namespace pcog
