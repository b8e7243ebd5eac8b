#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcog/error.hpp"
#include "pcog/goal.hpp"
#include "pcog/graph.hpp"
#include "pcog/optima.hpp"
#include "pcog/rational.hpp"

namespace pcog {

using AgentId = std::string;

inline constexpr std::size_t kMaxAgents = 24;

/// Who owns what. Elements are vertex ids, or canonical "u-v" edge keys when
/// the goal is vertex cover. `agents` fixes the order used by coalitions and
/// allocations.
struct Ownership {
    std::vector<AgentId> agents;
    std::map<std::string, AgentId> assignment;

    std::size_t num_agents() const noexcept { return agents.size(); }

    std::vector<std::string> owned_by(const AgentId& a) const {
        std::vector<std::string> out;
        for (const auto& [elem, owner] : assignment)
            if (owner == a) out.push_back(elem);
        return out;
    }

    friend bool operator==(const Ownership&, const Ownership&) = default;
};

struct GameInstance {
    Graph graph;
    Goal goal = Goal::MinVertexCover;
    Ownership ownership;
    std::optional<VertexId> supply;

    std::size_t num_agents() const noexcept { return ownership.num_agents(); }

    friend bool operator==(const GameInstance& a, const GameInstance& b) {
        return a.graph == b.graph && a.goal == b.goal && a.ownership == b.ownership &&
               a.supply == b.supply;
    }
};

/// Subset of agents as a bitmask over the agent list order.
struct Coalition {
    std::uint32_t mask = 0;

    bool contains(std::size_t i) const { return (mask >> i & 1u) != 0; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask)); }
    bool empty() const { return mask == 0; }

    static Coalition all(std::size_t n) {
        return {n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1};
    }
    static Coalition singleton(std::size_t i) { return {std::uint32_t{1} << i}; }

    std::vector<AgentId> members(const Ownership& own) const {
        std::vector<AgentId> out;
        for (std::size_t i = 0; i < own.agents.size(); ++i)
            if (contains(i)) out.push_back(own.agents[i]);
        return out;
    }

    friend bool operator==(Coalition a, Coalition b) { return a.mask == b.mask; }
    friend bool operator<(Coalition a, Coalition b) { return a.mask < b.mask; }
};

inline std::size_t agent_index(const Ownership& own, const AgentId& a) {
    for (std::size_t i = 0; i < own.agents.size(); ++i)
        if (own.agents[i] == a) return i;
    throw InputError("unknown agent '" + a + "'");
}

inline Coalition make_coalition(const Ownership& own, const std::vector<AgentId>& names) {
    if (own.agents.size() > 32) throw SizeError("too many agents for a coalition bitmask");
    Coalition c;
    for (const auto& a : names) c.mask |= std::uint32_t{1} << agent_index(own, a);
    return c;
}

/// Largest number of elements owned by one agent.
inline std::size_t c_max(const GameInstance& inst) {
    std::map<AgentId, std::size_t> count;
    for (const auto& [elem, owner] : inst.ownership.assignment) ++count[owner];
    std::size_t best = 0;
    for (const auto& [a, k] : count) best = std::max(best, k);
    return best;
}

/// Every broken rule, one string each; empty when the instance is well formed.
inline std::vector<std::string> validate(const GameInstance& inst) {
    std::vector<std::string> out;
    auto add = [&](const std::string& msg) {
        if (std::find(out.begin(), out.end(), msg) == out.end()) out.push_back(msg);
    };
    const Graph& g = inst.graph;
    const auto& own = inst.ownership;

    std::set<AgentId> declared;
    if (own.agents.empty()) add("no agents");
    for (const auto& a : own.agents) {
        if (a.empty()) add("empty agent id");
        if (!declared.insert(a).second) add("duplicate agent");
    }

    const bool by_edges = owns_edges(inst.goal);
    std::set<std::string> elements;
    if (by_edges) {
        for (const auto& e : g.edges()) elements.insert(e.key());
    } else {
        for (const auto& v : g.vertices()) elements.insert(v);
    }

    for (const auto& [elem, owner] : own.assignment) {
        if (!declared.count(owner)) add("unknown agent");
        if (!elements.count(elem)) add(by_edges ? "unknown edge" : "unknown vertex");
    }

    if (inst.goal == Goal::MinSpanningTree) {
        if (!inst.supply) {
            add("supply missing");
        } else if (!g.has_vertex(*inst.supply)) {
            add("supply not a vertex");
        } else if (own.assignment.count(*inst.supply)) {
            add("supply owned");
        }
        const auto n = g.num_vertices();
        if (g.num_edges() != (n < 2 ? 0 : n * (n - 1) / 2)) add("graph not complete");
        for (const auto& e : g.edges())
            if (!e.weight) add("edge weight missing");
    } else if (inst.supply) {
        add("supply given for a goal without one");
    }

    for (const auto& elem : elements) {
        if (inst.supply && elem == *inst.supply) continue;
        if (!own.assignment.count(elem)) add(by_edges ? "edge unowned" : "vertex unowned");
    }
    return out;
}

inline void require_valid(const GameInstance& inst) {
    auto problems = validate(inst);
    if (problems.empty()) return;
    std::string msg = "invalid instance:";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw InputError(msg);
}

/// A validated instance plus a per-coalition memo of values. Values are
/// computed on demand; concurrent callers may race to fill the same slot,
/// which is harmless because they compute the same number.
class Game {
public:
    explicit Game(GameInstance inst) : inst_(std::move(inst)) {
        require_valid(inst_);
        if (inst_.num_agents() > kMaxAgents)
            throw SizeError("more than " + std::to_string(kMaxAgents) + " agents");
        const auto n = inst_.num_agents();
        edges_of_.resize(n);
        vertices_of_.resize(n);
        for (const auto& [elem, owner] : inst_.ownership.assignment) {
            const auto i = agent_index(inst_.ownership, owner);
            if (owns_edges(inst_.goal)) {
                const auto dash = elem.find('-');
                edges_of_[i].push_back(*inst_.graph.find_edge(elem.substr(0, dash), elem.substr(dash + 1)));
            } else {
                vertices_of_[i].push_back(elem);
            }
        }
    }

    const GameInstance& instance() const noexcept { return inst_; }
    Goal goal() const noexcept { return inst_.goal; }
    std::size_t num_agents() const noexcept { return inst_.num_agents(); }
    const std::vector<AgentId>& agents() const noexcept { return inst_.ownership.agents; }
    Coalition grand() const { return Coalition::all(num_agents()); }

    void check(Coalition s) const {
        if ((s.mask & ~grand().mask) != 0) throw InputError("coalition names agents outside the instance");
    }

    /// The subgraph a coalition plays on.
    Graph coalition_graph(Coalition s) const {
        check(s);
        if (owns_edges(inst_.goal)) {
            std::vector<Edge> es;
            for (std::size_t i = 0; i < num_agents(); ++i)
                if (s.contains(i)) es.insert(es.end(), edges_of_[i].begin(), edges_of_[i].end());
            return induced_by_edges(inst_.graph, es);
        }
        std::set<VertexId> vs;
        if (inst_.goal == Goal::MinSpanningTree) vs.insert(*inst_.supply);
        for (std::size_t i = 0; i < num_agents(); ++i)
            if (s.contains(i)) vs.insert(vertices_of_[i].begin(), vertices_of_[i].end());
        return induced_by_vertices(inst_.graph, vs);
    }

    /// Optimum with witness, not memoized.
    OptResult solve_coalition(Coalition s) const { return solve(inst_.goal, coalition_graph(s)); }

    Rational value(Coalition s) const {
        check(s);
        {
            std::shared_lock lock(memo_mutex_);
            auto it = memo_.find(s.mask);
            if (it != memo_.end()) return it->second;
        }
        Rational v = solve_coalition(s).value;
        std::unique_lock lock(memo_mutex_);
        memo_.emplace(s.mask, v);
        return v;
    }

    Rational grand_value() const { return value(grand()); }

    std::size_t memo_size() const {
        std::shared_lock lock(memo_mutex_);
        return memo_.size();
    }

private:
    GameInstance inst_;
    std::vector<std::vector<Edge>> edges_of_;
    std::vector<std::vector<VertexId>> vertices_of_;
    mutable std::shared_mutex memo_mutex_;
    mutable std::unordered_map<std::uint32_t, Rational> memo_;
};

inline Rational coalition_value(const Game& game, Coalition s) { return game.value(s); }
inline Rational coalition_value(const GameInstance& inst, Coalition s) { return Game(inst).value(s); }
inline Rational grand_value(const Game& game) { return game.grand_value(); }
inline Rational grand_value(const GameInstance& inst) { return Game(inst).grand_value(); }

/// Splits an instance along connected components, keeping together any
/// components that share an agent. Agents owning nothing and components
/// owned by nobody (isolated vertices of a vertex cover game) join the group
/// of the first owned component. Groups are ordered by smallest vertex;
/// agents keep their original relative order.
inline std::vector<GameInstance> decompose(const GameInstance& inst) {
    if (inst.goal == Goal::MinSpanningTree)
        throw UnsupportedError("spanning tree games live on complete graphs; nothing to decompose");
    require_valid(inst);
    const Graph& g = inst.graph;
    const auto comps = connected_components(g);
    if (comps.size() <= 1) return {inst};

    std::map<VertexId, std::size_t> comp_of;
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (const auto& v : comps[c]) comp_of[v] = c;

    std::vector<std::size_t> parent(comps.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    auto comp_of_element = [&](const std::string& elem) {
        if (!owns_edges(inst.goal)) return comp_of.at(elem);
        return comp_of.at(elem.substr(0, elem.find('-')));
    };

    std::map<AgentId, std::size_t> first_comp;
    for (const auto& [elem, owner] : inst.ownership.assignment) {
        const auto c = comp_of_element(elem);
        auto [it, fresh] = first_comp.emplace(owner, c);
        if (!fresh) unite(it->second, c);
    }
    std::vector<bool> owned(comps.size(), false);
    for (const auto& [elem, owner] : inst.ownership.assignment) owned[comp_of_element(elem)] = true;
    const auto anchor = static_cast<std::size_t>(std::find(owned.begin(), owned.end(), true) - owned.begin());
    if (anchor == comps.size()) return {inst};
    for (std::size_t c = 0; c < comps.size(); ++c)
        if (!owned[c]) unite(anchor, c);

    // roots are the smallest component index in each group, so sorting by root
    // sorts by smallest vertex
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t c = 0; c < comps.size(); ++c) groups[find(c)].push_back(c);

    std::vector<GameInstance> out;
    for (const auto& [root, members] : groups) {
        std::set<VertexId> vs;
        for (auto c : members) vs.insert(comps[c].begin(), comps[c].end());
        GameInstance part;
        part.goal = inst.goal;
        part.graph = induced_by_vertices(g, vs);
        for (const auto& [elem, owner] : inst.ownership.assignment)
            if (find(comp_of_element(elem)) == root) part.ownership.assignment.emplace(elem, owner);
        for (const auto& a : inst.ownership.agents) {
            auto it = first_comp.find(a);
            const bool here = it == first_comp.end() ? find(anchor) == root : find(it->second) == root;
            if (here) part.ownership.agents.push_back(a);
        }
        out.push_back(std::move(part));
    }
    return out;
}

}  // namespace pcog
