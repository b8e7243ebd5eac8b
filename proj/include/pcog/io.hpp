#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcog/characterize.hpp"
#include "pcog/core.hpp"
#include "pcog/error.hpp"
#include "pcog/game.hpp"
#include "pcog/graph.hpp"
#include "pcog/rational.hpp"

namespace pcog::io {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

namespace detail {

inline const Json& field(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
    return *it;
}

inline std::string as_string(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ParseError(what + " must be a string");
    return j.get<std::string>();
}

/// Rationals travel as "p/q" strings; plain JSON integers are accepted too.
inline Rational as_rational(const Json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw ParseError(what + " must be a rational string");
    return parse_rational(j.get<std::string>());
}

inline void expect_object(const Json& j, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + " must be a JSON object");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graphs and instances

inline Graph graph_from_json(const Json& j) {
    using namespace detail;
    expect_object(j, "instance");
    const Json& jv = field(j, "vertices");
    const Json& je = field(j, "edges");
    if (!jv.is_array() || !je.is_array()) throw ParseError("'vertices' and 'edges' must be arrays");
    std::vector<VertexId> vs;
    for (const auto& v : jv) vs.push_back(as_string(v, "vertex"));
    std::vector<Edge> es;
    for (const auto& e : je) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError("edge must be [u, v] or [u, v, weight]");
        std::optional<Rational> w;
        if (e.size() == 3) w = as_rational(e[2], "edge weight");
        es.emplace_back(as_string(e[0], "edge endpoint"), as_string(e[1], "edge endpoint"), w);
    }
    return Graph(std::move(vs), std::move(es));
}

inline GameInstance instance_from_json(const Json& j) {
    using namespace detail;
    GameInstance inst;
    const auto goal_text = as_string(field(j, "goal"), "goal");
    const auto goal = parse_goal(goal_text);
    if (!goal) throw ParseError("unknown goal '" + goal_text + "'");
    inst.goal = *goal;
    inst.graph = graph_from_json(j);
    const Json& own = field(j, "ownership");
    expect_object(own, "ownership");
    for (const auto& [agent, elems] : own.items()) {
        inst.ownership.agents.push_back(agent);
        if (!elems.is_array()) throw ParseError("ownership of '" + agent + "' must be a list");
        for (const auto& e : elems) {
            auto key = as_string(e, "owned element");
            if (owns_edges(inst.goal)) {
                const auto dash = key.find('-');
                if (dash == std::string::npos) throw ParseError("edge key '" + key + "' is not of the form u-v");
                key = edge_key(key.substr(0, dash), key.substr(dash + 1));
            }
            if (!inst.ownership.assignment.emplace(key, agent).second)
                throw InputError("element '" + key + "' has two owners");
        }
    }
    if (auto it = j.find("supply"); it != j.end()) inst.supply = as_string(*it, "supply");
    return inst;
}

inline Json graph_fields(const Graph& g, Json& out) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        Json row = Json::array({e.u, e.v});
        if (e.weight) row.push_back(to_string(*e.weight));
        edges.push_back(std::move(row));
    }
    out["edges"] = std::move(edges);
    return out;
}

/// Canonical form: keys sorted, agents in instance order, lists sorted.
inline Json instance_to_json(const GameInstance& inst) {
    Json out = Json::object();
    graph_fields(inst.graph, out);
    out["goal"] = std::string(goal_name(inst.goal));
    Json own = Json::object();
    for (const auto& a : inst.ownership.agents) own[a] = inst.ownership.owned_by(a);
    out["ownership"] = std::move(own);
    if (inst.supply) out["supply"] = *inst.supply;
    out["vertices"] = inst.graph.vertices();
    return out;
}

inline Json graph_to_json(const Graph& g) {
    Json out = Json::object();
    graph_fields(g, out);
    out["vertices"] = g.vertices();
    return out;
}

inline GameInstance load_instance(const std::string& path) { return instance_from_json(parse_json(read_file(path))); }
inline Graph load_graph(const std::string& path) { return graph_from_json(parse_json(read_file(path))); }

inline std::string pretty(const Json& j) { return j.dump(2) + "\n"; }
inline std::string compact(const Json& j) { return j.dump(); }

// ---------------------------------------------------------------------------
// Allocations

inline Allocation allocation_from_json(const Json& j) {
    detail::expect_object(j, "allocation");
    std::vector<AgentId> agents;
    std::vector<Rational> values;
    for (const auto& [agent, v] : j.items()) {
        agents.push_back(agent);
        values.push_back(detail::as_rational(v, "allocation entry"));
    }
    return {std::move(agents), std::move(values)};
}

inline Json allocation_to_json(const Allocation& a) {
    Json out = Json::object();
    for (std::size_t i = 0; i < a.size(); ++i) out[a.agents[i]] = to_string(a.values[i]);
    return out;
}

inline Allocation load_allocation(const std::string& path) {
    return allocation_from_json(parse_json(read_file(path)));
}

// ---------------------------------------------------------------------------
// Emptiness certificates (coalitions by member names)

inline Json certificate_to_json(const Game& game, const EmptinessCertificate& cert) {
    const auto& own = game.instance().ownership;
    Json out = Json::object();
    Json rows = Json::array();
    for (const auto& row : cert.coalitions) {
        Json r = Json::object();
        r["members"] = row.coalition.members(own);
        r["multiplier"] = to_string(row.multiplier);
        r["value"] = to_string(row.value);
        rows.push_back(std::move(r));
    }
    out["coalitions"] = std::move(rows);
    out["equality_multiplier"] = to_string(cert.equality_multiplier);
    out["grand_value"] = to_string(cert.grand_value);
    Json nn = Json::object();
    for (std::size_t k = 0; k < own.agents.size(); ++k) nn[own.agents[k]] = to_string(cert.nonnegativity[k]);
    out["nonnegativity"] = std::move(nn);
    return out;
}

inline EmptinessCertificate certificate_from_json(const Game& game, const Json& j) {
    using namespace detail;
    expect_object(j, "certificate");
    const auto& own = game.instance().ownership;
    EmptinessCertificate cert;
    cert.grand_value = as_rational(field(j, "grand_value"), "grand_value");
    cert.equality_multiplier = as_rational(field(j, "equality_multiplier"), "equality_multiplier");
    const Json& rows = field(j, "coalitions");
    if (!rows.is_array()) throw ParseError("'coalitions' must be a list");
    for (const auto& r : rows) {
        expect_object(r, "coalition row");
        std::vector<AgentId> members;
        const Json& jm = field(r, "members");
        if (!jm.is_array()) throw ParseError("'members' must be a list");
        for (const auto& m : jm) members.push_back(as_string(m, "member"));
        cert.coalitions.push_back({make_coalition(own, members), as_rational(field(r, "value"), "value"),
                                   as_rational(field(r, "multiplier"), "multiplier")});
    }
    const Json& nn = field(j, "nonnegativity");
    expect_object(nn, "nonnegativity");
    cert.nonnegativity.assign(own.agents.size(), Rational(0));
    for (const auto& [agent, v] : nn.items())
        cert.nonnegativity[agent_index(own, agent)] = as_rational(v, "nonnegativity entry");
    return cert;
}

inline Json rationals_to_json(const std::vector<std::string>& names, const std::vector<Rational>& values) {
    Json out = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = to_string(values[i]);
    return out;
}

}  // namespace pcog::io
