#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcog/core.hpp"
#include "pcog/error.hpp"
#include "pcog/game.hpp"
#include "pcog/graph.hpp"
#include "pcog/optima.hpp"

namespace pcog {

// ---------------------------------------------------------------------------
// CNF formulas

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // literals are +/- variable numbers, 1-based

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// DIMACS clause lists: optional 'c' comment lines, a "p cnf <vars> <clauses>"
/// header, then zero-terminated clauses that may span lines. A line starting
/// with '%' ends the input (as in the SATLIB benchmark files).
inline CnfFormula parse_cnf(std::string_view text, bool allow_empty_clause = false) {
    CnfFormula f;
    bool have_header = false;
    long declared_clauses = 0;
    std::vector<int> current;
    std::size_t line_no = 0, current_started = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = std::min(text.find('\n', pos), text.size());
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream in(line);
        std::string tok;
        if (!(in >> tok)) continue;
        if (tok == "c") continue;
        if (tok[0] == '%') break;
        if (tok == "p") {
            if (have_header) throw ParseError("second header", line_no);
            std::string kind;
            long vars = -1, clauses = -1;
            std::string extra;
            if (!(in >> kind >> vars >> clauses) || kind != "cnf" || vars < 0 || clauses < 0 || (in >> extra))
                throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
            if (vars > 1'000'000) throw ParseError("too many variables", line_no);
            f.num_vars = static_cast<int>(vars);
            declared_clauses = clauses;
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("clause before the 'p cnf' header", line_no);
        do {
            char* end = nullptr;
            const long lit = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0') throw ParseError("malformed literal '" + tok + "'", line_no);
            if (lit == 0) {
                if (current.empty() && !allow_empty_clause) throw ParseError("empty clause", line_no);
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::labs(lit) > f.num_vars)
                throw ParseError("literal " + tok + " uses an undeclared variable", line_no);
            if (current.empty()) current_started = line_no;
            current.push_back(static_cast<int>(lit));
        } while (in >> tok);
    }
    if (!have_header) throw ParseError("missing 'p cnf' header");
    if (!current.empty()) throw ParseError("last clause is not terminated by 0", current_started);
    if (static_cast<long>(f.clauses.size()) != declared_clauses)
        throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    return f;
}

inline std::string to_dimacs(const CnfFormula& f) {
    std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
    for (const auto& c : f.clauses) {
        for (int lit : c) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

inline bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int lit : c)
            if (assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0)) { sat = true; break; }
        if (!sat) return false;
    }
    return true;
}

inline constexpr int kSatBruteMaxVars = 26;

/// First satisfying assignment in lexicographic order (x1 most significant,
/// false before true).
inline std::optional<std::vector<bool>> sat_brute(const CnfFormula& f) {
    if (f.num_vars > kSatBruteMaxVars) throw SizeError("sat_brute limited to 26 variables");
    const auto n = static_cast<std::size_t>(f.num_vars);
    std::vector<bool> a(n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        for (std::size_t i = 0; i < n; ++i) a[i] = (m >> (n - 1 - i) & 1) != 0;
        if (satisfies(f, a)) return a;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generated instances

struct GeneratedInstance {
    GameInstance instance;
    std::optional<Allocation> allocation;
    bool expected = false;
    std::string provenance;
};

inline const std::string kAuxPrefix = "__aux_";

inline bool is_reserved(const std::string& name) { return name.rfind(kAuxPrefix, 0) == 0; }

inline void reject_reserved(const Graph& g) {
    for (const auto& v : g.vertices())
        if (is_reserved(v)) throw InputError("vertex '" + v + "' uses the reserved prefix " + kAuxPrefix);
}

/// Brute-force referee: does some minimum vertex cover contain v?
inline bool in_some_min_vertex_cover(const Graph& g, const VertexId& v) {
    if (!g.has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
    const auto n = g.num_vertices();
    const int best = static_cast<int>(brute_solve(Goal::MinVertexCover, g).value);
    const auto iv = g.index_of(v);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        if (std::popcount(m) != best || !(m >> iv & 1)) continue;
        std::set<VertexId> s;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1) s.insert(g.vertices()[i]);
        if (is_vertex_cover(g, s)) return true;
    }
    return false;
}

/// Brute-force referee: does some minimum dominating set contain v?
inline bool in_some_min_dominating_set(const Graph& g, const VertexId& v) {
    if (!g.has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
    const auto n = g.num_vertices();
    const int best = static_cast<int>(brute_solve(Goal::MinDominatingSet, g).value);
    const auto iv = g.index_of(v);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        if (std::popcount(m) != best || !(m >> iv & 1)) continue;
        std::set<VertexId> s;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1) s.insert(g.vertices()[i]);
        if (is_dominating_set(g, s)) return true;
    }
    return false;
}

namespace detail {

inline std::string literal_vertex(const std::string& prefix, int lit) {
    return prefix + (lit > 0 ? "x" : "nx") + std::to_string(std::abs(lit));
}

/// Literal/dummy triangle per variable, a vertex per clause joined to its
/// literals, and optionally a hub joined to every literal and clause vertex.
inline void add_sat_ds_gadget(const CnfFormula& f, const std::string& prefix, bool with_hub,
                              std::vector<VertexId>& vs, std::vector<Edge>& es) {
    for (int x = 1; x <= f.num_vars; ++x) {
        const auto pos = literal_vertex(prefix, x), neg = literal_vertex(prefix, -x);
        const auto dummy = prefix + "d" + std::to_string(x);
        vs.insert(vs.end(), {pos, neg, dummy});
        es.emplace_back(pos, neg);
        es.emplace_back(pos, dummy);
        es.emplace_back(neg, dummy);
        if (with_hub) {
            es.emplace_back(prefix + "hub", pos);
            es.emplace_back(prefix + "hub", neg);
        }
    }
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const auto cv = prefix + "c" + std::to_string(j + 1);
        vs.push_back(cv);
        std::set<int> lits(f.clauses[j].begin(), f.clauses[j].end());
        for (int lit : lits) es.emplace_back(cv, literal_vertex(prefix, lit));
        if (with_hub) es.emplace_back(prefix + "hub", cv);
    }
    if (with_hub) vs.push_back(prefix + "hub");
}

inline Ownership single_owner(const std::vector<VertexId>& vs, const AgentId& agent) {
    Ownership own;
    own.agents = {agent};
    for (const auto& v : vs) own.assignment.emplace(v, agent);
    return own;
}

inline std::string describe(const CnfFormula& f) {
    return std::to_string(f.num_vars) + " vars, " + std::to_string(f.clauses.size()) + " clauses";
}

}  // namespace detail

/// One-agent dominating set verification instance built from (f1, f2): the
/// allocation is core-stable exactly when f1 is satisfiable and f2 is not.
inline GeneratedInstance gen_sat_unsat_pdsg_cv(const CnfFormula& f1, const CnfFormula& f2) {
    for (const auto* f : {&f1, &f2})
        for (const auto& c : f->clauses)
            if (c.size() != 3) throw InputError("every clause must have exactly three literals");
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    detail::add_sat_ds_gadget(f1, "g1.", true, vs, es);
    detail::add_sat_ds_gadget(f2, "g2a.", true, vs, es);
    detail::add_sat_ds_gadget(f2, "g2b.", true, vs, es);

    GeneratedInstance gen;
    gen.instance.goal = Goal::MinDominatingSet;
    gen.instance.ownership = detail::single_owner(vs, "1");
    gen.instance.graph = Graph(std::move(vs), std::move(es));
    gen.allocation = Allocation({"1"}, {Rational(f1.num_vars + 2 * f2.num_vars + 2)});
    gen.expected = sat_brute(f1).has_value() && !sat_brute(f2).has_value();
    gen.provenance = "sat-unsat dominating set verification gadget; phi1: " + detail::describe(f1) +
                     "; phi2: " + detail::describe(f2) + "; expected = sat(phi1) and unsat(phi2)";
    return gen;
}

/// Unpartitioned dominating set game (one agent per vertex) on the SAT
/// gadget without hub.
inline GameInstance sat_ds_cog(const CnfFormula& f) {
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    detail::add_sat_ds_gadget(f, "", false, vs, es);
    GameInstance inst;
    inst.goal = Goal::MinDominatingSet;
    for (const auto& v : vs) {
        inst.ownership.agents.push_back(v);
        inst.ownership.assignment.emplace(v, v);
    }
    inst.graph = Graph(std::move(vs), std::move(es));
    return inst;
}

/// Four-agent vertex cover game: E1 = {v,u1}, E2 = {v,u2}, E3 = {u1,u2},
/// E4 = E(g). Core nonempty exactly when some minimum cover of g contains v.
inline GeneratedInstance gen_vc_membership_pvcg_ce(const Graph& g, const VertexId& v) {
    reject_reserved(g);
    if (!g.has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
    if (g.num_edges() == 0) throw InputError("graph needs at least one edge");
    const VertexId u1 = kAuxPrefix + "u1", u2 = kAuxPrefix + "u2";
    auto vs = g.vertices();
    vs.push_back(u1);
    vs.push_back(u2);
    auto es = g.edges();
    es.emplace_back(v, u1);
    es.emplace_back(v, u2);
    es.emplace_back(u1, u2);

    GeneratedInstance gen;
    auto& inst = gen.instance;
    inst.goal = Goal::MinVertexCover;
    inst.ownership.agents = {"1", "2", "3", "4"};
    inst.ownership.assignment.emplace(edge_key(v, u1), "1");
    inst.ownership.assignment.emplace(edge_key(v, u2), "2");
    inst.ownership.assignment.emplace(edge_key(u1, u2), "3");
    for (const auto& e : g.edges()) inst.ownership.assignment.emplace(e.key(), "4");
    inst.graph = Graph(std::move(vs), std::move(es));

    gen.expected = in_some_min_vertex_cover(g, v);
    if (gen.expected) {
        const Rational k = min_vertex_cover(g).value;
        gen.allocation = Allocation(inst.ownership.agents, {Rational(0), Rational(0), Rational(1), k});
    }
    gen.provenance = "vertex cover membership to four-agent vertex cover core existence; vertex " + v +
                     "; expected = some minimum vertex cover contains it";
    return gen;
}

/// Four-agent dominating set game: three triangles owned by agents 1..3,
/// v_{i,j} joined to all of triangle j (i != j), v joined to all of
/// triangle 1, and agent 4 owning g plus a true twin of v.
///
/// Without the twin, a triangle-1 vertex dominates v for free, and when
/// k*-1 vertices already dominate everything but v the core comes out empty
/// even though v is in a minimum dominating set (a lone vertex does this).
/// The twin is adjacent to N[v], so anything dominating it also dominates v;
/// it changes neither k* nor whether v sits in some minimum dominating set.
inline GeneratedInstance gen_ds_membership_pdsg_ce(const Graph& g, const VertexId& v) {
    reject_reserved(g);
    if (!g.has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
    auto t = [](int i, int j) { return kAuxPrefix + "t" + std::to_string(i) + std::to_string(j); };
    auto vs = g.vertices();
    auto es = g.edges();
    std::set<std::pair<VertexId, VertexId>> seen;
    auto add = [&](const VertexId& a, const VertexId& b) {
        if (seen.insert(std::minmax(a, b)).second) es.emplace_back(a, b);
    };
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) vs.push_back(t(i, j));
        add(t(i, 1), t(i, 2));
        add(t(i, 1), t(i, 3));
        add(t(i, 2), t(i, 3));
    }
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                for (int k = 1; k <= 3; ++k) add(t(i, j), t(j, k));
    for (int k = 1; k <= 3; ++k) add(v, t(1, k));
    const VertexId twin = kAuxPrefix + "twin";
    vs.push_back(twin);
    add(twin, v);
    for (auto u : g.neighbors(g.index_of(v))) add(twin, g.vertices()[u]);

    GeneratedInstance gen;
    auto& inst = gen.instance;
    inst.goal = Goal::MinDominatingSet;
    inst.ownership.agents = {"1", "2", "3", "4"};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) inst.ownership.assignment.emplace(t(i, j), std::to_string(i));
    for (const auto& w : g.vertices()) inst.ownership.assignment.emplace(w, "4");
    inst.ownership.assignment.emplace(twin, "4");
    inst.graph = Graph(std::move(vs), std::move(es));

    gen.expected = in_some_min_dominating_set(g, v);
    if (gen.expected) {
        const Rational k = min_dominating_set(g).value;
        gen.allocation = Allocation(inst.ownership.agents, {Rational(0), Rational(0), Rational(1), k});
    }
    gen.provenance = "dominating set membership to four-agent dominating set core existence; vertex " + v +
                     "; expected = some minimum dominating set contains it";
    return gen;
}

/// Vertex cover game to dominating set game with the same core-existence
/// answer: a clique of vertex-vertices, one edge-vertex per edge joined to
/// its endpoints' vertex-vertices. Original agents own their edge-vertices;
/// each vertex-vertex gets its own new agent, listed after the originals.
inline GameInstance reduce_pvcg_to_pdsg(const GameInstance& inst) {
    if (inst.goal != Goal::MinVertexCover) throw InputError("reduction expects a vertex cover game");
    require_valid(inst);
    reject_reserved(inst.graph);
    for (const auto& a : inst.ownership.agents)
        if (is_reserved(a)) throw InputError("agent '" + a + "' uses the reserved prefix " + kAuxPrefix);

    const Graph& g = inst.graph;
    auto vv = [](const VertexId& v) { return kAuxPrefix + "v_" + v; };
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (const auto& v : g.vertices()) vs.push_back(vv(v));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) es.emplace_back(vs[i], vs[j]);

    GameInstance out;
    out.goal = Goal::MinDominatingSet;
    out.ownership.agents = inst.ownership.agents;
    for (std::size_t k = 0; k < g.num_edges(); ++k) {
        const Edge& e = g.edges()[k];
        const VertexId ev = kAuxPrefix + "e" + std::to_string(k);
        vs.push_back(ev);
        es.emplace_back(ev, vv(e.u));
        es.emplace_back(ev, vv(e.v));
        out.ownership.assignment.emplace(ev, inst.ownership.assignment.at(e.key()));
    }
    for (const auto& v : g.vertices()) {
        const AgentId a = kAuxPrefix + "a_" + v;
        out.ownership.agents.push_back(a);
        out.ownership.assignment.emplace(vv(v), a);
    }
    out.graph = Graph(std::move(vs), std::move(es));
    return out;
}

// ---------------------------------------------------------------------------
// Worked examples

struct PaperExample {
    GameInstance instance;
    std::optional<Allocation> allocation;
};

inline const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids{"1g1", "1g2", "2g1", "2g2", "3", "4g1", "4g2"};
    return ids;
}

namespace detail {

inline GameInstance vertex_game(Goal goal, std::vector<Edge> es, const std::vector<std::vector<VertexId>>& parts,
                                std::vector<VertexId> unowned = {}) {
    GameInstance inst;
    inst.goal = goal;
    std::vector<VertexId> vs = std::move(unowned);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto agent = std::to_string(i + 1);
        inst.ownership.agents.push_back(agent);
        for (const auto& v : parts[i]) {
            vs.push_back(v);
            inst.ownership.assignment.emplace(v, agent);
        }
    }
    inst.graph = Graph(std::move(vs), std::move(es));
    return inst;
}

inline GameInstance edge_game(std::vector<VertexId> vs, const std::vector<std::vector<Edge>>& parts) {
    GameInstance inst;
    inst.goal = Goal::MinVertexCover;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto agent = std::to_string(i + 1);
        inst.ownership.agents.push_back(agent);
        for (const auto& e : parts[i]) {
            es.push_back(e);
            inst.ownership.assignment.emplace(e.key(), agent);
        }
    }
    inst.graph = Graph(std::move(vs), std::move(es));
    return inst;
}

inline Allocation ints(std::initializer_list<Rational> values) {
    std::vector<AgentId> agents;
    for (std::size_t i = 0; i < values.size(); ++i) agents.push_back(std::to_string(i + 1));
    return {std::move(agents), std::vector<Rational>(values)};
}

}  // namespace detail

inline PaperExample paper_example(std::string_view id) {
    using detail::edge_game;
    using detail::ints;
    using detail::vertex_game;
    PaperExample ex;
    if (id == "1g1") {
        ex.instance = edge_game({"v1", "v2", "v3", "v4"},
                                {{{"v1", "v2"}}, {{"v2", "v3"}, {"v3", "v4"}}, {{"v1", "v3"}}});
        ex.allocation = ints({1, 1, 0});
    } else if (id == "1g2") {
        ex.instance = edge_game({"v1", "v2", "v3"}, {{{"v1", "v2"}}, {{"v2", "v3"}}, {{"v1", "v3"}}});
    } else if (id == "2g1" || id == "2g2") {
        std::vector<Edge> es{{"v1", "v2"}, {"v1", "u2"}, {"v2", "u2"}, {"v2", "w1"},
                             {"v2", "w2"}, {"w1", "w2"}, {"u1", "u2"}};
        if (id == "2g2")
            es.insert(es.end(), {{"v1", "u1"}, {"v1", "w1"}, {"w2", "u1"}, {"w2", "u2"}, {"u1", "w1"}});
        ex.instance = vertex_game(Goal::MinDominatingSet, std::move(es), {{"w1", "w2"}, {"v1", "v2"}, {"u1", "u2"}});
        if (id == "2g1") ex.allocation = ints({1, 0, 1});
    } else if (id == "3") {
        const Rational two(2), one(1);
        ex.instance = vertex_game(Goal::MinSpanningTree,
                                  {{"s", "v1", two}, {"s", "v2", two}, {"s", "w1", two},
                                   {"v1", "v2", one}, {"v1", "w1", one}, {"v2", "w1", one}},
                                  {{"v1", "v2"}, {"w1"}}, {"s"});
        ex.instance.supply = "s";
        ex.allocation = ints({2, 2});
    } else if (id == "4g1") {
        ex.instance = vertex_game(Goal::MaxMatching, {{"w1", "v1"}, {"v1", "u1"}, {"w1", "u1"}, {"u1", "u2"}},
                                  {{"v1"}, {"w1"}, {"u1", "u2"}});
        ex.allocation = ints({Rational(1, 2), Rational(1, 2), 1});
    } else if (id == "4g2") {
        ex.instance = vertex_game(Goal::MaxMatching, {{"w1", "v1"}, {"v1", "u1"}, {"w1", "u1"}},
                                  {{"v1"}, {"w1"}, {"u1"}});
    } else {
        throw InputError("unknown example id '" + std::string(id) + "'");
    }
    return ex;
}

}  // namespace pcog
