#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "pcog/error.hpp"
#include "pcog/rational.hpp"

namespace pcog {

using VertexId = std::string;

/// Vertex tokens are printable, nonempty, and free of whitespace, commas and
/// '-' (the hyphen is the separator of canonical edge keys).
inline bool is_valid_vertex_id(const std::string& id) {
    if (id.empty()) return false;
    for (unsigned char c : id) {
        if (c <= 0x20 || c >= 0x7f || c == ',' || c == '-') return false;
    }
    return true;
}

/// Canonical "min-max" spelling of an unordered pair.
inline std::string edge_key(const VertexId& a, const VertexId& b) {
    return a < b ? a + "-" + b : b + "-" + a;
}

struct Edge {
    VertexId u;  // u < v after construction through Graph
    VertexId v;
    std::optional<Rational> weight;

    Edge() = default;
    Edge(VertexId a, VertexId b, std::optional<Rational> w = std::nullopt)
        : u(std::move(a)), v(std::move(b)), weight(std::move(w)) {
        if (v < u) std::swap(u, v);
    }

    std::string key() const { return edge_key(u, v); }
    bool touches(const VertexId& x) const { return u == x || v == x; }
    const VertexId& other(const VertexId& x) const { return u == x ? v : u; }

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.u == b.u && a.v == b.v && a.weight == b.weight;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    }
};

/// Finite simple undirected graph. Immutable after construction; vertices
/// and edges are kept sorted so every derived output is deterministic.
class Graph {
public:
    Graph() = default;

    Graph(std::vector<VertexId> vertices, std::vector<Edge> edges) {
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
            throw InputError("duplicate vertex");
        for (const auto& v : vertices)
            if (!is_valid_vertex_id(v)) throw InputError("invalid vertex id '" + v + "'");
        vertices_ = std::move(vertices);
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);

        for (auto& e : edges) {
            if (e.v < e.u) std::swap(e.u, e.v);
            if (e.u == e.v) throw InputError("self-loop at '" + e.u + "'");
            if (!has_vertex(e.u) || !has_vertex(e.v))
                throw InputError("edge " + e.key() + " has an unknown endpoint");
            if (e.weight && *e.weight < 0) throw InputError("negative weight on " + e.key());
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v)
                throw InputError("parallel edge " + edges[i].key());
        edges_ = std::move(edges);
        adjacency_.assign(vertices_.size(), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const auto a = index_.at(edges_[i].u);
            const auto b = index_.at(edges_[i].v);
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
            edge_index_.emplace(std::make_pair(a, b), i);
        }
        for (auto& row : adjacency_) std::sort(row.begin(), row.end());
    }

    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }

    bool has_vertex(const VertexId& v) const { return index_.count(v) != 0; }

    /// Position of `v` in the sorted vertex list.
    std::size_t index_of(const VertexId& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw InputError("unknown vertex '" + v + "'");
        return it->second;
    }

    /// Sorted neighbor indices of vertex index `i`.
    const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }

    const Edge* find_edge(const VertexId& a, const VertexId& b) const {
        auto ia = index_.find(a), ib = index_.find(b);
        if (ia == index_.end() || ib == index_.end()) return nullptr;
        auto key = std::minmax(ia->second, ib->second);
        auto it = edge_index_.find({key.first, key.second});
        return it == edge_index_.end() ? nullptr : &edges_[it->second];
    }

    bool adjacent(const VertexId& a, const VertexId& b) const { return find_edge(a, b) != nullptr; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::map<VertexId, std::size_t> index_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// G[vs]: the vertices `vs` and every edge of `g` with both endpoints in `vs`.
inline Graph induced_by_vertices(const Graph& g, const std::set<VertexId>& vs) {
    for (const auto& v : vs)
        if (!g.has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
    std::vector<Edge> kept;
    for (const auto& e : g.edges())
        if (vs.count(e.u) && vs.count(e.v)) kept.push_back(e);
    return Graph({vs.begin(), vs.end()}, std::move(kept));
}

/// G[es]: the edges `es` (matched by endpoints, weights taken from `g`) and
/// the union of their endpoints.
inline Graph induced_by_edges(const Graph& g, const std::vector<Edge>& es) {
    std::set<VertexId> vs;
    std::vector<Edge> kept;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : es) {
        const Edge* found = g.find_edge(e.u, e.v);
        if (!found) throw InputError("unknown edge " + e.key());
        if (!seen.insert({found->u, found->v}).second) continue;
        kept.push_back(*found);
        vs.insert(found->u);
        vs.insert(found->v);
    }
    return Graph({vs.begin(), vs.end()}, std::move(kept));
}

/// Maximal connected vertex sets; each sorted, list ordered by smallest member.
inline std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
    const auto n = g.num_vertices();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (auto j : g.neighbors(i)) parent[find(i)] = find(j);

    std::map<std::size_t, std::vector<VertexId>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(g.vertices()[i]);
    std::vector<std::vector<VertexId>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    // vertices are visited in sorted order, so members are sorted already
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

}  // namespace pcog
