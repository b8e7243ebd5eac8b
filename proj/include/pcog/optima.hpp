#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pcog/error.hpp"
#include "pcog/goal.hpp"
#include "pcog/graph.hpp"
#include "pcog/rational.hpp"

namespace pcog {

/// Exact optimum of one of the four graph problems, with a witness that
/// attains it: a vertex set for cover/domination, an edge set otherwise.
struct OptResult {
    Rational value;
    std::vector<VertexId> witness_vertices;
    std::vector<Edge> witness_edges;
};

// ---------------------------------------------------------------------------
// Feasibility predicates, shared by solvers, brute-force oracles and tests.

inline bool is_vertex_cover(const Graph& g, const std::set<VertexId>& c) {
    return std::all_of(g.edges().begin(), g.edges().end(),
                       [&](const Edge& e) { return c.count(e.u) || c.count(e.v); });
}

inline bool is_dominating_set(const Graph& g, const std::set<VertexId>& d) {
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        if (d.count(g.vertices()[i])) continue;
        const auto& nb = g.neighbors(i);
        if (std::none_of(nb.begin(), nb.end(),
                         [&](std::size_t j) { return d.count(g.vertices()[j]) != 0; }))
            return false;
    }
    return true;
}

inline bool is_matching(const Graph& g, const std::vector<Edge>& m) {
    std::set<VertexId> used;
    for (const auto& e : m) {
        if (!g.adjacent(e.u, e.v)) return false;
        if (!used.insert(e.u).second || !used.insert(e.v).second) return false;
    }
    return true;
}

/// |V|-1 edges of `g`, acyclic and touching every vertex.
inline bool is_spanning_tree(const Graph& g, const std::vector<Edge>& t) {
    const auto n = g.num_vertices();
    if (n == 0) return t.empty();
    if (t.size() != n - 1) return false;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : t) {
        if (!g.adjacent(e.u, e.v)) return false;
        auto a = find(g.index_of(e.u)), b = find(g.index_of(e.v));
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

namespace detail {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaskBits = 64;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
inline int popcount(Mask m) { return std::popcount(m); }

/// One connected component re-indexed densely for bitmask solvers.
struct Component {
    std::vector<std::size_t> global;  // local index -> index in the parent graph
    std::vector<Mask> adj;
};

inline std::vector<Component> split_components(const Graph& g) {
    std::vector<Component> out;
    for (const auto& members : connected_components(g)) {
        if (members.size() > kMaskBits)
            throw SizeError("connected component with more than 64 vertices");
        Component c;
        std::vector<std::size_t> local(g.num_vertices(), kMaskBits);
        for (const auto& v : members) {
            local[g.index_of(v)] = c.global.size();
            c.global.push_back(g.index_of(v));
        }
        c.adj.assign(members.size(), 0);
        for (std::size_t i = 0; i < c.global.size(); ++i)
            for (auto j : g.neighbors(c.global[i])) c.adj[i] |= bit(local[j]);
        out.push_back(std::move(c));
    }
    return out;
}

/// Branch and bound for minimum vertex cover: branch on a maximum-degree
/// vertex (take it, or take its whole neighborhood).
class VertexCoverSearch {
public:
    explicit VertexCoverSearch(const std::vector<Mask>& adj) : adj_(adj) {
        const auto n = adj.size();
        best_size_ = static_cast<int>(n) + 1;
        search(n == kMaskBits ? ~Mask{0} : bit(n) - 1, 0, 0);
    }
    Mask best() const { return best_; }

private:
    void search(Mask rest, Mask chosen, int size) {
        if (size >= best_size_) return;
        int max_deg = 0, edge_ends = 0;
        std::size_t pick = 0;
        for (Mask m = rest; m; m &= m - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(m));
            const int d = popcount(adj_[v] & rest);
            edge_ends += d;
            if (d > max_deg) max_deg = d, pick = v;
        }
        if (max_deg == 0) {
            best_size_ = size;
            best_ = chosen;
            return;
        }
        const int edges = edge_ends / 2;
        if (size + (edges + max_deg - 1) / max_deg >= best_size_) return;

        const Mask nb = adj_[pick] & rest;
        search(rest & ~bit(pick), chosen | bit(pick), size + 1);
        search(rest & ~nb & ~bit(pick), chosen | nb, size + popcount(nb));
    }

    const std::vector<Mask>& adj_;
    int best_size_ = 0;
    Mask best_ = 0;
};

/// Branch and bound for minimum dominating set: pick the undominated vertex
/// with fewest admissible dominators and branch over them; a dominator that
/// was already tried is excluded from later siblings.
class DominatingSetSearch {
public:
    explicit DominatingSetSearch(const std::vector<Mask>& adj) {
        const auto n = adj.size();
        closed_.resize(n);
        for (std::size_t i = 0; i < n; ++i) closed_[i] = adj[i] | bit(i);
        best_size_ = static_cast<int>(n) + 1;
        const Mask all = n == kMaskBits ? ~Mask{0} : bit(n) - 1;
        search(all, 0, 0, 0);
    }
    Mask best() const { return best_; }

private:
    void search(Mask undominated, Mask excluded, Mask chosen, int size) {
        if (undominated == 0) {
            if (size < best_size_) best_size_ = size, best_ = chosen;
            return;
        }
        if (size + 1 >= best_size_) return;

        int max_cover = 0, fewest = std::numeric_limits<int>::max();
        std::size_t target = 0;
        for (Mask m = undominated; m; m &= m - 1) {
            const auto u = static_cast<std::size_t>(std::countr_zero(m));
            const Mask options = closed_[u] & ~excluded;
            const int k = popcount(options);
            if (k == 0) return;
            if (k < fewest) fewest = k, target = u;
        }
        for (std::size_t w = 0; w < closed_.size(); ++w)
            if (!(excluded & bit(w))) max_cover = std::max(max_cover, popcount(closed_[w] & undominated));
        const int remaining = popcount(undominated);
        if (size + (remaining + max_cover - 1) / max_cover >= best_size_) return;

        std::vector<std::size_t> options;
        for (Mask m = closed_[target] & ~excluded; m; m &= m - 1)
            options.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        std::stable_sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
            return popcount(closed_[a] & undominated) > popcount(closed_[b] & undominated);
        });
        Mask tried = 0;
        for (auto w : options) {
            search(undominated & ~closed_[w], excluded | tried, chosen | bit(w), size + 1);
            tried |= bit(w);
        }
    }

    std::vector<Mask> closed_;
    int best_size_ = 0;
    Mask best_ = 0;
};

/// Edmonds' blossom algorithm (BFS with blossom contraction via base labels).
class BlossomMatcher {
public:
    explicit BlossomMatcher(const std::vector<std::vector<std::size_t>>& adj)
        : adj_(adj), n_(adj.size()), match_(n_, kNone), parent_(n_), base_(n_),
          used_(n_), blossom_(n_) {
        for (std::size_t v = 0; v < n_; ++v) {
            if (match_[v] != kNone) continue;
            std::size_t end = find_augmenting_path(v);
            while (end != kNone) {  // flip the alternating path
                const std::size_t pv = parent_[end], next = match_[pv];
                match_[end] = pv;
                match_[pv] = end;
                end = next;
            }
        }
    }

    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    const std::vector<std::size_t>& mate() const { return match_; }

private:
    std::size_t lca(std::size_t a, std::size_t b) {
        std::vector<bool> seen(n_, false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (match_[a] == kNone) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(std::size_t v, std::size_t b, std::size_t child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = blossom_[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    std::size_t find_augmenting_path(std::size_t root) {
        std::fill(used_.begin(), used_.end(), false);
        std::fill(parent_.begin(), parent_.end(), kNone);
        std::iota(base_.begin(), base_.end(), 0);
        used_[root] = true;
        std::vector<std::size_t> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t v = queue[head];
            for (std::size_t to : adj_[v]) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
                    const std::size_t cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (std::size_t i = 0; i < n_; ++i) {
                        if (!blossom_[base_[i]]) continue;
                        base_[i] = cur;
                        if (!used_[i]) used_[i] = true, queue.push_back(i);
                    }
                } else if (parent_[to] == kNone) {
                    parent_[to] = v;
                    if (match_[to] == kNone) return to;
                    used_[match_[to]] = true;
                    queue.push_back(match_[to]);
                }
            }
        }
        return kNone;
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::size_t n_;
    std::vector<std::size_t> match_, parent_, base_;
    std::vector<bool> used_, blossom_;
};

template <class Search>
OptResult solve_vertex_set_problem(const Graph& g) {
    OptResult r;
    for (const auto& comp : split_components(g)) {
        const Mask best = Search(comp.adj).best();
        for (Mask m = best; m; m &= m - 1)
            r.witness_vertices.push_back(g.vertices()[comp.global[std::countr_zero(m)]]);
    }
    std::sort(r.witness_vertices.begin(), r.witness_vertices.end());
    r.value = static_cast<long>(r.witness_vertices.size());
    return r;
}

inline const Rational& require_weight(const Edge& e) {
    if (!e.weight) throw InputError("edge " + e.key() + " has no weight");
    return *e.weight;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Main solvers.

inline OptResult min_vertex_cover(const Graph& g) {
    return detail::solve_vertex_set_problem<detail::VertexCoverSearch>(g);
}

/// Isolated vertices can only dominate themselves, so they are always picked.
inline OptResult min_dominating_set(const Graph& g) {
    return detail::solve_vertex_set_problem<detail::DominatingSetSearch>(g);
}

inline OptResult max_matching(const Graph& g) {
    std::vector<std::vector<std::size_t>> adj(g.num_vertices());
    for (std::size_t i = 0; i < g.num_vertices(); ++i) adj[i] = g.neighbors(i);
    detail::BlossomMatcher matcher(adj);
    OptResult r;
    const auto& mate = matcher.mate();
    for (std::size_t i = 0; i < mate.size(); ++i)
        if (mate[i] != detail::BlossomMatcher::kNone && i < mate[i])
            r.witness_edges.push_back(*g.find_edge(g.vertices()[i], g.vertices()[mate[i]]));
    r.value = static_cast<long>(r.witness_edges.size());
    return r;
}

/// Prim's algorithm grown from the lexicographically smallest vertex; among
/// crossing edges the smallest (weight, u, v) is taken, so the tree is unique.
inline OptResult mst_weight(const Graph& g) {
    OptResult r;
    r.value = 0;
    const auto n = g.num_vertices();
    if (n == 0) return r;
    for (const auto& e : g.edges()) detail::require_weight(e);

    std::vector<bool> in_tree(n, false);
    in_tree[0] = true;
    for (std::size_t step = 1; step < n; ++step) {
        const Edge* best = nullptr;
        for (const auto& e : g.edges()) {
            if (in_tree[g.index_of(e.u)] == in_tree[g.index_of(e.v)]) continue;
            if (!best || std::tie(*e.weight, e.u, e.v) < std::tie(*best->weight, best->u, best->v))
                best = &e;
        }
        if (!best) throw InfeasibleError("graph is disconnected; no spanning tree");
        in_tree[g.index_of(best->u)] = in_tree[g.index_of(best->v)] = true;
        r.value += *best->weight;
        r.witness_edges.push_back(*best);
    }
    return r;
}

inline OptResult solve(Goal goal, const Graph& g) {
    switch (goal) {
        case Goal::MinVertexCover: return min_vertex_cover(g);
        case Goal::MinDominatingSet: return min_dominating_set(g);
        case Goal::MinSpanningTree: return mst_weight(g);
        case Goal::MaxMatching: return max_matching(g);
    }
    throw InputError("unknown goal");
}

// ---------------------------------------------------------------------------
// Exhaustive reference solver.

inline constexpr std::size_t kBruteMaxVertices = 16;
inline constexpr std::size_t kBruteMaxEdges = 16;
inline constexpr std::size_t kBruteMaxTreeVertices = 9;

namespace detail {

/// Decodes a Prüfer sequence over {0..n-1} into the n-1 tree edges.
inline std::vector<std::pair<std::size_t, std::size_t>> decode_pruefer(
    const std::vector<std::size_t>& seq, std::size_t n) {
    std::vector<std::size_t> degree(n, 1);
    for (auto x : seq) ++degree[x];
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto x : seq) {
        for (std::size_t leaf = 0; leaf < n; ++leaf) {
            if (degree[leaf] == 1) {
                edges.emplace_back(leaf, x);
                --degree[leaf];
                --degree[x];
                break;
            }
        }
    }
    std::size_t a = n, b = n;
    for (std::size_t i = 0; i < n; ++i)
        if (degree[i] == 1) (a == n ? a : b) = i;
    edges.emplace_back(a, b);
    return edges;
}

/// Edge indices of a cheapest labeled tree on all of g's vertices, over all
/// n^(n-2) Prüfer sequences; nullopt when no tree lies inside g.
template <class W>
std::optional<std::vector<std::size_t>> cheapest_tree(const Graph& g, const std::vector<W>& weight) {
    const auto n = g.num_vertices();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> at(n * n, none);
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const auto a = g.index_of(g.edges()[i].u), b = g.index_of(g.edges()[i].v);
        at[a * n + b] = at[b * n + a] = i;
    }
    std::optional<std::vector<std::size_t>> best;
    W best_w{};
    std::vector<std::size_t> seq(n - 2, 0), idx;
    for (;;) {
        W w{};
        idx.clear();
        for (auto [a, b] : decode_pruefer(seq, n)) {
            const auto i = at[a * n + b];
            if (i == none) break;
            idx.push_back(i);
            w += weight[i];
        }
        if (idx.size() == n - 1 && (!best || w < best_w)) best = idx, best_w = w;
        // odometer over {0..n-1}^(n-2)
        std::size_t pos = 0;
        while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
        if (pos == seq.size()) break;
    }
    return best;
}

}  // namespace detail

/// Exhaustive enumeration: vertex subsets for VC/DS, edge subsets for
/// matching, labeled trees (Prüfer sequences) for spanning trees.
inline OptResult brute_solve(Goal goal, const Graph& g) {
    const auto n = g.num_vertices();
    const auto& V = g.vertices();
    OptResult r;
    switch (goal) {
        case Goal::MinVertexCover:
        case Goal::MinDominatingSet: {
            if (n > kBruteMaxVertices) throw SizeError("brute force limited to 16 vertices");
            std::uint32_t best = 0;
            int best_size = static_cast<int>(n) + 1;
            for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
                const int k = std::popcount(m);
                if (k >= best_size) continue;
                std::set<VertexId> s;
                for (std::size_t i = 0; i < n; ++i)
                    if (m >> i & 1) s.insert(V[i]);
                const bool ok = goal == Goal::MinVertexCover ? is_vertex_cover(g, s)
                                                             : is_dominating_set(g, s);
                if (ok) best = m, best_size = k;
            }
            for (std::size_t i = 0; i < n; ++i)
                if (best >> i & 1) r.witness_vertices.push_back(V[i]);
            r.value = best_size;
            return r;
        }
        case Goal::MaxMatching: {
            const auto m = g.num_edges();
            if (m > kBruteMaxEdges) throw SizeError("brute force limited to 16 edges");
            std::uint32_t best = 0;
            int best_size = 0;
            for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
                const int k = std::popcount(s);
                if (k <= best_size) continue;
                std::vector<Edge> es;
                for (std::size_t i = 0; i < m; ++i)
                    if (s >> i & 1) es.push_back(g.edges()[i]);
                if (is_matching(g, es)) best = s, best_size = k;
            }
            for (std::size_t i = 0; i < m; ++i)
                if (best >> i & 1) r.witness_edges.push_back(g.edges()[i]);
            r.value = best_size;
            return r;
        }
        case Goal::MinSpanningTree: {
            if (n > kBruteMaxTreeVertices) throw SizeError("brute force limited to 9 vertices");
            for (const auto& e : g.edges()) detail::require_weight(e);
            r.value = 0;
            if (n <= 1) return r;
            // Every weight is an integer multiple of 1/L; when the multiples fit
            // comfortably in 64 bits the sums are exact without any gcd work.
            using cpp_int = decltype(numerator(Rational{}));
            cpp_int L = 1;
            for (const auto& e : g.edges()) L = boost::multiprecision::lcm(L, denominator(*e.weight));
            std::vector<cpp_int> scaled;
            bool small = true;
            const cpp_int cap = cpp_int(std::numeric_limits<long long>::max() / 16);
            for (const auto& e : g.edges()) {
                scaled.push_back(numerator(*e.weight) * (L / denominator(*e.weight)));
                small = small && scaled.back() <= cap;
            }
            std::optional<std::vector<std::size_t>> best;
            if (small) {
                std::vector<long long> w;
                for (const auto& x : scaled) w.push_back(x.convert_to<long long>());
                best = detail::cheapest_tree(g, w);
                if (best) {
                    long long total = 0;
                    for (auto i : *best) total += w[i];
                    r.value = Rational(total) / Rational(L);
                }
            } else {
                std::vector<Rational> w;
                for (const auto& e : g.edges()) w.push_back(*e.weight);
                best = detail::cheapest_tree(g, w);
                if (best) {
                    r.value = 0;
                    for (auto i : *best) r.value += w[i];
                }
            }
            if (!best) throw InfeasibleError("graph is disconnected; no spanning tree");
            for (auto i : *best) r.witness_edges.push_back(g.edges()[i]);
            std::sort(r.witness_edges.begin(), r.witness_edges.end());
            return r;
        }
    }
    throw InputError("unknown goal");
}

}  // namespace pcog
