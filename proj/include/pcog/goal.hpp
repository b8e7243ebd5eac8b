#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pcog {

enum class Goal { MinVertexCover, MinDominatingSet, MinSpanningTree, MaxMatching };

/// Minimization games carry a cost c(S); matching carries a value v(S).
constexpr bool is_minimization(Goal g) noexcept { return g != Goal::MaxMatching; }

/// Vertex cover agents own edges; every other goal partitions vertices.
constexpr bool owns_edges(Goal g) noexcept { return g == Goal::MinVertexCover; }

inline std::string_view goal_name(Goal g) {
    switch (g) {
        case Goal::MinVertexCover: return "MIN_VERTEX_COVER";
        case Goal::MinDominatingSet: return "MIN_DOMINATING_SET";
        case Goal::MinSpanningTree: return "MIN_SPANNING_TREE";
        case Goal::MaxMatching: return "MAX_MATCHING";
    }
    return "?";
}

inline std::optional<Goal> parse_goal(std::string_view s) {
    for (Goal g : {Goal::MinVertexCover, Goal::MinDominatingSet, Goal::MinSpanningTree,
                   Goal::MaxMatching})
        if (goal_name(g) == s) return g;
    return std::nullopt;
}

}  // namespace pcog
