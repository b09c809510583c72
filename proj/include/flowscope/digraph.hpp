#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flowscope/graph.hpp"

namespace flowscope {

/// Outcome of a topological sort.
struct AcyclicityResult {
    /// rank[v] is the length of the longest directed path ending at v. Present
    /// iff the digraph is acyclic; every arc u -> w then has rank[u] < rank[w].
    std::optional<std::vector<std::size_t>> ranks;
    /// When cyclic: the vertices of one directed cycle in arc order, rotated so
    /// the smallest id comes first. A loop yields a single-vertex cycle.
    std::vector<Vertex> cycle;

    [[nodiscard]] bool acyclic() const { return ranks.has_value(); }
};

/// Kahn's algorithm with longest-path layering. O(n + arcs).
AcyclicityResult acyclic_order(const Digraph& d);

/// True iff `to` is reachable from `from` by a (possibly empty) directed walk.
bool reachable(const Digraph& d, Vertex from, Vertex to);

}  // namespace flowscope
