#include "flowscope/digraph.hpp"

#include <algorithm>

namespace flowscope {

namespace {

// Every vertex left over by Kahn's algorithm has an in-arc from another
// leftover vertex, so walking in-arcs backwards must eventually repeat.
std::vector<Vertex> extract_cycle(const Digraph& d, const std::vector<std::size_t>& in_degree) {
    const Digraph rev = d.reversed();
    Vertex start = 0;
    while (in_degree[start] == 0) {
        ++start;
    }
    std::vector<std::size_t> seen_at(d.vertex_count(), SIZE_MAX);
    std::vector<Vertex> walk;
    Vertex v = start;
    while (seen_at[v] == SIZE_MAX) {
        seen_at[v] = walk.size();
        walk.push_back(v);
        for (Vertex u : rev.successors(v)) {
            if (in_degree[u] != 0) {
                v = u;
                break;
            }
        }
    }
    // walk[seen_at[v]..] traverses the cycle against arc direction.
    std::vector<Vertex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    return cycle;
}

}  // namespace

AcyclicityResult acyclic_order(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    std::vector<std::size_t> in_degree(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : d.successors(v)) {
            ++in_degree[w];
        }
    }
    std::vector<std::size_t> rank(n, 0);
    std::vector<Vertex> ready;
    for (Vertex v = 0; v < n; ++v) {
        if (in_degree[v] == 0) {
            ready.push_back(v);
        }
    }
    std::size_t done = 0;
    while (!ready.empty()) {
        Vertex v = ready.back();
        ready.pop_back();
        ++done;
        for (Vertex w : d.successors(v)) {
            rank[w] = std::max(rank[w], rank[v] + 1);
            if (--in_degree[w] == 0) {
                ready.push_back(w);
            }
        }
    }
    AcyclicityResult result;
    if (done == n) {
        result.ranks = std::move(rank);
    } else {
        result.cycle = extract_cycle(d, in_degree);
    }
    return result;
}

bool reachable(const Digraph& d, Vertex from, Vertex to) {
    if (from == to) {
        return true;
    }
    std::vector<char> seen(d.vertex_count(), 0);
    std::vector<Vertex> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : d.successors(v)) {
            if (w == to) {
                return true;
            }
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace flowscope
