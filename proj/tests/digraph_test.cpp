#include "flowscope/digraph.hpp"
#include "flowscope/matching.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace flowscope;

namespace {

// Reachability closure by repeated relaxation; independent of the DFS.
std::vector<std::vector<char>> closure(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (Vertex v = 0; v < n; ++v) {
        r[v][v] = 1;
        for (Vertex w : d.successors(v)) {
            r[v][w] = 1;
        }
    }
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                r[a][b] = r[a][b] || (r[a][m] && r[m][b]);
            }
        }
    }
    return r;
}

Digraph random_digraph(std::mt19937_64& rng, std::size_t n, unsigned density, bool forward_only) {
    std::vector<Arc> arcs;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = 0; b < n; ++b) {
            if ((forward_only ? a < b : true) && rng() % density == 0) {
                arcs.emplace_back(a, b);
            }
        }
    }
    return Digraph(n, arcs);
}

std::size_t brute_force_matching(std::size_t right, const std::vector<std::vector<std::size_t>>& adj, std::size_t l,
                                 std::vector<char>& used) {
    if (l == adj.size()) {
        return 0;
    }
    std::size_t best = brute_force_matching(right, adj, l + 1, used);
    for (std::size_t r : adj[l]) {
        if (!used[r]) {
            used[r] = 1;
            best = std::max(best, 1 + brute_force_matching(right, adj, l + 1, used));
            used[r] = 0;
        }
    }
    return best;
}

}  // namespace

TEST(acyclic_order, small_dag) {
    const std::vector<Arc> arcs{{0, 1}, {0, 2}, {1, 2}};
    auto result = acyclic_order(Digraph(3, arcs));
    ASSERT_TRUE(result.acyclic());
    EXPECT_EQ(*result.ranks, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(acyclic_order, three_cycle_certificate) {
    const std::vector<Arc> arcs{{1, 2}, {2, 0}, {0, 1}};
    auto result = acyclic_order(Digraph(3, arcs));
    ASSERT_FALSE(result.acyclic());
    EXPECT_EQ(result.cycle, (std::vector<Vertex>{0, 1, 2}));
}

TEST(acyclic_order, no_arcs) {
    auto result = acyclic_order(Digraph(4, std::vector<Arc>{}));
    ASSERT_TRUE(result.acyclic());
    EXPECT_EQ(*result.ranks, (std::vector<std::size_t>(4, 0)));
    EXPECT_TRUE(acyclic_order(Digraph()).acyclic());
}

TEST(acyclic_order, loop_is_a_cycle) {
    const std::vector<Arc> arcs{{0, 1}, {1, 1}};
    auto result = acyclic_order(Digraph(2, arcs));
    ASSERT_FALSE(result.acyclic());
    EXPECT_EQ(result.cycle, (std::vector<Vertex>{1}));
}

TEST(acyclic_order, cycle_downstream_vertices_are_not_in_certificate) {
    // 3 -> 4 -> 3 is the only cycle; 5 hangs off it, 0..2 feed into it.
    const std::vector<Arc> arcs{{0, 1}, {1, 3}, {2, 3}, {3, 4}, {4, 3}, {4, 5}};
    auto result = acyclic_order(Digraph(6, arcs));
    ASSERT_FALSE(result.acyclic());
    EXPECT_EQ(result.cycle, (std::vector<Vertex>{3, 4}));
}

TEST(acyclic_order, random_digraphs_agree_with_closure) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const Digraph d = random_digraph(rng, n, 2 + trial % 5, trial % 2 == 0);
        const auto r = closure(d);
        bool cyclic = false;
        for (Vertex v = 0; v < n; ++v) {
            for (Vertex w : d.successors(v)) {
                cyclic = cyclic || r[w][v];
            }
        }
        auto result = acyclic_order(d);
        ASSERT_EQ(result.acyclic(), !cyclic);
        if (result.acyclic()) {
            for (const auto& [a, b] : d.arcs()) {
                ASSERT_LT((*result.ranks)[a], (*result.ranks)[b]);
            }
        } else {
            const auto& c = result.cycle;
            ASSERT_FALSE(c.empty());
            for (std::size_t i = 0; i < c.size(); ++i) {
                ASSERT_TRUE(d.has_arc(c[i], c[(i + 1) % c.size()]));
            }
        }
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = 0; b < n; ++b) {
                ASSERT_EQ(reachable(d, a, b), r[a][b] != 0);
            }
        }
    }
}

TEST(digraph, keeps_parallel_arcs_and_loops) {
    const std::vector<Arc> arcs{{0, 1}, {0, 1}, {1, 1}};
    Digraph d(2, arcs);
    EXPECT_EQ(d.arc_count(), 3u);
    EXPECT_TRUE(d.has_arc(1, 1));
    EXPECT_EQ(d.reversed().successors(1).size(), 3u);
    const std::vector<Arc> bad{{0, 2}};
    EXPECT_THROW(Digraph(2, bad), GeometryError);
}

TEST(matching, hopcroft_karp_matches_brute_force) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t left = rng() % 7;
        const std::size_t right = rng() % 7;
        std::vector<std::vector<std::size_t>> adj(left);
        for (auto& row : adj) {
            for (std::size_t r = 0; r < right; ++r) {
                if (rng() % 3 == 0) {
                    row.push_back(r);
                }
            }
        }
        auto m = maximum_bipartite_matching(right, adj);
        std::vector<char> used(right, 0);
        ASSERT_EQ(m.size, brute_force_matching(right, adj, 0, used));
        std::size_t count = 0;
        for (std::size_t l = 0; l < left; ++l) {
            if (m.left_to_right[l] != kUnmatched) {
                ++count;
                const std::size_t r = m.left_to_right[l];
                ASSERT_EQ(m.right_to_left[r], l);
                ASSERT_NE(std::find(adj[l].begin(), adj[l].end(), r), adj[l].end());
            }
        }
        ASSERT_EQ(count, m.size);
    }
}
