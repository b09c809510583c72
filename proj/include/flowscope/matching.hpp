#pragma once

#include <cstddef>
#include <vector>

namespace flowscope {

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

struct BipartiteMatching {
    std::vector<std::size_t> left_to_right;  // kUnmatched when free
    std::vector<std::size_t> right_to_left;
    std::size_t size = 0;
};

/// Hopcroft-Karp maximum cardinality matching, O(E sqrt(V)).
/// `adjacency[l]` lists the right vertices available to left vertex l; lists
/// are scanned in order, so ascending lists give a deterministic result.
BipartiteMatching maximum_bipartite_matching(std::size_t right_count,
                                             const std::vector<std::vector<std::size_t>>& adjacency);

}  // namespace flowscope
