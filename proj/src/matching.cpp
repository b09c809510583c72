#include "flowscope/matching.hpp"

#include <limits>
#include <queue>

namespace flowscope {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
  public:
    HopcroftKarp(std::size_t right_count, const std::vector<std::vector<std::size_t>>& adjacency)
        : adj_(adjacency), dist_(adjacency.size()), next_edge_(adjacency.size()) {
        m_.left_to_right.assign(adjacency.size(), kUnmatched);
        m_.right_to_left.assign(right_count, kUnmatched);
    }

    BipartiteMatching run() {
        while (layer()) {
            std::fill(next_edge_.begin(), next_edge_.end(), 0);
            for (std::size_t l = 0; l < adj_.size(); ++l) {
                if (m_.left_to_right[l] == kUnmatched && augment(l)) {
                    ++m_.size;
                }
            }
        }
        return std::move(m_);
    }

  private:
    // BFS from free left vertices; true if some free right vertex is reachable.
    bool layer() {
        std::queue<std::size_t> q;
        for (std::size_t l = 0; l < adj_.size(); ++l) {
            if (m_.left_to_right[l] == kUnmatched) {
                dist_[l] = 0;
                q.push(l);
            } else {
                dist_[l] = kInf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            std::size_t l = q.front();
            q.pop();
            for (std::size_t r : adj_[l]) {
                std::size_t partner = m_.right_to_left[r];
                if (partner == kUnmatched) {
                    found = true;
                } else if (dist_[partner] == kInf) {
                    dist_[partner] = dist_[l] + 1;
                    q.push(partner);
                }
            }
        }
        return found;
    }

    // Iterative DFS along the BFS layers.
    bool augment(std::size_t root) {
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t l = stack.back();
            if (next_edge_[l] == adj_[l].size()) {
                dist_[l] = kInf;
                stack.pop_back();
                continue;
            }
            std::size_t r = adj_[l][next_edge_[l]];
            std::size_t partner = m_.right_to_left[r];
            if (partner == kUnmatched) {
                // Flip the alternating path recorded on the stack.
                for (std::size_t i = stack.size(); i-- > 0;) {
                    std::size_t left = stack[i];
                    std::size_t right = adj_[left][next_edge_[left]];
                    m_.left_to_right[left] = right;
                    m_.right_to_left[right] = left;
                }
                return true;
            }
            if (dist_[partner] == dist_[l] + 1) {
                stack.push_back(partner);
            } else {
                ++next_edge_[l];
            }
        }
        return false;
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> next_edge_;
    BipartiteMatching m_;
};

}  // namespace

BipartiteMatching maximum_bipartite_matching(std::size_t right_count,
                                             const std::vector<std::vector<std::size_t>>& adjacency) {
    return HopcroftKarp(right_count, adjacency).run();
}

}  // namespace flowscope
