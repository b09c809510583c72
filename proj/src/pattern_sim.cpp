#include "flowscope/pattern_sim.hpp"

#include <algorithm>

namespace flowscope {

std::vector<Vertex> measurement_order(const CausalFlow& flow) {
    std::vector<Vertex> order;
    for (Vertex v = 0; v < flow.successor.vertex_count(); ++v) {
        if (flow.successor.defined(v)) {
            order.push_back(v);
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return flow.ranks.at(a) < flow.ranks.at(b); });
    return order;
}

}  // namespace flowscope
