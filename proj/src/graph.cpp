#include "flowscope/graph.hpp"

#include <algorithm>

namespace flowscope {

namespace {

// Counting-sort the arc list into CSR rows, then sort each row.
template <class ArcRange>
void build_csr(std::size_t n, const ArcRange& arcs, std::vector<std::size_t>& offsets,
               std::vector<Vertex>& targets) {
    offsets.assign(n + 1, 0);
    for (const auto& [from, to] : arcs) {
        ++offsets[from + 1];
    }
    for (std::size_t v = 0; v < n; ++v) {
        offsets[v + 1] += offsets[v];
    }
    targets.resize(offsets[n]);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [from, to] : arcs) {
        targets[cursor[from]++] = to;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                  targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
    }
}

std::vector<Vertex> sorted_unique_subset(std::vector<Vertex> set, std::size_t n, const char* what) {
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
        throw GeometryError(std::string("duplicate vertex in ") + what);
    }
    if (!set.empty() && set.back() >= n) {
        throw GeometryError(std::string(what) + " vertex " + std::to_string(set.back()) + " out of range");
    }
    return set;
}

}  // namespace

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) {
    std::vector<Arc> arcs;
    arcs.reserve(2 * edges.size());
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw GeometryError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") references unknown vertex");
        }
        if (u == v) {
            throw GeometryError("self-loop at vertex " + std::to_string(u));
        }
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    build_csr(vertex_count, arcs, offsets_, targets_);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto row = neighbors(static_cast<Vertex>(v));
        if (auto dup = std::adjacent_find(row.begin(), row.end()); dup != row.end()) {
            throw GeometryError("duplicate edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
        }
    }
    edge_count_ = edges.size();
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    if (!contains(v)) {
        throw GeometryError("unknown vertex " + std::to_string(v));
    }
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

Geometry::Geometry(Graph graph, std::vector<Vertex> inputs, std::vector<Vertex> outputs,
                   std::vector<std::string> labels)
    : graph_(std::move(graph)) {
    const std::size_t n = graph_.vertex_count();
    inputs_ = sorted_unique_subset(std::move(inputs), n, "inputs");
    outputs_ = sorted_unique_subset(std::move(outputs), n, "outputs");
    is_input_.assign(n, 0);
    is_output_.assign(n, 0);
    for (Vertex v : inputs_) {
        is_input_[v] = 1;
    }
    for (Vertex v : outputs_) {
        is_output_[v] = 1;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!is_input_[v]) {
            non_inputs_.push_back(v);
        }
        if (!is_output_[v]) {
            non_outputs_.push_back(v);
        }
    }
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            labels.push_back(std::to_string(v));
        }
    }
    if (labels.size() != n) {
        throw GeometryError("label count " + std::to_string(labels.size()) + " does not match vertex count " +
                            std::to_string(n));
    }
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
        throw GeometryError("duplicate vertex label \"" + *dup + "\"");
    }
    labels_ = std::move(labels);
}

Vertex Geometry::vertex_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw GeometryError("unknown vertex label \"" + label + "\"");
    }
    return static_cast<Vertex>(it - labels_.begin());
}

Digraph::Digraph(std::size_t vertex_count, std::span<const Arc> arcs) {
    for (const auto& [from, to] : arcs) {
        if (from >= vertex_count || to >= vertex_count) {
            throw GeometryError("arc (" + std::to_string(from) + ", " + std::to_string(to) +
                                ") references unknown vertex");
        }
    }
    build_csr(vertex_count, arcs, offsets_, targets_);
}

std::span<const Vertex> Digraph::successors(Vertex v) const {
    if (v >= vertex_count()) {
        throw GeometryError("unknown vertex " + std::to_string(v));
    }
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Digraph::has_arc(Vertex from, Vertex to) const {
    auto row = successors(from);
    return std::binary_search(row.begin(), row.end(), to);
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count());
    for (Vertex v = 0; v < vertex_count(); ++v) {
        for (Vertex w : successors(v)) {
            out.emplace_back(v, w);
        }
    }
    return out;
}

Digraph Digraph::reversed() const {
    std::vector<Arc> rev;
    rev.reserve(arc_count());
    for (Vertex v = 0; v < vertex_count(); ++v) {
        for (Vertex w : successors(v)) {
            rev.emplace_back(w, v);
        }
    }
    return Digraph(vertex_count(), rev);
}

}  // namespace flowscope
