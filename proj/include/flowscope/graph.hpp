#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flowscope {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using Arc = std::pair<Vertex, Vertex>;

/// Raised when a graph, geometry or file violates its structural invariants.
class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Undirected simple graph on the dense vertex set 0..n-1.
///
/// Adjacency is stored in compressed sparse rows with each row sorted, so
/// `neighbors` is a contiguous ascending span and `adjacent` is a binary
/// search. Immutable after construction.
class Graph {
  public:
    Graph() = default;

    /// Throws GeometryError on out-of-range endpoints, self-loops or
    /// duplicate edges (in either orientation).
    Graph(std::size_t vertex_count, std::span<const Edge> edges);

    [[nodiscard]] std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    [[nodiscard]] std::size_t edge_count() const { return edge_count_; }

    /// Sorted neighbourhood of v. Throws GeometryError for unknown v.
    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const;
    [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    [[nodiscard]] bool adjacent(Vertex u, Vertex v) const;
    [[nodiscard]] bool contains(Vertex v) const { return v < vertex_count(); }

    /// Edges as (u, v) with u < v, in lexicographic order.
    [[nodiscard]] std::vector<Edge> edges() const;

  private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
    std::size_t edge_count_ = 0;
};

/// A graph together with its input and output vertex sets.
///
/// Inputs and outputs are kept as sorted vertex lists plus membership masks.
/// They may overlap. Each vertex carries an external label used only at the
/// file boundary; by default the label is the decimal id.
class Geometry {
  public:
    Geometry() = default;
    Geometry(Graph graph, std::vector<Vertex> inputs, std::vector<Vertex> outputs,
             std::vector<std::string> labels = {});

    [[nodiscard]] const Graph& graph() const { return graph_; }
    [[nodiscard]] std::size_t vertex_count() const { return graph_.vertex_count(); }
    [[nodiscard]] std::size_t edge_count() const { return graph_.edge_count(); }

    [[nodiscard]] const std::vector<Vertex>& inputs() const { return inputs_; }
    [[nodiscard]] const std::vector<Vertex>& outputs() const { return outputs_; }
    /// V(G) \ I, ascending.
    [[nodiscard]] const std::vector<Vertex>& non_inputs() const { return non_inputs_; }
    /// V(G) \ O, ascending. These are the measured vertices.
    [[nodiscard]] const std::vector<Vertex>& non_outputs() const { return non_outputs_; }

    [[nodiscard]] bool is_input(Vertex v) const { return is_input_.at(v) != 0; }
    [[nodiscard]] bool is_output(Vertex v) const { return is_output_.at(v) != 0; }

    /// Number of outputs, the `k` of the edge bound.
    [[nodiscard]] std::size_t output_count() const { return outputs_.size(); }

    [[nodiscard]] const std::string& label(Vertex v) const { return labels_.at(v); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    /// Throws GeometryError when no vertex carries the label.
    [[nodiscard]] Vertex vertex_of(const std::string& label) const;

  private:
    Graph graph_;
    std::vector<Vertex> inputs_;
    std::vector<Vertex> outputs_;
    std::vector<Vertex> non_inputs_;
    std::vector<Vertex> non_outputs_;
    std::vector<char> is_input_;
    std::vector<char> is_output_;
    std::vector<std::string> labels_;
};

/// Directed multigraph in CSR form. Loops and parallel arcs are allowed.
class Digraph {
  public:
    Digraph() = default;
    Digraph(std::size_t vertex_count, std::span<const Arc> arcs);

    [[nodiscard]] std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    [[nodiscard]] std::size_t arc_count() const { return targets_.size(); }
    /// Heads of arcs leaving v, ascending.
    [[nodiscard]] std::span<const Vertex> successors(Vertex v) const;
    [[nodiscard]] bool has_arc(Vertex from, Vertex to) const;
    /// All arcs, grouped by tail in ascending order.
    [[nodiscard]] std::vector<Arc> arcs() const;
    /// The same vertex set with every arc reversed.
    [[nodiscard]] Digraph reversed() const;

  private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

}  // namespace flowscope
