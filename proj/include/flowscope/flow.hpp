#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowscope/graph.hpp"

namespace flowscope {

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

class FlowError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Partial map on V(G), meant to be a successor function f: O^c -> I^c.
///
/// The container itself accepts any assignment so that broken candidates can
/// be handed to verify_flow; `from_pairs` is the validating constructor.
class SuccessorFunction {
  public:
    SuccessorFunction() = default;
    explicit SuccessorFunction(std::size_t vertex_count) : image_(vertex_count, kNoVertex) {}

    /// Builds f from (x, f(x)) pairs and throws FlowError unless f is defined
    /// exactly on O^c, maps into I^c along edges, and is injective.
    static SuccessorFunction from_pairs(const Geometry& geom, std::span<const std::pair<Vertex, Vertex>> pairs);

    void assign(Vertex x, Vertex y) { image_.at(x) = y; }
    void clear(Vertex x) { image_.at(x) = kNoVertex; }
    [[nodiscard]] bool defined(Vertex x) const { return image_.at(x) != kNoVertex; }
    /// f(x), or kNoVertex when undefined.
    [[nodiscard]] Vertex operator()(Vertex x) const { return image_.at(x); }
    [[nodiscard]] std::size_t vertex_count() const { return image_.size(); }
    [[nodiscard]] const std::vector<Vertex>& image() const { return image_; }

    friend bool operator==(const SuccessorFunction&, const SuccessorFunction&) = default;

  private:
    std::vector<Vertex> image_;
};

/// Describes the first way f fails to be a successor function for geom, or
/// nullopt if domain, codomain, adjacency and injectivity all hold.
std::optional<std::string> successor_defect(const Geometry& geom, const SuccessorFunction& f);

/// Vertex-disjoint directed paths covering V(G), one per output, each ending
/// at its output. Paths are ordered by terminal vertex id unless produced by
/// the extremal generator, which keeps its own path numbering.
struct PathCover {
    std::vector<std::vector<Vertex>> paths;

    friend bool operator==(const PathCover&, const PathCover&) = default;
};

/// Orbits of f as a path cover, or nullopt when some orbit closes into a cycle.
std::optional<PathCover> cover_from_successor(const Geometry& geom, const SuccessorFunction& f);

/// The successor function read off consecutive path vertices.
SuccessorFunction successor_from_cover(const Geometry& geom, const PathCover& cover);

/// First violated path-cover clause (partition of V, inputs only at starts,
/// outputs exactly at ends, one path per output, consecutive vertices
/// adjacent), or nullopt.
std::optional<std::string> path_cover_defect(const Geometry& geom, const PathCover& cover);

/// The influencing digraph with loops removed: x -> y for x in O^c, y != x,
/// and y = f(x) or y ~ f(x). Arcs are never duplicated since f(x) is not its
/// own neighbour.
class InfluencingDigraph {
  public:
    InfluencingDigraph(const Geometry& geom, const SuccessorFunction& f);

    [[nodiscard]] const Digraph& digraph() const { return digraph_; }

  private:
    Digraph digraph_;
};

inline InfluencingDigraph build_influencing_digraph(const Geometry& geom, const SuccessorFunction& f) {
    return InfluencingDigraph(geom, f);
}

/// The natural pre-order of f, answered by reachability in the influencing
/// digraph rather than a materialised closure.
class NaturalPreorder {
  public:
    NaturalPreorder(const Geometry& geom, const SuccessorFunction& f) : influencing_(geom, f) {}

    /// x precedes y iff x == y or y is reachable from x.
    [[nodiscard]] bool precedes(Vertex x, Vertex y) const;
    /// Antisymmetric iff the influencing digraph is acyclic.
    [[nodiscard]] bool antisymmetric() const;
    [[nodiscard]] const Digraph& digraph() const { return influencing_.digraph(); }

  private:
    InfluencingDigraph influencing_;
};

inline NaturalPreorder natural_preorder(const Geometry& geom, const SuccessorFunction& f) {
    return NaturalPreorder(geom, f);
}

/// A successor function with a linear extension of the flow order: ranks
/// strictly increase along every influencing arc.
struct CausalFlow {
    SuccessorFunction successor;
    std::vector<std::size_t> ranks;
};

enum class FlowCondition {
    holds,
    domain,          // f or ranks not shaped like O^c -> I^c over V(G)
    adjacency,       // x ~ f(x)
    successor_rank,  // rank(x) < rank(f(x))
    neighbor_rank,   // y ~ f(x), y != x  =>  rank(x) < rank(y)
};

struct FlowCheck {
    FlowCondition condition = FlowCondition::holds;
    Vertex x = kNoVertex;
    Vertex y = kNoVertex;
    std::string message;

    [[nodiscard]] bool holds() const { return condition == FlowCondition::holds; }
    explicit operator bool() const { return holds(); }
};

FlowCheck verify_flow(const Geometry& geom, const CausalFlow& flow);

/// Result of testing one fixed successor function.
struct SuccessorTrial {
    std::optional<CausalFlow> flow;
    std::vector<Vertex> cycle;  // a cycle of the influencing digraph when flow is absent
};

/// Builds the influencing digraph for f and topologically sorts it.
SuccessorTrial try_successor(const Geometry& geom, const SuccessorFunction& f);

struct FlowSearchOptions {
    /// Rejected alternative successor functions tolerated after the first
    /// matching fails.
    std::size_t budget = 1000;
    /// Largest vertex count handed to the exhaustive oracle.
    std::size_t oracle_bound = 10;
};

struct PathCoverSearch {
    std::optional<PathCover> cover;
    /// True when the budget ran out before the search space did; an absent
    /// cover is then inconclusive.
    bool exhausted = false;
};

/// Maximum matching from O^c into I^c along edges, spliced into chains. If
/// the matching closes a cycle, alternatives are searched within the budget.
PathCoverSearch find_path_cover(const Geometry& geom, const FlowSearchOptions& options = {});

enum class FlowStatus { found, absent, undecided };
enum class NoFlowReason { none, edge_bound, no_cover, cyclic_influence, oracle };

struct FlowSearchResult {
    FlowStatus status = FlowStatus::undecided;
    NoFlowReason reason = NoFlowReason::none;
    std::optional<CausalFlow> flow;
    /// Influencing-digraph cycle of the first matching tried, if it had one.
    std::vector<Vertex> cycle;
    std::size_t alternatives_rejected = 0;
};

/// Edge gate, then matching, then influencing-digraph acyclicity, then a
/// bounded search over alternative successor functions. Small instances that
/// exhaust the budget fall back to the exhaustive oracle; larger ones are
/// reported undecided rather than absent.
FlowSearchResult find_causal_flow(const Geometry& geom, const FlowSearchOptions& options = {});

/// Exhaustive oracle: tries every injective f along edges in lexicographic
/// order and closes the defining relations of the natural pre-order directly.
/// Throws FlowError when the geometry has more than `oracle_bound` vertices.
std::optional<CausalFlow> brute_force_flow(const Geometry& geom, std::size_t oracle_bound = 10);

const char* to_string(FlowStatus status);
const char* to_string(NoFlowReason reason);
const char* to_string(FlowCondition condition);

}  // namespace flowscope
