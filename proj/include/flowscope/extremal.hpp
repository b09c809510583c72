#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "flowscope/flow.hpp"
#include "flowscope/graph.hpp"

namespace flowscope {

class ExtremalError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Maximum edge count of a geometry with n vertices and k outputs that admits
/// a causal flow: kn - k(k+1)/2. Requires n >= k >= 1.
std::uint64_t gamma(std::uint64_t n, std::uint64_t k);

/// Path lengths n_1 <= ... <= n_k of the saturating construction.
class ExtremalPartition {
  public:
    /// Rejects empty, zero-containing and unsorted part lists.
    explicit ExtremalPartition(std::vector<std::size_t> parts);

    [[nodiscard]] const std::vector<std::size_t>& parts() const { return parts_; }
    [[nodiscard]] std::size_t part(std::size_t i) const { return parts_.at(i); }
    [[nodiscard]] std::size_t k() const { return parts_.size(); }
    [[nodiscard]] std::size_t n() const { return n_; }

  private:
    std::vector<std::size_t> parts_;
    std::size_t n_ = 0;
};

/// Parses "6,8,9".
ExtremalPartition parse_partition(std::string_view text);

/// Every partition of n into non-decreasing positive parts, in lexicographic
/// order of the part lists.
std::vector<ExtremalPartition> partitions_of(std::size_t n);

struct ExtremalInstance {
    Geometry geometry;
    /// paths[i] lists v_{i,1} .. v_{i,n_i}; path order follows the partition.
    PathCover cover;
};

/// The saturating graph G(n_1, .., n_k) with inputs at path starts and outputs
/// at path ends. Vertex ids run path by path; labels are "v{i}_{a}" with both
/// indices counted from 1. For every pair of paths i < j it adds
///   v_{i,a} v_{j,a}      for 1 <= a < n_i,
///   v_{i,a+1} v_{j,a}    for 1 <= a < n_i,
///   v_{i,n_i} v_{j,a}    for n_i <= a <= n_j.
ExtremalInstance generate_extremal(const ExtremalPartition& partition);

/// Closed form n_i + n_j - 1 for paths i < j (0-based indices).
std::size_t count_connecting_edges(const ExtremalPartition& partition, std::size_t i, std::size_t j);

/// Edges of geom joining path i to path j of the cover, counted directly.
std::size_t connecting_edge_count(const Geometry& geom, const PathCover& cover, std::size_t i, std::size_t j);

/// Which construction rule an influencing arc comes from. `path` covers the
/// arcs induced by a single path's own edges (x -> f(x) and x -> f(f(x))).
enum class ArcType { path, a, b, c, d, e, f };

const char* to_string(ArcType type);

/// Tags every arc of the influencing digraph of `cover` with the rule that
/// produces it. Expects paths sorted by length. Where two rules describe the
/// same arc the earlier letter wins. Throws ExtremalError for an arc no rule
/// accounts for.
std::map<Arc, ArcType> classify_arcs(const Geometry& geom, const PathCover& cover);

/// Checks the ordering argument for acyclicity: with v_{i,a} keyed by
/// (a, i), every arc either increases the key lexicographically or ends at a
/// path's final vertex, and no arc leaves a final vertex. When this holds the
/// influencing digraph is acyclic.
bool lex_acyclicity_certificate(const Geometry& geom, const PathCover& cover);

/// No path has a chord.
bool no_path_chords(const Geometry& geom, const PathCover& cover);
/// No two connecting edges v_a w_b, v_c w_d between the same pair of paths
/// with a < c and b > d.
bool no_crossing_edges(const Geometry& geom, const PathCover& cover);

/// Both structural conditions above; each is necessary for an acyclic
/// influencing digraph.
inline bool observation_checks(const Geometry& geom, const PathCover& cover) {
    return no_path_chords(geom, cover) && no_crossing_edges(geom, cover);
}

/// a + b for each connecting edge v_{i,a} v_{j,b} (positions from 1), in
/// order of (a, b).
std::vector<std::size_t> lambda_labels(const Geometry& geom, const PathCover& cover, std::size_t i, std::size_t j);

}  // namespace flowscope
