#include "flowscope/flow.hpp"

#include <algorithm>
#include <cstdint>

#include "flowscope/digraph.hpp"
#include "flowscope/extremal.hpp"
#include "flowscope/matching.hpp"

namespace flowscope {

namespace {

std::vector<std::vector<Vertex>> successor_candidates(const Geometry& geom) {
    std::vector<std::vector<Vertex>> cands(geom.vertex_count());
    for (Vertex x : geom.non_outputs()) {
        for (Vertex y : geom.graph().neighbors(x)) {
            if (!geom.is_input(y)) {
                cands[x].push_back(y);
            }
        }
    }
    return cands;
}

// Depth-first search over injective successor functions, assigning O^c in
// ascending id order and trying candidates in ascending id order. Partial
// assignments are pruned as soon as they close an f-orbit cycle (orbit mode)
// or a cycle in the partial influencing digraph (influence mode); the arcs
// leaving x depend only on f(x), so such a cycle survives every completion.
class SuccessorSearch {
  public:
    enum class Pruning { orbits, influence };

    SuccessorSearch(const Geometry& geom, Pruning pruning, std::size_t budget)
        : geom_(geom),
          pruning_(pruning),
          budget_(budget),
          cands_(successor_candidates(geom)),
          f_(geom.vertex_count()),
          taken_(geom.vertex_count(), 0),
          out_(geom.vertex_count()),
          in_degree_(geom.vertex_count(), 0),
          stamp_(geom.vertex_count(), 0) {}

    std::optional<SuccessorFunction> run() {
        const auto& vars = geom_.non_outputs();
        std::vector<std::size_t> next(vars.size() + 1, 0);
        std::size_t depth = 0;
        while (true) {
            if (depth == vars.size()) {
                return f_;
            }
            const Vertex x = vars[depth];
            bool advanced = false;
            while (next[depth] < cands_[x].size()) {
                const Vertex y = cands_[x][next[depth]++];
                if (taken_[y]) {
                    continue;
                }
                if (closes_cycle(x, y)) {
                    if (reject()) {
                        return std::nullopt;
                    }
                    continue;
                }
                assign(x, y);
                next[++depth] = 0;
                advanced = true;
                break;
            }
            if (advanced) {
                continue;
            }
            if (depth == 0) {
                return std::nullopt;
            }
            if (reject()) {
                return std::nullopt;
            }
            unassign(vars[--depth]);
        }
    }

    [[nodiscard]] bool exhausted() const { return exhausted_; }
    [[nodiscard]] std::size_t rejected() const { return rejected_; }

  private:
    bool reject() {
        if (++rejected_ > budget_) {
            exhausted_ = true;
        }
        return exhausted_;
    }

    bool closes_cycle(Vertex x, Vertex y) {
        if (pruning_ == Pruning::orbits) {
            Vertex v = y;
            while (v != kNoVertex && v != x) {
                v = f_(v);
            }
            return v == x;
        }
        if (in_degree_[x] == 0) {
            return false;
        }
        ++epoch_;
        std::vector<Vertex> stack;
        auto visit = [&](Vertex t) {
            if (stamp_[t] != epoch_) {
                stamp_[t] = epoch_;
                stack.push_back(t);
            }
        };
        visit(y);
        for (Vertex z : geom_.graph().neighbors(y)) {
            if (z != x) {
                visit(z);
            }
        }
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            if (v == x) {
                return true;
            }
            for (Vertex w : out_[v]) {
                visit(w);
            }
        }
        return false;
    }

    void assign(Vertex x, Vertex y) {
        f_.assign(x, y);
        taken_[y] = 1;
        if (pruning_ == Pruning::influence) {
            out_[x].push_back(y);
            for (Vertex z : geom_.graph().neighbors(y)) {
                if (z != x) {
                    out_[x].push_back(z);
                }
            }
            for (Vertex w : out_[x]) {
                ++in_degree_[w];
            }
        }
    }

    void unassign(Vertex x) {
        taken_[f_(x)] = 0;
        f_.clear(x);
        for (Vertex w : out_[x]) {
            --in_degree_[w];
        }
        out_[x].clear();
    }

    const Geometry& geom_;
    Pruning pruning_;
    std::size_t budget_;
    std::vector<std::vector<Vertex>> cands_;
    SuccessorFunction f_;
    std::vector<char> taken_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::size_t> in_degree_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::size_t rejected_ = 0;
    bool exhausted_ = false;
};

// Successor function from a maximum matching of O^c into I^c, or nullopt if
// the matching does not saturate O^c.
std::optional<SuccessorFunction> saturating_matching(const Geometry& geom) {
    const auto& left = geom.non_outputs();
    const auto& right = geom.non_inputs();
    std::vector<std::size_t> right_index(geom.vertex_count(), kUnmatched);
    for (std::size_t r = 0; r < right.size(); ++r) {
        right_index[right[r]] = r;
    }
    std::vector<std::vector<std::size_t>> adjacency(left.size());
    for (std::size_t l = 0; l < left.size(); ++l) {
        for (Vertex y : geom.graph().neighbors(left[l])) {
            if (right_index[y] != kUnmatched) {
                adjacency[l].push_back(right_index[y]);
            }
        }
    }
    BipartiteMatching m = maximum_bipartite_matching(right.size(), adjacency);
    if (m.size < left.size()) {
        return std::nullopt;
    }
    SuccessorFunction f(geom.vertex_count());
    for (std::size_t l = 0; l < left.size(); ++l) {
        f.assign(left[l], right[m.left_to_right[l]]);
    }
    return f;
}

using Bitset = std::vector<std::uint64_t>;

bool test_bit(const Bitset& row, std::size_t i) { return (row[i / 64] >> (i % 64)) & 1U; }
void set_bit(Bitset& row, std::size_t i) { row[i / 64] |= std::uint64_t{1} << (i % 64); }

}  // namespace

SuccessorFunction SuccessorFunction::from_pairs(const Geometry& geom,
                                                std::span<const std::pair<Vertex, Vertex>> pairs) {
    SuccessorFunction f(geom.vertex_count());
    for (const auto& [x, y] : pairs) {
        if (x >= geom.vertex_count() || y >= geom.vertex_count()) {
            throw FlowError("successor pair references an unknown vertex");
        }
        if (f.defined(x)) {
            throw FlowError("successor assigned twice for vertex " + geom.label(x));
        }
        f.assign(x, y);
    }
    if (auto defect = successor_defect(geom, f)) {
        throw FlowError(*defect);
    }
    return f;
}

std::optional<std::string> successor_defect(const Geometry& geom, const SuccessorFunction& f) {
    const std::size_t n = geom.vertex_count();
    if (f.vertex_count() != n) {
        return "successor function covers " + std::to_string(f.vertex_count()) + " vertices, geometry has " +
               std::to_string(n);
    }
    std::vector<Vertex> preimage(n, kNoVertex);
    for (Vertex x = 0; x < n; ++x) {
        const Vertex y = f(x);
        if (geom.is_output(x)) {
            if (y != kNoVertex) {
                return "successor defined on output " + geom.label(x);
            }
            continue;
        }
        if (y == kNoVertex) {
            return "successor undefined on non-output " + geom.label(x);
        }
        if (y >= n || geom.is_input(y)) {
            return "successor of " + geom.label(x) + " is not a non-input vertex";
        }
        if (!geom.graph().adjacent(x, y)) {
            return "successor of " + geom.label(x) + " is not adjacent to it";
        }
        if (preimage[y] != kNoVertex) {
            return "successor is not injective: " + geom.label(preimage[y]) + " and " + geom.label(x) + " both map to " +
                   geom.label(y);
        }
        preimage[y] = x;
    }
    return std::nullopt;
}

std::optional<PathCover> cover_from_successor(const Geometry& geom, const SuccessorFunction& f) {
    const std::size_t n = geom.vertex_count();
    std::vector<Vertex> pred(n, kNoVertex);
    for (Vertex x = 0; x < n; ++x) {
        if (f.defined(x)) {
            pred[f(x)] = x;
        }
    }
    PathCover cover;
    std::size_t covered = 0;
    for (Vertex o : geom.outputs()) {
        std::vector<Vertex> path;
        for (Vertex v = o; v != kNoVertex; v = pred[v]) {
            path.push_back(v);
        }
        std::reverse(path.begin(), path.end());
        covered += path.size();
        cover.paths.push_back(std::move(path));
    }
    if (covered != n) {
        return std::nullopt;
    }
    return cover;
}

SuccessorFunction successor_from_cover(const Geometry& geom, const PathCover& cover) {
    SuccessorFunction f(geom.vertex_count());
    for (const auto& path : cover.paths) {
        for (std::size_t a = 0; a + 1 < path.size(); ++a) {
            f.assign(path[a], path[a + 1]);
        }
    }
    return f;
}

std::optional<std::string> path_cover_defect(const Geometry& geom, const PathCover& cover) {
    const std::size_t n = geom.vertex_count();
    if (cover.paths.size() != geom.output_count()) {
        return "cover has " + std::to_string(cover.paths.size()) + " paths for " + std::to_string(geom.output_count()) +
               " outputs";
    }
    std::vector<char> seen(n, 0);
    for (std::size_t p = 0; p < cover.paths.size(); ++p) {
        const auto& path = cover.paths[p];
        const std::string name = "path " + std::to_string(p);
        if (path.empty()) {
            return name + " is empty";
        }
        for (std::size_t a = 0; a < path.size(); ++a) {
            const Vertex v = path[a];
            if (v >= n) {
                return name + " references an unknown vertex";
            }
            if (seen[v]) {
                return "vertex " + geom.label(v) + " lies on more than one path position";
            }
            seen[v] = 1;
            if (a > 0 && geom.is_input(v)) {
                return name + " meets input " + geom.label(v) + " after its initial point";
            }
            if (a + 1 < path.size()) {
                if (geom.is_output(v)) {
                    return name + " meets output " + geom.label(v) + " before its final point";
                }
                if (!geom.graph().adjacent(v, path[a + 1])) {
                    return name + " steps along a non-edge at " + geom.label(v);
                }
            } else if (!geom.is_output(v)) {
                return name + " ends at non-output " + geom.label(v);
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(n)) {
        return "cover misses some vertex";
    }
    return std::nullopt;
}

InfluencingDigraph::InfluencingDigraph(const Geometry& geom, const SuccessorFunction& f) {
    std::vector<Arc> arcs;
    for (Vertex x : geom.non_outputs()) {
        const Vertex y = f(x);
        if (y == kNoVertex) {
            throw FlowError("successor undefined on non-output " + geom.label(x));
        }
        arcs.emplace_back(x, y);
        for (Vertex z : geom.graph().neighbors(y)) {
            if (z != x) {
                arcs.emplace_back(x, z);
            }
        }
    }
    digraph_ = Digraph(geom.vertex_count(), arcs);
}

bool NaturalPreorder::precedes(Vertex x, Vertex y) const { return reachable(digraph(), x, y); }

bool NaturalPreorder::antisymmetric() const { return acyclic_order(digraph()).acyclic(); }

FlowCheck verify_flow(const Geometry& geom, const CausalFlow& flow) {
    const std::size_t n = geom.vertex_count();
    const SuccessorFunction& f = flow.successor;
    auto fail = [&](FlowCondition c, Vertex x, Vertex y, std::string msg) {
        return FlowCheck{c, x, y, std::move(msg)};
    };
    if (f.vertex_count() != n || flow.ranks.size() != n) {
        return fail(FlowCondition::domain, kNoVertex, kNoVertex, "flow does not cover the geometry's vertex set");
    }
    for (Vertex x = 0; x < n; ++x) {
        const Vertex y = f(x);
        if (geom.is_output(x) && y != kNoVertex) {
            return fail(FlowCondition::domain, x, y, "successor defined on output " + geom.label(x));
        }
        if (!geom.is_output(x) && y == kNoVertex) {
            return fail(FlowCondition::domain, x, y, "successor undefined on non-output " + geom.label(x));
        }
        if (y != kNoVertex && (y >= n || geom.is_input(y))) {
            return fail(FlowCondition::domain, x, y, "successor of " + geom.label(x) + " falls outside the non-inputs");
        }
    }
    for (Vertex x : geom.non_outputs()) {
        const Vertex fx = f(x);
        if (!geom.graph().adjacent(x, fx)) {
            return fail(FlowCondition::adjacency, x, fx, geom.label(x) + " is not adjacent to its successor " + geom.label(fx));
        }
        if (!(flow.ranks[x] < flow.ranks[fx])) {
            return fail(FlowCondition::successor_rank, x, fx,
                        geom.label(x) + " is not ordered before its successor " + geom.label(fx));
        }
        for (Vertex y : geom.graph().neighbors(fx)) {
            if (y != x && !(flow.ranks[x] < flow.ranks[y])) {
                return fail(FlowCondition::neighbor_rank, x, y,
                            geom.label(x) + " is not ordered before " + geom.label(y) + ", a neighbour of its successor " +
                                geom.label(fx));
            }
        }
    }
    return {};
}

SuccessorTrial try_successor(const Geometry& geom, const SuccessorFunction& f) {
    InfluencingDigraph d(geom, f);
    AcyclicityResult order = acyclic_order(d.digraph());
    SuccessorTrial trial;
    if (order.acyclic()) {
        trial.flow = CausalFlow{f, std::move(*order.ranks)};
    } else {
        trial.cycle = std::move(order.cycle);
    }
    return trial;
}

PathCoverSearch find_path_cover(const Geometry& geom, const FlowSearchOptions& options) {
    PathCoverSearch result;
    auto first = saturating_matching(geom);
    if (!first) {
        return result;
    }
    if ((result.cover = cover_from_successor(geom, *first))) {
        return result;
    }
    SuccessorSearch search(geom, SuccessorSearch::Pruning::orbits, options.budget);
    if (auto f = search.run()) {
        result.cover = cover_from_successor(geom, *f);
    }
    result.exhausted = search.exhausted();
    return result;
}

FlowSearchResult find_causal_flow(const Geometry& geom, const FlowSearchOptions& options) {
    FlowSearchResult result;
    const std::size_t n = geom.vertex_count();
    const std::size_t k = geom.output_count();
    auto absent = [&](NoFlowReason reason) {
        result.status = FlowStatus::absent;
        result.reason = reason;
        return result;
    };

    if (n == 0) {
        result.status = FlowStatus::found;
        result.flow = CausalFlow{SuccessorFunction(0), {}};
        return result;
    }
    // No outputs: every orbit of f would have to be a cycle.
    if (k == 0) {
        return absent(NoFlowReason::no_cover);
    }
    if (geom.edge_count() > gamma(n, k)) {
        return absent(NoFlowReason::edge_bound);
    }
    auto first = saturating_matching(geom);
    if (!first) {
        return absent(NoFlowReason::no_cover);
    }
    SuccessorTrial trial = try_successor(geom, *first);
    if (trial.flow) {
        result.status = FlowStatus::found;
        result.flow = std::move(trial.flow);
        return result;
    }
    result.cycle = std::move(trial.cycle);

    SuccessorSearch search(geom, SuccessorSearch::Pruning::influence, options.budget);
    auto f = search.run();
    result.alternatives_rejected = search.rejected();
    if (f) {
        SuccessorTrial found = try_successor(geom, *f);
        if (!found.flow) {
            throw FlowError("internal error: pruned search returned a cyclic influencing digraph");
        }
        result.status = FlowStatus::found;
        result.flow = std::move(found.flow);
        return result;
    }
    if (!search.exhausted()) {
        return absent(NoFlowReason::cyclic_influence);
    }
    if (n <= options.oracle_bound) {
        if (auto flow = brute_force_flow(geom, options.oracle_bound)) {
            result.status = FlowStatus::found;
            result.flow = std::move(flow);
            return result;
        }
        return absent(NoFlowReason::oracle);
    }
    result.status = FlowStatus::undecided;
    return result;
}

std::optional<CausalFlow> brute_force_flow(const Geometry& geom, std::size_t oracle_bound) {
    const std::size_t n = geom.vertex_count();
    if (n > oracle_bound) {
        throw FlowError("geometry has " + std::to_string(n) + " vertices, above the oracle bound of " +
                        std::to_string(oracle_bound));
    }
    const auto& graph = geom.graph();
    const auto& vars = geom.non_outputs();
    std::vector<std::vector<Vertex>> cands(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (Vertex y : graph.neighbors(vars[i])) {
            if (!geom.is_input(y)) {
                cands[i].push_back(y);
            }
        }
        if (cands[i].empty()) {
            return std::nullopt;
        }
    }

    const std::size_t words = (n + 63) / 64;
    std::vector<std::size_t> digit(vars.size(), 0);
    std::vector<Bitset> rel(n, Bitset(words, 0));
    std::vector<char> used(n, 0);
    while (true) {
        bool injective = true;
        std::fill(used.begin(), used.end(), 0);
        for (std::size_t i = 0; i < vars.size() && injective; ++i) {
            const Vertex y = cands[i][digit[i]];
            injective = !used[y];
            used[y] = 1;
        }
        if (injective) {
            // x <= x;  x <= f(x);  y ~ f(x) => x <= y;  then transitive closure.
            for (Vertex v = 0; v < n; ++v) {
                std::fill(rel[v].begin(), rel[v].end(), 0);
                set_bit(rel[v], v);
            }
            for (std::size_t i = 0; i < vars.size(); ++i) {
                const Vertex x = vars[i];
                const Vertex fx = cands[i][digit[i]];
                set_bit(rel[x], fx);
                for (Vertex y : graph.neighbors(fx)) {
                    set_bit(rel[x], y);
                }
            }
            for (std::size_t mid = 0; mid < n; ++mid) {
                for (std::size_t a = 0; a < n; ++a) {
                    if (test_bit(rel[a], mid)) {
                        for (std::size_t w = 0; w < words; ++w) {
                            rel[a][w] |= rel[mid][w];
                        }
                    }
                }
            }
            bool antisymmetric = true;
            for (std::size_t a = 0; a < n && antisymmetric; ++a) {
                for (std::size_t b = a + 1; b < n && antisymmetric; ++b) {
                    antisymmetric = !(test_bit(rel[a], b) && test_bit(rel[b], a));
                }
            }
            if (antisymmetric) {
                CausalFlow flow{SuccessorFunction(n), std::vector<std::size_t>(n, 0)};
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    flow.successor.assign(vars[i], cands[i][digit[i]]);
                }
                // Strict predecessor counts strictly increase along the order.
                for (std::size_t a = 0; a < n; ++a) {
                    for (std::size_t b = 0; b < n; ++b) {
                        if (a != b && test_bit(rel[a], b)) {
                            ++flow.ranks[b];
                        }
                    }
                }
                return flow;
            }
        }
        // Odometer step: the last variable varies fastest.
        std::size_t i = vars.size();
        while (i > 0) {
            --i;
            if (++digit[i] < cands[i].size()) {
                break;
            }
            digit[i] = 0;
            if (i == 0) {
                return std::nullopt;
            }
        }
        if (vars.empty()) {
            return std::nullopt;
        }
    }
}

const char* to_string(FlowStatus status) {
    switch (status) {
        case FlowStatus::found:
            return "flow-found";
        case FlowStatus::absent:
            return "no-flow";
        case FlowStatus::undecided:
            return "undecided";
    }
    return "?";
}

const char* to_string(NoFlowReason reason) {
    switch (reason) {
        case NoFlowReason::none:
            return "none";
        case NoFlowReason::edge_bound:
            return "edge-bound";
        case NoFlowReason::no_cover:
            return "no-cover";
        case NoFlowReason::cyclic_influence:
            return "cyclic-D";
        case NoFlowReason::oracle:
            return "oracle";
    }
    return "?";
}

const char* to_string(FlowCondition condition) {
    switch (condition) {
        case FlowCondition::holds:
            return "holds";
        case FlowCondition::domain:
            return "domain";
        case FlowCondition::adjacency:
            return "adjacency";
        case FlowCondition::successor_rank:
            return "successor-order";
        case FlowCondition::neighbor_rank:
            return "neighbor-order";
    }
    return "?";
}

}  // namespace flowscope
