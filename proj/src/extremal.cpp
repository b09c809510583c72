#include "flowscope/extremal.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>

namespace flowscope {

namespace {

// Path index and 1-based position of every vertex on the cover.
struct Position {
    std::size_t path = 0;
    std::size_t pos = 0;
};

std::vector<Position> positions(const Geometry& geom, const PathCover& cover) {
    std::vector<Position> where(geom.vertex_count());
    std::vector<char> seen(geom.vertex_count(), 0);
    for (std::size_t p = 0; p < cover.paths.size(); ++p) {
        for (std::size_t a = 0; a < cover.paths[p].size(); ++a) {
            const Vertex v = cover.paths[p][a];
            if (v >= geom.vertex_count() || seen[v]) {
                throw ExtremalError("cover is not a partition of the vertex set");
            }
            seen[v] = 1;
            where[v] = {p, a + 1};
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw ExtremalError("cover misses a vertex");
    }
    return where;
}

std::size_t path_length(const PathCover& cover, std::size_t p) { return cover.paths[p].size(); }

}  // namespace

std::uint64_t gamma(std::uint64_t n, std::uint64_t k) {
    if (k < 1 || n < k) {
        throw ExtremalError("gamma requires n >= k >= 1, got n=" + std::to_string(n) + ", k=" + std::to_string(k));
    }
    return k * n - k * (k + 1) / 2;
}

ExtremalPartition::ExtremalPartition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw ExtremalError("partition needs at least one part");
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0) {
            throw ExtremalError("partition parts must be positive");
        }
        if (i > 0 && parts_[i] < parts_[i - 1]) {
            throw ExtremalError("partition parts must be non-decreasing");
        }
        n_ += parts_[i];
    }
}

ExtremalPartition parse_partition(std::string_view text) {
    std::vector<std::size_t> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view field = text.substr(start, end - start);
        while (!field.empty() && field.front() == ' ') {
            field.remove_prefix(1);
        }
        while (!field.empty() && field.back() == ' ') {
            field.remove_suffix(1);
        }
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw ExtremalError("bad partition field \"" + std::string(field) + "\"");
        }
        parts.push_back(value);
        start = end + 1;
    }
    return ExtremalPartition(std::move(parts));
}

std::vector<ExtremalPartition> partitions_of(std::size_t n) {
    std::vector<ExtremalPartition> out;
    std::vector<std::size_t> parts;
    // Extend `parts` with parts >= lo summing to `rest`.
    auto extend = [&](auto&& self, std::size_t rest, std::size_t lo) -> void {
        if (rest == 0) {
            out.emplace_back(parts);
            return;
        }
        for (std::size_t p = lo; p <= rest; ++p) {
            parts.push_back(p);
            self(self, rest - p, p);
            parts.pop_back();
        }
    };
    if (n > 0) {
        extend(extend, n, 1);
    }
    return out;
}

ExtremalInstance generate_extremal(const ExtremalPartition& partition) {
    const std::size_t k = partition.k();
    std::vector<std::size_t> offset(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
        offset[i + 1] = offset[i] + partition.part(i);
    }
    // v(i, a) with i 0-based and a 1-based.
    auto v = [&](std::size_t i, std::size_t a) { return static_cast<Vertex>(offset[i] + a - 1); };

    std::vector<Edge> edges;
    auto add = [&](Vertex x, Vertex y) { edges.emplace_back(std::min(x, y), std::max(x, y)); };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t a = 1; a < partition.part(i); ++a) {
            add(v(i, a), v(i, a + 1));
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t ni = partition.part(i);
        for (std::size_t j = i + 1; j < k; ++j) {
            const std::size_t nj = partition.part(j);
            for (std::size_t a = 1; a < ni; ++a) {
                add(v(i, a), v(j, a));
                if (nj > 1) {
                    add(v(i, a + 1), v(j, a));
                }
            }
            for (std::size_t a = ni; a <= nj; ++a) {
                add(v(i, ni), v(j, a));
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Vertex> inputs;
    std::vector<Vertex> outputs;
    std::vector<std::string> labels(partition.n());
    PathCover cover;
    for (std::size_t i = 0; i < k; ++i) {
        inputs.push_back(v(i, 1));
        outputs.push_back(v(i, partition.part(i)));
        std::vector<Vertex> path;
        for (std::size_t a = 1; a <= partition.part(i); ++a) {
            labels[v(i, a)] = "v" + std::to_string(i + 1) + "_" + std::to_string(a);
            path.push_back(v(i, a));
        }
        cover.paths.push_back(std::move(path));
    }
    Graph graph(partition.n(), edges);
    return {Geometry(std::move(graph), std::move(inputs), std::move(outputs), std::move(labels)), std::move(cover)};
}

std::size_t count_connecting_edges(const ExtremalPartition& partition, std::size_t i, std::size_t j) {
    if (i >= j || j >= partition.k()) {
        throw ExtremalError("path pair must satisfy i < j < k");
    }
    return partition.part(i) + partition.part(j) - 1;
}

std::size_t connecting_edge_count(const Geometry& geom, const PathCover& cover, std::size_t i, std::size_t j) {
    return lambda_labels(geom, cover, i, j).size();
}

const char* to_string(ArcType type) {
    switch (type) {
        case ArcType::path:
            return "path";
        case ArcType::a:
            return "a";
        case ArcType::b:
            return "b";
        case ArcType::c:
            return "c";
        case ArcType::d:
            return "d";
        case ArcType::e:
            return "e";
        case ArcType::f:
            return "f";
    }
    return "?";
}

std::map<Arc, ArcType> classify_arcs(const Geometry& geom, const PathCover& cover) {
    const auto where = positions(geom, cover);
    for (std::size_t p = 1; p < cover.paths.size(); ++p) {
        if (path_length(cover, p) < path_length(cover, p - 1)) {
            throw ExtremalError("cover paths must be sorted by length");
        }
    }
    const InfluencingDigraph d(geom, successor_from_cover(geom, cover));
    std::map<Arc, ArcType> tags;
    for (const auto& arc : d.digraph().arcs()) {
        const Position from = where[arc.first];
        const Position to = where[arc.second];
        std::optional<ArcType> tag;
        if (from.path == to.path) {
            if (to.pos == from.pos + 1 || to.pos == from.pos + 2) {
                tag = ArcType::path;
            }
        } else if (from.path < to.path) {
            // v_{i,s} -> v_{j,t}
            const std::size_t ni = path_length(cover, from.path);
            const std::size_t nj = path_length(cover, to.path);
            const std::size_t s = from.pos;
            const std::size_t t = to.pos;
            if (s + 1 == t && t > 1 && t <= ni) {
                tag = ArcType::a;
            } else if (s == t && t + 1 <= ni) {
                tag = ArcType::c;
            } else if (ni > 1 && s == ni - 1 && t >= ni && t <= nj) {
                tag = ArcType::e;
            }
        } else {
            // v_{j,s} -> v_{i,t}
            const std::size_t ni = path_length(cover, to.path);
            const std::size_t nj = path_length(cover, from.path);
            const std::size_t s = from.pos;
            const std::size_t t = to.pos;
            if (s + 1 == t && t > 1 && t <= ni) {
                tag = ArcType::b;
            } else if (s + 2 == t && t - 1 > 1 && t - 1 <= ni - 1) {
                tag = ArcType::d;
            } else if (t == ni && s + 1 >= std::max<std::size_t>(ni, 2) && s + 1 <= nj) {
                tag = ArcType::f;
            }
        }
        if (!tag) {
            throw ExtremalError("arc " + geom.label(arc.first) + " -> " + geom.label(arc.second) +
                                " matches no construction rule");
        }
        tags.emplace(arc, *tag);
    }
    return tags;
}

bool lex_acyclicity_certificate(const Geometry& geom, const PathCover& cover) {
    const auto where = positions(geom, cover);
    const InfluencingDigraph d(geom, successor_from_cover(geom, cover));
    for (const auto& [x, y] : d.digraph().arcs()) {
        const Position from = where[x];
        const Position to = where[y];
        if (from.pos == path_length(cover, from.path)) {
            return false;
        }
        const bool increasing = std::pair{from.pos, from.path} < std::pair{to.pos, to.path};
        if (!increasing && to.pos != path_length(cover, to.path)) {
            return false;
        }
    }
    return true;
}

bool no_path_chords(const Geometry& geom, const PathCover& cover) {
    const auto where = positions(geom, cover);
    for (const auto& [u, v] : geom.graph().edges()) {
        if (where[u].path == where[v].path) {
            const std::size_t gap = where[u].pos > where[v].pos ? where[u].pos - where[v].pos : where[v].pos - where[u].pos;
            if (gap != 1) {
                return false;
            }
        }
    }
    return true;
}

bool no_crossing_edges(const Geometry& geom, const PathCover& cover) {
    const auto where = positions(geom, cover);
    // (path i, path j) with i < j  ->  list of (position on i, position on j)
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> between;
    for (const auto& [u, v] : geom.graph().edges()) {
        Position a = where[u];
        Position b = where[v];
        if (a.path == b.path) {
            continue;
        }
        if (a.path > b.path) {
            std::swap(a, b);
        }
        between[{a.path, b.path}].emplace_back(a.pos, b.pos);
    }
    for (auto& [pair, list] : between) {
        std::sort(list.begin(), list.end());
        // Largest j-position among edges with strictly smaller i-position.
        std::size_t prior_max = 0;
        std::size_t group_max = 0;
        for (std::size_t e = 0; e < list.size(); ++e) {
            if (e > 0 && list[e].first != list[e - 1].first) {
                prior_max = std::max(prior_max, group_max);
                group_max = 0;
            }
            if (list[e].second < prior_max) {
                return false;
            }
            group_max = std::max(group_max, list[e].second);
        }
    }
    return true;
}

std::vector<std::size_t> lambda_labels(const Geometry& geom, const PathCover& cover, std::size_t i, std::size_t j) {
    if (i == j || i >= cover.paths.size() || j >= cover.paths.size()) {
        throw ExtremalError("lambda labels need two distinct cover paths");
    }
    const auto where = positions(geom, cover);
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (Vertex u : cover.paths[i]) {
        for (Vertex w : geom.graph().neighbors(u)) {
            if (where[w].path == j) {
                ends.emplace_back(where[u].pos, where[w].pos);
            }
        }
    }
    std::sort(ends.begin(), ends.end());
    std::vector<std::size_t> labels;
    labels.reserve(ends.size());
    for (const auto& [a, b] : ends) {
        labels.push_back(a + b);
    }
    return labels;
}

}  // namespace flowscope
