#include "flowscope/geometry_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace flowscope {

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const json& require_array(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw GeometryError(std::string("missing field \"") + key + "\"");
    }
    if (!it->is_array()) {
        throw GeometryError(std::string("field \"") + key + "\" must be a list");
    }
    return *it;
}

std::string require_label(const json& node, const std::string& where) {
    if (!node.is_string()) {
        throw GeometryError(where + ": expected a vertex label string");
    }
    return node.get<std::string>();
}

}  // namespace

Geometry load_geometry(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw GeometryError("malformed geometry at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw GeometryError("geometry document must be an object");
    }

    std::vector<std::string> labels;
    std::map<std::string, Vertex> ids;
    const json& vertices = require_array(doc, "vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        auto label = require_label(vertices[i], "vertices[" + std::to_string(i) + "]");
        if (!ids.emplace(label, static_cast<Vertex>(labels.size())).second) {
            throw GeometryError("vertices[" + std::to_string(i) + "]: duplicate vertex \"" + label + "\"");
        }
        labels.push_back(std::move(label));
    }

    auto resolve = [&](const json& node, const std::string& where) {
        auto label = require_label(node, where);
        auto it = ids.find(label);
        if (it == ids.end()) {
            throw GeometryError(where + ": \"" + label + "\" is not among the vertices");
        }
        return it->second;
    };

    std::vector<Edge> edges;
    std::map<Edge, std::size_t> seen;
    const json& edge_list = require_array(doc, "edges");
    for (std::size_t i = 0; i < edge_list.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const json& e = edge_list[i];
        if (!e.is_array() || e.size() != 2) {
            throw GeometryError(where + ": an edge is a list of exactly two labels");
        }
        Vertex u = resolve(e[0], where + "[0]");
        Vertex v = resolve(e[1], where + "[1]");
        if (u == v) {
            throw GeometryError(where + ": self-loop at \"" + labels[u] + "\"");
        }
        Edge key{std::min(u, v), std::max(u, v)};
        if (auto [it, fresh] = seen.emplace(key, i); !fresh) {
            throw GeometryError(where + ": duplicate edge \"" + labels[u] + "\"-\"" + labels[v] + "\" (first at edges[" +
                                std::to_string(it->second) + "])");
        }
        edges.push_back(key);
    }

    auto read_set = [&](const char* key) {
        std::vector<Vertex> out;
        const json& list = require_array(doc, key);
        for (std::size_t i = 0; i < list.size(); ++i) {
            out.push_back(resolve(list[i], std::string(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    };
    auto inputs = read_set("inputs");
    auto outputs = read_set("outputs");

    Graph graph(labels.size(), edges);
    return Geometry(std::move(graph), std::move(inputs), std::move(outputs), std::move(labels));
}

Geometry load_geometry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw GeometryError("cannot read geometry file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_geometry(buf.str());
}

std::string serialize_geometry(const Geometry& geom) {
    auto sorted_labels = [&](const std::vector<Vertex>& set) {
        std::vector<std::string> out;
        out.reserve(set.size());
        for (Vertex v : set) {
            out.push_back(geom.label(v));
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<Vertex> all(geom.vertex_count());
    for (Vertex v = 0; v < all.size(); ++v) {
        all[v] = v;
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : geom.graph().edges()) {
        auto a = geom.label(u);
        auto b = geom.label(v);
        if (b < a) {
            std::swap(a, b);
        }
        edges.emplace_back(std::move(a), std::move(b));
    }
    std::sort(edges.begin(), edges.end());

    nlohmann::ordered_json doc;
    doc["vertices"] = sorted_labels(all);
    doc["edges"] = nlohmann::ordered_json::array();
    for (auto& [a, b] : edges) {
        doc["edges"].push_back({a, b});
    }
    doc["inputs"] = sorted_labels(geom.inputs());
    doc["outputs"] = sorted_labels(geom.outputs());
    return doc.dump() + "\n";
}

}  // namespace flowscope
