#include "flowscope/flow_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace flowscope {

using nlohmann::json;

CausalFlow load_flow(std::string_view text, const Geometry& geom) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FlowError(std::string("malformed flow document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("successor") || !doc.contains("ranks") || !doc["successor"].is_object() ||
        !doc["ranks"].is_object()) {
        throw FlowError("flow document needs \"successor\" and \"ranks\" objects");
    }
    const std::size_t n = geom.vertex_count();
    CausalFlow flow{SuccessorFunction(n), std::vector<std::size_t>(n, 0)};
    std::vector<char> ranked(n, 0);
    for (const auto& [from, to] : doc["successor"].items()) {
        if (!to.is_string()) {
            throw FlowError("successor." + from + ": expected a vertex label");
        }
        flow.successor.assign(geom.vertex_of(from), geom.vertex_of(to.get<std::string>()));
    }
    for (const auto& [label, rank] : doc["ranks"].items()) {
        if (!rank.is_number_unsigned()) {
            throw FlowError("ranks." + label + ": expected a non-negative integer");
        }
        const Vertex v = geom.vertex_of(label);
        flow.ranks[v] = rank.get<std::size_t>();
        ranked[v] = 1;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!ranked[v]) {
            throw FlowError("ranks: missing rank for " + geom.label(v));
        }
    }
    return flow;
}

CausalFlow load_flow_file(const std::string& path, const Geometry& geom) {
    std::ifstream in(path);
    if (!in) {
        throw FlowError("cannot read flow file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_flow(buf.str(), geom);
}

std::string serialize_flow(const Geometry& geom, const CausalFlow& flow) {
    json doc;
    doc["successor"] = json::object();
    doc["ranks"] = json::object();
    for (Vertex v = 0; v < geom.vertex_count(); ++v) {
        if (flow.successor.defined(v)) {
            doc["successor"][geom.label(v)] = geom.label(flow.successor(v));
        }
        doc["ranks"][geom.label(v)] = flow.ranks.at(v);
    }
    doc["paths"] = json::array();
    if (auto cover = cover_from_successor(geom, flow.successor)) {
        for (const auto& path : cover->paths) {
            json labels = json::array();
            for (Vertex v : path) {
                labels.push_back(geom.label(v));
            }
            doc["paths"].push_back(std::move(labels));
        }
    }
    return doc.dump() + "\n";
}

}  // namespace flowscope
