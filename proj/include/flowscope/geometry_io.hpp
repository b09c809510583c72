#pragma once

#include <string>
#include <string_view>

#include "flowscope/graph.hpp"

namespace flowscope {

/// Parses a geometry document:
///
///     {"vertices": ["a", "b"], "edges": [["a", "b"]], "inputs": ["a"], "outputs": ["b"]}
///
/// Vertices receive dense ids in file order; labels are kept on the Geometry.
/// Throws GeometryError naming the offending line or field.
Geometry load_geometry(std::string_view text);

/// Reads and parses a geometry file from disk.
Geometry load_geometry_file(const std::string& path);

/// Emits the canonical form: keys in the order vertices, edges, inputs,
/// outputs; every label list sorted; each edge written with its smaller label
/// first and the edge list sorted. Output is byte-stable for equal geometries.
std::string serialize_geometry(const Geometry& geom);

}  // namespace flowscope
