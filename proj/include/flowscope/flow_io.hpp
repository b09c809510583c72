#pragma once

#include <string>
#include <string_view>

#include "flowscope/flow.hpp"

namespace flowscope {

/// Flow documents name vertices by label:
///
///     {"paths": [["a", "b"]], "ranks": {"a": 0, "b": 1}, "successor": {"a": "b"}}
///
/// "paths" is informational and ignored on load. The loaded flow is not
/// verified; pass it to verify_flow.
CausalFlow load_flow(std::string_view text, const Geometry& geom);
CausalFlow load_flow_file(const std::string& path, const Geometry& geom);

/// Keys sorted; paths are the orbits of the successor function.
std::string serialize_flow(const Geometry& geom, const CausalFlow& flow);

}  // namespace flowscope
