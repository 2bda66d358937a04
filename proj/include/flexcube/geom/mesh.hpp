#pragma once

#include <string>
#include <vector>

#include "flexcube/geom/polytope.hpp"

namespace flexcube::geom {

// OFF mesh of a 3-D polytope: lexicographically sorted vertices, facets
// fan-triangulated. Degenerate sets export with however many faces they
// genuinely have (a segment or point has none). Deterministic output.
std::string to_off(const Polytope& p);

// Structured-text record {vertices, facets, axis_labels, units} as JSON.
std::string to_mesh_json(const Polytope& p,
                         const std::vector<std::string>& axis_labels,
                         const std::vector<std::string>& units);

void write_file(const std::string& path, const std::string& content);

}  // namespace flexcube::geom
