#pragma once

#include <string>

#include "gcl/diagram.hpp"
#include "gcl/filling.hpp"

namespace gcl {

// Fixed-width ASCII picture: '+' vertices, '#' present edges, blanks for
// edges the subset omits.  Rows run top-down.
std::string render_edges(const LadderDiagram& d, const EdgeSet& edges);

std::string render_diagram(const LadderDiagram& d);

// Face walls plus one letter per block, repeated over the boxes it covers.
std::string render_filling(const LadderDiagram& d, const LadderFace& f, const LBlockFilling& fill);

}  // namespace gcl
