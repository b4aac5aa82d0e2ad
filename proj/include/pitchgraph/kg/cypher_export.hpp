#pragma once

#include <iosfwd>

#include "pitchgraph/kg/builder.hpp"

namespace pitchgraph::kg {

// Writes one openCypher statement per line: a CREATE for every node, then
// a MATCH ... CREATE for every edge, labels graph first. Nodes carry
// `_graph` and `_id` properties so edges can find their endpoints.
// Line count is |V| + |E| summed over both graphs.
void export_cypher(const BuildOutput& out, std::ostream& os);

}  // namespace pitchgraph::kg
