#pragma once

#include <string_view>

#include "pitchgraph/query/ast.hpp"

namespace pitchgraph::query {

// Throws LexError or ParseError (with offset and the expected tokens).
Query parse(std::string_view source);

}  // namespace pitchgraph::query
