#pragma once

#include <string>
#include <string_view>

#include "pitchgraph/nl/translate.hpp"
#include "pitchgraph/query/executor.hpp"

namespace pitchgraph::nl {

// Deterministic answer sentence for a translated question and its result
// table. Every value in the sentence is copied from the table or from the
// names in `t`; an empty table says so plainly.
std::string synthesize(std::string_view question, const Translation& t, const query::ResultTable& table);

}  // namespace pitchgraph::nl
