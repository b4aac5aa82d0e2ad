#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "pitchgraph/query/ast.hpp"

namespace pitchgraph::query {

// Variable lookup for expression evaluation. Returns null when unbound.
using Scope = std::function<const Value*(std::string_view var)>;
// Supplies the already-computed value of an aggregate call.
using AggregateValues = std::function<Value(const Aggregate&)>;

// Evaluates with three-valued logic: comparisons involving null or
// mismatched kinds yield null; AND/OR/NOT follow Kleene logic; a missing
// property is null. Throws SemanticError for unbound variables or an
// aggregate without `aggs`.
Value evaluate(const Expr& e, const store::Graph& g, const Scope& scope,
               const AggregateValues* aggs = nullptr);

// WHERE keeps a row only when the predicate is exactly true.
inline bool is_true(const Value& v) { return v.kind() == Value::Kind::Bool && v.as_bool(); }

}  // namespace pitchgraph::query
