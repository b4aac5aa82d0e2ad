#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pitchgraph/query/ast.hpp"

namespace pitchgraph::query {

// Names a query may mention. Semantic checks reject anything outside it.
struct Schema {
  std::set<std::string> labels;
  std::set<std::string> edge_types;
  std::set<std::string> property_keys;

  static Schema of(const store::Graph& g);
  // Fixed vocabulary of the two knowledge graphs.
  static Schema knowledge_graph();
  [[nodiscard]] Schema merged(const Schema& other) const;
};

// Throws SemanticError on unknown labels, relationship types or property
// keys (with a suggestion when one is close), unbound or conflicting
// variables, aggregates in WHERE or nested aggregates, duplicate column
// names, and ORDER BY keys that cannot be resolved after aggregation or
// DISTINCT.
void check_semantics(const Query& q, const Schema& schema);

struct PlanOptions {
  // Pick the least selective start node and the last available expansion.
  // Exists so tests can show the plan never changes the result.
  bool worst_order = false;
};

struct NodeSlot {
  std::string var;  // synthesized for anonymous nodes
  bool named = false;
  std::vector<std::string> labels;  // every label the variable must carry
  std::vector<std::pair<std::string, Value>> props;
};

struct RelSlot {
  std::string var;
  bool named = false;
  std::string type;
  RelDir dir = RelDir::Right;
  int left = 0;  // node slot written before the relationship
  int right = 0;
};

struct PlanStep {
  enum class Kind { Scan, Expand } kind = Kind::Scan;
  int node = -1;  // Scan: node to bind. Expand: node reached.
  int rel = -1;   // Expand only
  int from = -1;  // Expand only: bound node the expansion starts at
  // Scan probe: index key used to seed candidates, if any.
  std::optional<std::string> probe_key;
  std::size_t estimate = 0;
  std::vector<ExprPtr> filters;  // WHERE conjuncts fully bound after this step
};

struct Plan {
  std::vector<NodeSlot> nodes;
  std::vector<RelSlot> rels;
  std::vector<PlanStep> steps;
  bool cross_product = false;  // disconnected pattern parts

  [[nodiscard]] std::string explain() const;
};

// Runs check_semantics against `schema` (defaults to the graph's own
// schema merged with the knowledge-graph vocabulary), then orders the
// pattern.
Plan plan_query(const Query& q, const store::Graph& g, const Schema* schema = nullptr,
                PlanOptions options = {});

// Top-level AND operands.
std::vector<ExprPtr> conjuncts(const ExprPtr& where);

}  // namespace pitchgraph::query
