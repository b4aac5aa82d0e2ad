#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pitchgraph/query/planner.hpp"

namespace pitchgraph::query {

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  struct Stats {
    std::size_t matched = 0;  // pattern bindings that passed WHERE
    std::chrono::nanoseconds duration{0};
    bool cross_product = false;
  } stats;

  // Graph that node and edge values refer to. Non-owning.
  const store::Graph* graph = nullptr;

  [[nodiscard]] bool empty() const { return rows.empty(); }
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

struct ExecOptions {
  PlanOptions plan;
  const Schema* schema = nullptr;
};

// Evaluates `q` against `g`. Rows come out in binding order unless ORDER
// BY is given. Safe to call concurrently on a frozen graph.
ResultTable execute(const Query& q, const store::Graph& g, const ExecOptions& options = {});
ResultTable execute(std::string_view cypher, const store::Graph& g, const ExecOptions& options = {});

// Independent brute-force evaluator for testing: enumerates bindings in
// pattern order by scanning every node and edge, with no index and no
// planning. Throws SizeGuardError above kReferenceNodeLimit nodes.
inline constexpr std::size_t kReferenceNodeLimit = 200;
ResultTable reference_execute(const Query& q, const store::Graph& g);

}  // namespace pitchgraph::query
