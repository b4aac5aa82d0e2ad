#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pitchgraph/kg/builder.hpp"
#include "pitchgraph/nl/llm.hpp"
#include "pitchgraph/nl/synthesize.hpp"

namespace pitchgraph::nl {

enum class BackendKind { Rule, Llm };

struct AskConfig {
  BackendKind backend = BackendKind::Rule;
  // With the rule backend, questions no template fits go to the model
  // when one is configured.
  std::optional<LlmConfig> llm;
  bool llm_synthesis = false;  // model-written answers instead of templates
  std::optional<kg::GraphKind> graph;  // overrides routing
  Trace trace;
};

struct AskTimings {
  double repair_ms = 0;
  double translate_ms = 0;
  double execute_ms = 0;
  double synthesize_ms = 0;
  double total_ms = 0;
};

struct AskError {
  std::string kind;  // error class name
  std::string message;
  std::string stage;  // "translate", "execute", "synthesize"
  std::string nearest_category;
};

struct AskOutcome {
  std::string question;
  std::string repaired_question;
  std::vector<Repair> repairs;
  std::vector<std::string> unresolved;
  std::string backend;
  int category = 0;
  std::string query_text;
  std::optional<kg::GraphKind> graph;
  query::ResultTable context;
  std::string answer;
  int retry_count = 0;
  AskTimings timings;
  std::optional<AskError> error;

  [[nodiscard]] bool ok() const { return !error.has_value(); }
  // Question, generated query, full context table and answer.
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

// Holds everything that does not change between questions. ask() is const
// and may be called from several threads at once.
class Pipeline {
 public:
  Pipeline(const kg::BuildOutput& graphs, AskConfig config = {});
  ~Pipeline();

  [[nodiscard]] AskOutcome ask(std::string_view question) const;
  [[nodiscard]] const SchemaCard& schema_card() const { return card_; }
  [[nodiscard]] const std::vector<FewShot>& few_shots() const { return few_shots_; }
  [[nodiscard]] const AskConfig& config() const { return config_; }
  [[nodiscard]] const kg::BuildOutput& graphs() const { return graphs_; }

 private:
  const kg::BuildOutput& graphs_;
  AskConfig config_;
  SchemaCard card_;
  std::vector<FewShot> few_shots_;
  std::unique_ptr<LlmClient> client_;
};

// One-off convenience wrapper around Pipeline.
AskOutcome ask(std::string_view question, const kg::BuildOutput& graphs, const AskConfig& config = {});

}  // namespace pitchgraph::nl
