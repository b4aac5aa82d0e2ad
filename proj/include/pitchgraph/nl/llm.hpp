#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pitchgraph/nl/translate.hpp"

namespace pitchgraph::nl {

// Receives every prompt and reply verbatim when tracing is on.
using Trace = std::function<void(std::string_view what, std::string_view text)>;

struct LlmConfig {
  std::string base_url;  // "http://host:port/v1"; "/chat/completions" is appended
  std::string model;
  double temperature = 0.0;
  int retry_cap = 1;  // extra attempts after a reply that fails to parse
  std::string api_key_env = "PITCHGRAPH_LLM_API_KEY";
  std::size_t token_budget = 0;  // total tokens per client; 0 is unlimited
  int timeout_seconds = 60;
  int max_in_flight = 4;

  static LlmConfig from_json(const nlohmann::json& j);
};

struct ChatMessage {
  std::string role;
  std::string content;
};

class LlmClient {
 public:
  explicit LlmClient(LlmConfig config, Trace trace = {});
  ~LlmClient();
  LlmClient(const LlmClient&) = delete;
  LlmClient& operator=(const LlmClient&) = delete;

  // One chat completion. Throws TransportError for connection failures and
  // non-2xx replies, BudgetError once the token budget is spent.
  std::string complete(const std::vector<ChatMessage>& messages) const;

  [[nodiscard]] const LlmConfig& config() const { return config_; }
  [[nodiscard]] std::size_t tokens_used() const { return tokens_used_.load(); }
  void trace(std::string_view what, std::string_view text) const;

 private:
  struct Limiter;
  LlmConfig config_;
  Trace trace_;
  std::unique_ptr<Limiter> limiter_;
  mutable std::atomic<std::size_t> tokens_used_{0};
};

// Body of the first fenced code block; throws ExtractionError when the
// reply has none.
std::string extract_code_block(std::string_view reply);

class LlmBackend : public TranslationBackend {
 public:
  explicit LlmBackend(const LlmClient& client) : client_(client) {}
  [[nodiscard]] BackendInfo info() const override { return {"llm:" + client_.config().model, false}; }
  // Parses the extracted query; on a parse error the message is sent back
  // and the model asked again, up to retry_cap times.
  [[nodiscard]] Translation translate(std::string_view question, const SchemaCard& card,
                                      const std::vector<FewShot>& few_shots) const override;

 private:
  const LlmClient& client_;
};

// Prompt used for translation; exposed for tracing and tests.
std::vector<ChatMessage> translation_prompt(std::string_view question, const SchemaCard& card,
                                            const std::vector<FewShot>& few_shots);

// Free-form answer written by the model from the question and the table.
std::string synthesize_llm(const LlmClient& client, std::string_view question, std::string_view table_text);

}  // namespace pitchgraph::nl
