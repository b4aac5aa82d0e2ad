#include "pitchgraph/nl/llm.hpp"

#include <condition_variable>
#include <cstdlib>
#include <mutex>

#include <httplib.h>

#include "pitchgraph/error.hpp"
#include "pitchgraph/query/parser.hpp"

namespace pitchgraph::nl {

struct LlmClient::Limiter {
  std::mutex mu;
  std::condition_variable cv;
  int free;
  explicit Limiter(int n) : free(std::max(1, n)) {}
  void acquire() {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return free > 0; });
    --free;
  }
  void release() {
    {
      std::lock_guard lock(mu);
      ++free;
    }
    cv.notify_one();
  }
};

LlmConfig LlmConfig::from_json(const nlohmann::json& j) {
  LlmConfig c;
  c.base_url = j.value("base_url", c.base_url);
  c.model = j.value("model", c.model);
  c.temperature = j.value("temperature", c.temperature);
  c.retry_cap = j.value("retry_cap", c.retry_cap);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  c.token_budget = j.value("token_budget", c.token_budget);
  c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  return c;
}

LlmClient::LlmClient(LlmConfig config, Trace trace)
    : config_(std::move(config)), trace_(std::move(trace)), limiter_(std::make_unique<Limiter>(config_.max_in_flight)) {}

LlmClient::~LlmClient() = default;

void LlmClient::trace(std::string_view what, std::string_view text) const {
  if (trace_) trace_(what, text);
}

std::string LlmClient::complete(const std::vector<ChatMessage>& messages) const {
  if (config_.token_budget != 0 && tokens_used_.load() >= config_.token_budget) {
    throw BudgetError("token budget of " + std::to_string(config_.token_budget) + " exhausted");
  }
  // Split "scheme://host:port/prefix".
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("bad base_url: " + config_.base_url);
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  const std::string origin = config_.base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : config_.base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  nlohmann::json body = {{"model", config_.model}, {"temperature", config_.temperature}};
  body["messages"] = nlohmann::json::array();
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  trace("request", body.dump(2));

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  limiter_->acquire();
  httplib::Result res;
  try {
    httplib::Client cli(origin);
    cli.set_connection_timeout(config_.timeout_seconds, 0);
    cli.set_read_timeout(config_.timeout_seconds, 0);
    res = cli.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
  } catch (...) {
    limiter_->release();
    throw;
  }
  limiter_->release();

  if (!res) throw TransportError("request to " + origin + " failed: " + httplib::to_string(res.error()));
  trace("response", res->body);
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("server answered " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
    if (reply.contains("usage")) tokens_used_ += reply["usage"].value("total_tokens", std::size_t{0});
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed completion: ") + e.what());
  }
}

std::string extract_code_block(std::string_view reply) {
  const auto open = reply.find("```");
  if (open == std::string_view::npos) throw ExtractionError("reply has no fenced code block");
  auto start = reply.find('\n', open + 3);
  if (start == std::string_view::npos) throw ExtractionError("unterminated code block");
  ++start;
  const auto close = reply.find("```", start);
  if (close == std::string_view::npos) throw ExtractionError("unterminated code block");
  std::string body(reply.substr(start, close - start));
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
  std::size_t b = 0;
  while (b < body.size() && std::isspace(static_cast<unsigned char>(body[b]))) ++b;
  body.erase(0, b);
  if (!body.empty() && body.back() == ';') body.pop_back();
  return body;
}

std::vector<ChatMessage> translation_prompt(std::string_view question, const SchemaCard& card,
                                            const std::vector<FewShot>& few_shots) {
  std::string system =
      "You write Cypher queries over two soccer knowledge graphs. Use only the labels, edge types and "
      "properties listed below. Answer with one query inside a ```cypher fenced block and nothing else.\n"
      "Supported clauses: MATCH, WHERE, RETURN [DISTINCT], ORDER BY, SKIP, LIMIT, with count, sum, avg, "
      "min, max and collect.\n\n" +
      card.to_text();
  std::vector<ChatMessage> msgs{{"system", std::move(system)}};
  for (const auto& fs : few_shots) {
    msgs.push_back({"user", fs.question});
    msgs.push_back({"assistant", "```cypher\n" + fs.query + "\n```"});
  }
  msgs.push_back({"user", std::string(question)});
  return msgs;
}

Translation LlmBackend::translate(std::string_view question, const SchemaCard& card,
                                  const std::vector<FewShot>& few_shots) const {
  auto msgs = translation_prompt(question, card, few_shots);
  Translation t;
  for (int attempt = 0;; ++attempt) {
    const std::string reply = client_.complete(msgs);
    const std::string code = extract_code_block(reply);
    try {
      (void)query::parse(code);
      t.query_text = code;
      t.retry_count = attempt;
      return t;
    } catch (const Error& e) {
      if (attempt >= client_.config().retry_cap) throw;
      msgs.push_back({"assistant", reply});
      msgs.push_back({"user", std::string("That query does not parse: ") + e.what() +
                                  ". Reply with a corrected query in a ```cypher block."});
    }
  }
}

std::string synthesize_llm(const LlmClient& client, std::string_view question, std::string_view table_text) {
  std::vector<ChatMessage> msgs{
      {"system",
       "Answer the question in one or two sentences using only the values in the result table. "
       "If the table is empty, say that no matching data was found."},
      {"user", "Question: " + std::string(question) + "\n\nResult table:\n" + std::string(table_text)}};
  return client.complete(msgs);
}

}  // namespace pitchgraph::nl
