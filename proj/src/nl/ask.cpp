#include "pitchgraph/nl/ask.hpp"

#include <chrono>
#include <set>

#include "pitchgraph/error.hpp"
#include "pitchgraph/query/parser.hpp"

namespace pitchgraph::nl {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Graph for a model-written query: the Labels graph when it names
// Event, the Captions graph otherwise.
kg::GraphKind route_by_labels(const query::Query& q) {
  for (const auto& path : q.match) {
    for (const auto& node : path.nodes) {
      if (node.label == "Event") return kg::GraphKind::Labels;
    }
  }
  return kg::GraphKind::Captions;
}

AskError error_of(const Error& e, const char* stage) {
  AskError err{e.kind(), e.what(), stage, {}};
  if (const auto* nt = dynamic_cast<const NoTemplateError*>(&e)) err.nearest_category = nt->nearest_category();
  return err;
}

std::string failure_answer(const AskError& e) {
  if (e.kind == "NoTemplateError") {
    std::string s = "No translation is available for this question: " + e.message + ".";
    if (!e.nearest_category.empty()) s += " The closest supported question type is " + e.nearest_category + ".";
    return s;
  }
  return "The question could not be answered (" + e.kind + "): " + e.message;
}

}  // namespace

Pipeline::Pipeline(const kg::BuildOutput& graphs, AskConfig config)
    : graphs_(graphs), config_(std::move(config)), card_(SchemaCard::of(graphs)) {
  few_shots_ = make_few_shots(card_, graphs_.entity_dict);
  if (config_.llm) client_ = std::make_unique<LlmClient>(*config_.llm, config_.trace);
  if (config_.backend == BackendKind::Llm && !client_) {
    throw ValueError("the llm backend needs an llm configuration");
  }
}

Pipeline::~Pipeline() = default;

AskOutcome Pipeline::ask(std::string_view question) const {
  const auto t_start = Clock::now();
  AskOutcome out;
  out.question = std::string(question);

  auto t0 = Clock::now();
  auto repaired = repair_entities(question, graphs_.entity_dict);
  out.repaired_question = repaired.text;
  out.repairs = std::move(repaired.repairs);
  out.unresolved = std::move(repaired.unresolved);
  out.timings.repair_ms = ms_since(t0);

  // Translation.
  t0 = Clock::now();
  Translation tr;
  std::optional<query::Query> parsed;
  try {
    if (config_.backend == BackendKind::Rule) {
      out.backend = "rule";
      try {
        tr = translate_rule(out.repaired_question, graphs_.entity_dict);
      } catch (const NoTemplateError&) {
        if (!client_) throw;
        out.backend = "rule+llm";
        tr = LlmBackend(*client_).translate(out.repaired_question, card_, few_shots_);
        tr.mentions = find_mentions(out.repaired_question, graphs_.entity_dict);
      }
    } else {
      out.backend = "llm";
      tr = LlmBackend(*client_).translate(out.repaired_question, card_, few_shots_);
      tr.mentions = find_mentions(out.repaired_question, graphs_.entity_dict);
    }
    out.category = tr.category;
    out.query_text = tr.query_text;
    out.retry_count = tr.retry_count;
    parsed = query::parse(tr.query_text);
  } catch (const Error& e) {
    out.error = error_of(e, "translate");
  }
  out.timings.translate_ms = ms_since(t0);

  // Execution, with the Captions-then-Labels fallback.
  t0 = Clock::now();
  if (!out.error) {
    try {
      std::vector<kg::GraphKind> order;
      if (config_.graph) {
        order = {*config_.graph};
      } else if (tr.category == 0) {
        order = {route_by_labels(*parsed)};
      } else {
        switch (category(tr.category).route) {
          case Route::Labels: order = {kg::GraphKind::Labels}; break;
          case Route::Captions: order = {kg::GraphKind::Captions}; break;
          case Route::CaptionsThenLabels: order = {kg::GraphKind::Captions, kg::GraphKind::Labels}; break;
        }
      }
      for (auto kind : order) {
        out.graph = kind;
        out.context = query::execute(*parsed, graphs_.graph(kind));
        if (!out.context.empty()) break;
      }
    } catch (const Error& e) {
      out.error = error_of(e, "execute");
    }
  }
  out.timings.execute_ms = ms_since(t0);

  t0 = Clock::now();
  if (out.error) {
    out.answer = failure_answer(*out.error);
  } else {
    try {
      if (config_.llm_synthesis && client_) {
        out.answer = synthesize_llm(*client_, out.repaired_question, out.context.to_text());
      } else {
        out.answer = synthesize(out.repaired_question, tr, out.context);
      }
    } catch (const Error& e) {
      out.error = error_of(e, "synthesize");
      out.answer = failure_answer(*out.error);
    }
  }
  out.timings.synthesize_ms = ms_since(t0);
  out.timings.total_ms = ms_since(t_start);
  return out;
}

AskOutcome ask(std::string_view question, const kg::BuildOutput& graphs, const AskConfig& config) {
  return Pipeline(graphs, config).ask(question);
}

std::string AskOutcome::to_text() const {
  std::string s = "Question: " + question + "\n";
  if (repaired_question != question) s += "Repaired: " + repaired_question + "\n";
  if (!unresolved.empty()) {
    s += "Unrecognised names:";
    for (const auto& u : unresolved) s += " [" + u + "]";
    s += "\n";
  }
  s += "\nGenerated Cypher:\n" + (query_text.empty() ? std::string("(none)") : query_text) + "\n";
  if (graph) s += "Graph: " + std::string(kg::to_string(*graph)) + "\n";
  s += "\nFull Context:\n";
  s += error && error->stage != "synthesize" ? std::string("(none)\n") : context.to_text();
  if (!s.empty() && s.back() != '\n') s += '\n';
  s += "\nResult:\n" + answer + "\n";
  return s;
}

nlohmann::json AskOutcome::to_json() const {
  nlohmann::json j;
  j["question"] = question;
  j["repaired_question"] = repaired_question;
  j["repairs"] = nlohmann::json::array();
  for (const auto& r : repairs) {
    j["repairs"].push_back({{"offset", r.offset},
                            {"length", r.length},
                            {"original", r.original},
                            {"replacement", r.replacement},
                            {"distance", r.distance},
                            {"ambiguous", r.ambiguous}});
  }
  j["unresolved"] = unresolved;
  j["backend"] = backend;
  j["category"] = category == 0 ? nlohmann::json(nullptr) : nlohmann::json("Q" + std::to_string(category));
  j["query"] = query_text;
  j["graph"] = graph ? nlohmann::json(std::string(kg::to_string(*graph))) : nlohmann::json(nullptr);
  j["context"] = context.to_json();
  j["answer"] = answer;
  j["retry_count"] = retry_count;
  j["timings_ms"] = {{"repair", timings.repair_ms},
                     {"translate", timings.translate_ms},
                     {"execute", timings.execute_ms},
                     {"synthesize", timings.synthesize_ms},
                     {"total", timings.total_ms}};
  if (error) {
    j["error"] = {{"kind", error->kind}, {"message", error->message}, {"stage", error->stage}};
    if (!error->nearest_category.empty()) j["error"]["nearest_category"] = error->nearest_category;
  } else {
    j["error"] = nullptr;
  }
  return j;
}

}  // namespace pitchgraph::nl
