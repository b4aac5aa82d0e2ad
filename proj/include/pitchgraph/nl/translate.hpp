#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pitchgraph/kg/builder.hpp"
#include "pitchgraph/nl/entities.hpp"
#include "pitchgraph/nl/schema_card.hpp"

namespace pitchgraph::nl {

// Which graph a category is answered from.
enum class Route { Labels, Captions, CaptionsThenLabels };

struct Category {
  int number;  // 1..23
  std::string_view id;  // "Q1"
  std::string_view description;
  Route route;
};

const std::array<Category, 23>& categories();
const Category& category(int number);  // throws ValueError

// Cypher string literal with quotes and backslashes escaped.
std::string cypher_string(std::string_view s);

struct FewShot {
  std::string question;
  std::string query;
};

struct Translation {
  std::string query_text;
  int category = 0;  // 0 when the query came from a model
  Mentions mentions;
  std::vector<std::string> names;  // entity names placed in the query, in slot order
  int retry_count = 0;
};

// Template translation of a repaired question. Throws NoTemplateError,
// carrying the closest category, when no template fits or a required
// name is missing.
Translation translate_rule(std::string_view question, const kg::EntityDictionary& dict);

// Category a question would be routed to, or 0.
int classify(std::string_view question, const Mentions& m);

struct BackendInfo {
  std::string name;
  bool deterministic = true;
};

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  [[nodiscard]] virtual BackendInfo info() const = 0;
  [[nodiscard]] virtual Translation translate(std::string_view question, const SchemaCard& card,
                                              const std::vector<FewShot>& few_shots) const = 0;
};

class RuleBackend : public TranslationBackend {
 public:
  explicit RuleBackend(const kg::EntityDictionary& dict) : dict_(dict) {}
  [[nodiscard]] BackendInfo info() const override { return {"rule", true}; }
  [[nodiscard]] Translation translate(std::string_view question, const SchemaCard& card,
                                      const std::vector<FewShot>& few_shots) const override;

 private:
  const kg::EntityDictionary& dict_;
};

// Worked question/query pairs built from names that exist in the graphs.
std::vector<FewShot> make_few_shots(const SchemaCard& card, const kg::EntityDictionary& dict);

}  // namespace pitchgraph::nl
