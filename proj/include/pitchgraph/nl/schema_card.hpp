#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pitchgraph/kg/builder.hpp"

namespace pitchgraph::nl {

// Summary of both graphs used to ground translation: labels with their
// attributes, edge types with endpoint labels, and sample values.
struct SchemaCard {
  struct EdgeShape {
    std::string type;
    std::set<std::string> from;
    std::set<std::string> to;
    std::set<std::string> properties;
  };
  struct GraphPart {
    std::map<std::string, std::vector<std::string>> labels;  // label -> property keys
    std::vector<EdgeShape> edges;
  };

  GraphPart labels_kg;
  GraphPart captions_kg;
  // label -> a few distinct names, plus "season" and "league" -> values.
  std::map<std::string, std::vector<std::string>> samples;

  static SchemaCard of(const kg::BuildOutput& graphs, std::size_t samples_per_label = 5);

  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

}  // namespace pitchgraph::nl
