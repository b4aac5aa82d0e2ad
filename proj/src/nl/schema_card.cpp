#include "pitchgraph/nl/schema_card.hpp"

#include <algorithm>
#include <sstream>

namespace pitchgraph::nl {

namespace {

SchemaCard::GraphPart describe(const store::Graph& g) {
  SchemaCard::GraphPart part;
  for (const auto& label : g.labels()) part.labels[label] = g.property_keys(label);
  std::map<std::string, SchemaCard::EdgeShape> shapes;
  for (const auto& e : g.edges()) {
    auto& s = shapes[e.type];
    s.type = e.type;
    s.from.insert(g.node(e.src).label);
    s.to.insert(g.node(e.dst).label);
    for (const auto& [k, v] : e.props) s.properties.insert(k);
  }
  for (auto& [type, s] : shapes) part.edges.push_back(std::move(s));
  return part;
}

void add_samples(std::vector<std::string>& out, const store::Graph& g, const std::string& label,
                 const std::string& key, std::size_t limit) {
  for (auto id : g.nodes_by_label_prop(label)) {
    if (out.size() >= limit) return;
    const auto* v = g.node(id).prop(key);
    if (!v || !v->is_text()) continue;
    if (std::find(out.begin(), out.end(), v->as_text()) == out.end()) out.push_back(v->as_text());
  }
}

std::string join(const std::set<std::string>& xs, const char* sep) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : sep) + x;
  return s;
}

void part_text(std::ostringstream& os, const char* title, const SchemaCard::GraphPart& p) {
  os << title << "\n";
  for (const auto& [label, keys] : p.labels) {
    os << "  (:" << label << ")";
    if (!keys.empty()) {
      os << " {";
      for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? ", " : "") << keys[i];
      os << "}";
    }
    os << "\n";
  }
  for (const auto& e : p.edges) {
    os << "  (:" << join(e.from, "|") << ")-[:" << e.type;
    if (!e.properties.empty()) os << " {" << join(e.properties, ", ") << "}";
    os << "]->(:" << join(e.to, "|") << ")\n";
  }
}

nlohmann::json part_json(const SchemaCard::GraphPart& p) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : p.edges)
    edges.push_back({{"type", e.type}, {"from", e.from}, {"to", e.to}, {"properties", e.properties}});
  return {{"labels", p.labels}, {"edges", edges}};
}

}  // namespace

SchemaCard SchemaCard::of(const kg::BuildOutput& graphs, std::size_t samples_per_label) {
  SchemaCard card;
  card.labels_kg = describe(graphs.labels_kg);
  card.captions_kg = describe(graphs.captions_kg);
  for (const auto* g : {&graphs.captions_kg, &graphs.labels_kg}) {
    for (const char* label : {"Team", "Player", "Event"}) add_samples(card.samples[label], *g, label, "name", samples_per_label);
    add_samples(card.samples["season"], *g, "Game", "season", samples_per_label);
    add_samples(card.samples["league"], *g, "Game", "league", samples_per_label);
  }
  for (auto it = card.samples.begin(); it != card.samples.end();) {
    if (it->second.empty()) {
      it = card.samples.erase(it);
    } else {
      ++it;
    }
  }
  return card;
}

std::string SchemaCard::to_text() const {
  std::ostringstream os;
  part_text(os, "Labels graph (games, teams, match events):", labels_kg);
  part_text(os, "Captions graph (games, teams, players, facts):", captions_kg);
  os << "Sample values:\n";
  for (const auto& [what, names] : samples) {
    os << "  " << what << ": ";
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
    os << "\n";
  }
  return os.str();
}

nlohmann::json SchemaCard::to_json() const {
  return {{"labels_graph", part_json(labels_kg)}, {"captions_graph", part_json(captions_kg)}, {"samples", samples}};
}

}  // namespace pitchgraph::nl
