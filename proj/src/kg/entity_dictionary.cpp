#include "pitchgraph/kg/entity_dictionary.hpp"

#include <algorithm>
#include <array>

#include "pitchgraph/error.hpp"
#include "pitchgraph/ingest/parse.hpp"

namespace pitchgraph::kg {

namespace {
constexpr std::array<std::pair<EntityKind, std::string_view>, 6> kKindNames{{
    {EntityKind::Team, "team"},
    {EntityKind::Player, "player"},
    {EntityKind::League, "league"},
    {EntityKind::Referee, "referee"},
    {EntityKind::Venue, "venue"},
    {EntityKind::Coach, "coach"},
}};
}  // namespace

std::string_view to_string(GraphKind kind) { return kind == GraphKind::Labels ? "labels" : "captions"; }

std::string_view to_string(EntityKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<EntityKind> entity_kind_from_string(std::string_view s) {
  for (const auto& [k, name] : kKindNames)
    if (name == s) return k;
  return std::nullopt;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string nearest_name(std::string_view word, const std::vector<std::string>& candidates,
                         std::size_t max_distance) {
  const std::string w = ascii_lower(word);
  std::string best;
  std::size_t best_d = max_distance + 1;
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(w, ascii_lower(c));
    if (d < best_d || (d == best_d && !best.empty() && c < best)) {
      best = c;
      best_d = d;
    }
  }
  return best_d <= max_distance ? best : std::string();
}

const std::string& EntityDictionary::add(std::string_view name, EntityKind kind, GraphKind graph,
                                         store::NodeId node) {
  const std::string normalized = ingest::normalize_name(name);
  auto [it, inserted] = entries_.try_emplace(ascii_lower(normalized));
  Entry& e = it->second;
  if (inserted) e.name = normalized;
  e.kinds.insert(kind);
  (graph == GraphKind::Labels ? e.labels_nodes : e.captions_nodes).insert(node);
  return e.name;
}

std::string EntityDictionary::canonical(std::string_view name) const {
  const std::string normalized = ingest::normalize_name(name);
  if (const Entry* e = find(normalized)) return e->name;
  return normalized;
}

const EntityDictionary::Entry* EntityDictionary::find(std::string_view name) const {
  auto it = entries_.find(ascii_lower(name));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const EntityDictionary::Entry*> EntityDictionary::entries() const {
  std::vector<const Entry*> out;
  out.reserve(entries_.size());
  for (const auto& [key, e] : entries_) out.push_back(&e);
  return out;
}

std::vector<std::string> EntityDictionary::names(EntityKind kind) const {
  std::vector<std::string> out;
  for (const auto& [key, e] : entries_)
    if (e.kinds.contains(kind)) out.push_back(e.name);
  return out;
}

nlohmann::json EntityDictionary::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, e] : entries_) {
    nlohmann::json kinds = nlohmann::json::array();
    for (auto k : e.kinds) kinds.push_back(std::string(to_string(k)));
    nlohmann::json labels = nlohmann::json::array();
    for (auto id : e.labels_nodes) labels.push_back(store::raw(id));
    nlohmann::json captions = nlohmann::json::array();
    for (auto id : e.captions_nodes) captions.push_back(store::raw(id));
    arr.push_back({{"name", e.name}, {"kinds", kinds}, {"labels_nodes", labels}, {"captions_nodes", captions}});
  }
  return {{"version", 1}, {"entities", std::move(arr)}};
}

EntityDictionary EntityDictionary::from_json(const nlohmann::json& j) {
  EntityDictionary dict;
  try {
    for (const auto& e : j.at("entities")) {
      const std::string name = e.at("name").get<std::string>();
      Entry entry;
      entry.name = name;
      for (const auto& k : e.at("kinds")) {
        auto kind = entity_kind_from_string(k.get<std::string>());
        if (!kind) throw ValueError("unknown entity kind " + k.get<std::string>());
        entry.kinds.insert(*kind);
      }
      for (const auto& id : e.at("labels_nodes")) entry.labels_nodes.insert(static_cast<store::NodeId>(id.get<std::uint32_t>()));
      for (const auto& id : e.at("captions_nodes")) entry.captions_nodes.insert(static_cast<store::NodeId>(id.get<std::uint32_t>()));
      dict.entries_.emplace(ascii_lower(name), std::move(entry));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError("entities", ex.what());
  }
  return dict;
}

}  // namespace pitchgraph::kg
