#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pitchgraph/store/graph.hpp"

namespace pitchgraph::kg {

enum class GraphKind { Labels, Captions };
enum class EntityKind { Team, Player, League, Referee, Venue, Coach };

std::string_view to_string(GraphKind kind);
std::string_view to_string(EntityKind kind);
std::optional<EntityKind> entity_kind_from_string(std::string_view s);

std::string ascii_lower(std::string_view s);

// Levenshtein distance over bytes (unit costs).
std::size_t edit_distance(std::string_view a, std::string_view b);

// Closest candidate within `max_distance` (compared case-insensitively);
// ties resolve to the lexicographically smallest. Empty when none.
std::string nearest_name(std::string_view word, const std::vector<std::string>& candidates,
                         std::size_t max_distance);

// Registry of canonical entity names shared by both graphs. Names resolve
// case-insensitively; the first spelling registered becomes canonical.
class EntityDictionary {
 public:
  struct Entry {
    std::string name;
    std::set<EntityKind> kinds;
    std::set<store::NodeId> labels_nodes;
    std::set<store::NodeId> captions_nodes;
  };

  // Returns the canonical spelling (registering `name` if new).
  const std::string& add(std::string_view name, EntityKind kind, GraphKind graph, store::NodeId node);

  // Canonical spelling for an already-registered name, else the input
  // normalized.
  [[nodiscard]] std::string canonical(std::string_view name) const;

  [[nodiscard]] const Entry* find(std::string_view name) const;
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  // Sorted by lowercase key.
  [[nodiscard]] std::vector<const Entry*> entries() const;
  [[nodiscard]] std::vector<std::string> names(EntityKind kind) const;

  [[nodiscard]] nlohmann::json to_json() const;
  static EntityDictionary from_json(const nlohmann::json& j);

 private:
  std::map<std::string, Entry, std::less<>> entries_;  // keyed by ascii_lower(name)
};

}  // namespace pitchgraph::kg
