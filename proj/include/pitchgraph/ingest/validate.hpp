#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pitchgraph/ingest/records.hpp"

namespace pitchgraph::ingest {

struct Finding {
  enum class Kind { DanglingReference, DuplicateGameId, SeasonFormat, SameTeams, EmptyDataset };
  Kind kind;
  std::string game_id;
  std::string message;
};

std::string_view to_string(Finding::Kind kind);

struct ValidationReport {
  std::vector<Finding> findings;

  [[nodiscard]] bool accepted() const { return findings.empty(); }
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

ValidationReport validate_dataset(std::span<const GameRecord> games,
                                  std::span<const EventAnnotation> events,
                                  std::span<const PlayerEntry> players);

inline ValidationReport validate_dataset(const Dataset& d) {
  return validate_dataset(d.games, d.events, d.players);
}

}  // namespace pitchgraph::ingest
