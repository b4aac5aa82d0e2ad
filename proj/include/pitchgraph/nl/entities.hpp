#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pitchgraph/ingest/records.hpp"
#include "pitchgraph/kg/entity_dictionary.hpp"

namespace pitchgraph::nl {

struct Repair {
  std::size_t offset = 0;  // byte span in the original question
  std::size_t length = 0;
  std::string original;
  std::string replacement;
  std::size_t distance = 0;
  bool ambiguous = false;  // several entries at the same distance
};

struct RepairResult {
  std::string text;
  std::vector<Repair> repairs;
  std::vector<std::string> unresolved;  // name-like spans matching nothing
};

// Largest edit distance accepted for a span of `length` bytes:
// max(1, ceil(length / 8)).
std::size_t repair_threshold(std::size_t length);

// Replaces misspelled entity names with their dictionary spelling.
// Candidates are runs of capitalized words (up to 4 per span), tried
// longest first; exact matches win over fuzzy ones, and "E. Hazard" /
// "Atkinson M." style abbreviations resolve when unique.
RepairResult repair_entities(std::string_view question, const kg::EntityDictionary& dict);

// League directory id ("england_epl") for a common name or abbreviation
// ("EPL", "Premier League"), or the id itself.
std::optional<std::string> league_from_alias(std::string_view text);

// Everything a template may need, found in an already repaired question.
// Name lists keep the order of appearance.
struct Mentions {
  std::vector<std::string> teams;
  std::vector<std::string> players;
  std::vector<std::string> referees;
  std::vector<std::string> venues;
  std::vector<std::string> coaches;
  std::vector<std::string> leagues;  // directory ids
  std::optional<std::string> season;  // canonical
  std::vector<std::string> events;    // Labels event names ("Goal", "Yellow card")
  std::vector<ingest::FactType> facts;
  std::optional<int> half;
  std::vector<std::string> unresolved;
};

Mentions find_mentions(std::string_view question, const kg::EntityDictionary& dict);

}  // namespace pitchgraph::nl
