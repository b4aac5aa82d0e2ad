#include "pitchgraph/ingest/records.hpp"

#include <array>
#include <cstdio>

namespace pitchgraph::ingest {

std::string_view to_string(TeamSide side) {
  switch (side) {
    case TeamSide::Home: return "home";
    case TeamSide::Away: return "away";
    case TeamSide::NotApplicable: return "not applicable";
  }
  return "not applicable";
}

namespace {
struct FactName {
  FactType type;
  std::string_view name;
};
constexpr std::array<FactName, 7> kFactNames{{
    {FactType::YellowCard, "YellowCard"},
    {FactType::RedCard, "RedCard"},
    {FactType::Goal, "Goal"},
    {FactType::OwnGoal, "OwnGoal"},
    {FactType::SubstitutionOut, "SubstitutionOut"},
    {FactType::SubstitutionIn, "SubstitutionIn"},
    {FactType::Assist, "Assist"},
}};
}  // namespace

std::string_view to_string(FactType type) {
  for (const auto& f : kFactNames)
    if (f.type == type) return f.name;
  return "Unknown";
}

std::optional<FactType> fact_type_from_code(int code) {
  for (const auto& f : kFactNames)
    if (static_cast<int>(f.type) == code) return f.type;
  return std::nullopt;
}

std::optional<FactType> fact_type_from_name(std::string_view name) {
  for (const auto& f : kFactNames)
    if (f.name == name) return f.type;
  return std::nullopt;
}

bool is_card(FactType type) { return type == FactType::YellowCard || type == FactType::RedCard; }

std::string EventAnnotation::game_time() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d - %02d:%02d", half, clock / 60, clock % 60);
  return buf;
}

}  // namespace pitchgraph::ingest
