#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pitchgraph::ingest {

enum class TeamSide { Home, Away, NotApplicable };

// Numeric codes as they appear in the captions file. Code 5 is unused.
enum class FactType : int {
  YellowCard = 1,
  RedCard = 2,
  Goal = 3,
  OwnGoal = 4,
  SubstitutionOut = 6,
  SubstitutionIn = 7,
  Assist = 8,
};

[[nodiscard]] std::string_view to_string(TeamSide side);
[[nodiscard]] std::string_view to_string(FactType type);
[[nodiscard]] std::optional<FactType> fact_type_from_code(int code);
[[nodiscard]] std::optional<FactType> fact_type_from_name(std::string_view name);
[[nodiscard]] bool is_card(FactType type);

struct GameRecord {
  std::string game_id;
  std::string home_team;
  std::string away_team;
  int score_home = 0;
  int score_away = 0;
  std::string date;  // ISO-8601 yyyy-mm-dd
  std::optional<std::string> venue;
  std::optional<std::string> referee;
  std::string season;  // canonical "YYYY-YYYY" once validated
  std::string league;
  std::optional<std::string> round;
  std::optional<std::string> home_coach;
  std::optional<std::string> away_coach;

  [[nodiscard]] bool is_draw() const { return score_home == score_away; }
  [[nodiscard]] std::string score_text() const {
    return std::to_string(score_home) + " - " + std::to_string(score_away);
  }
  bool operator==(const GameRecord&) const = default;
};

struct EventAnnotation {
  std::string game_id;
  std::string label;
  int half = 1;
  int clock = 0;  // seconds into the half
  TeamSide team_side = TeamSide::NotApplicable;
  std::optional<std::string> visibility;
  std::optional<std::int64_t> position_ms;

  // "H - MM:SS", the form used in the labels file.
  [[nodiscard]] std::string game_time() const;
  bool operator==(const EventAnnotation&) const = default;
};

struct FactEntry {
  FactType fact_type = FactType::YellowCard;
  std::string time;
  std::string subject_player;
  std::string detail;
  bool operator==(const FactEntry&) const = default;
};

struct PlayerEntry {
  std::string game_id;
  std::string name;
  TeamSide team_side = TeamSide::Home;
  std::optional<int> shirt_number;
  std::optional<std::string> lineup_role;
  std::vector<FactEntry> facts;
  bool operator==(const PlayerEntry&) const = default;
};

struct Dataset {
  std::vector<GameRecord> games;
  std::vector<EventAnnotation> events;
  std::vector<PlayerEntry> players;
};

}  // namespace pitchgraph::ingest
