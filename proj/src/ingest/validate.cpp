#include "pitchgraph/ingest/validate.hpp"

#include <set>
#include <sstream>

#include "pitchgraph/ingest/parse.hpp"

namespace pitchgraph::ingest {

std::string_view to_string(Finding::Kind kind) {
  switch (kind) {
    case Finding::Kind::DanglingReference: return "dangling-reference";
    case Finding::Kind::DuplicateGameId: return "duplicate-game-id";
    case Finding::Kind::SeasonFormat: return "season-format";
    case Finding::Kind::SameTeams: return "same-teams";
    case Finding::Kind::EmptyDataset: return "empty-dataset";
  }
  return "unknown";
}

ValidationReport validate_dataset(std::span<const GameRecord> games,
                                  std::span<const EventAnnotation> events,
                                  std::span<const PlayerEntry> players) {
  ValidationReport report;
  if (games.empty() && events.empty() && players.empty()) {
    report.findings.push_back({Finding::Kind::EmptyDataset, "", "no games found"});
    return report;
  }

  std::set<std::string, std::less<>> ids;
  for (const auto& g : games) {
    if (!ids.insert(g.game_id).second)
      report.findings.push_back(
          {Finding::Kind::DuplicateGameId, g.game_id, "game id appears more than once"});
    if (!is_canonical_season(g.season))
      report.findings.push_back({Finding::Kind::SeasonFormat, g.game_id,
                                 "season '" + g.season + "' is not of the form YYYY-YYYY"});
    if (g.home_team == g.away_team)
      report.findings.push_back(
          {Finding::Kind::SameTeams, g.game_id, "home and away team are both '" + g.home_team + "'"});
  }

  // One finding per distinct unknown id, not per record.
  std::set<std::string, std::less<>> dangling;
  auto check = [&](const std::string& id, std::string_view what) {
    if (ids.contains(id) || !dangling.insert(id).second) return;
    report.findings.push_back({Finding::Kind::DanglingReference, id,
                               std::string(what) + " references unknown game id"});
  };
  for (const auto& e : events) check(e.game_id, "event");
  for (const auto& p : players) check(p.game_id, "player");
  return report;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  if (findings.empty()) {
    out << "dataset ok\n";
    return out.str();
  }
  for (const auto& f : findings) {
    out << "error[" << to_string(f.kind) << "]";
    if (!f.game_id.empty()) out << " " << f.game_id;
    out << ": " << f.message << "\n";
  }
  out << findings.size() << " finding(s)\n";
  return out.str();
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : findings)
    arr.push_back({{"kind", std::string(to_string(f.kind))}, {"game_id", f.game_id}, {"message", f.message}});
  return {{"accepted", accepted()}, {"findings", std::move(arr)}};
}

}  // namespace pitchgraph::ingest
