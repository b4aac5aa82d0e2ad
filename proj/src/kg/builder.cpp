#include "pitchgraph/kg/builder.hpp"

#include <sstream>

#include "pitchgraph/error.hpp"

namespace pitchgraph::kg {

using ingest::FactType;
using ingest::TeamSide;
using store::NodeId;
using store::PropertyMap;

std::string_view player_edge_type(FactType type) {
  switch (type) {
    case FactType::YellowCard:
    case FactType::RedCard: return "RECEIVED";
    case FactType::Goal:
    case FactType::OwnGoal: return "SCORED";
    case FactType::Assist: return "ASSISTED_BY";
    case FactType::SubstitutionOut:
    case FactType::SubstitutionIn: return "SUBSTITUTED_WITH";
  }
  return "RECEIVED";
}

NodeId GraphBuilder::team_node(const std::string& name, const ingest::GameRecord& rec) {
  const std::string canonical = dict_.canonical(name);
  auto key = std::make_tuple(canonical, rec.league, rec.season);
  if (auto it = teams_.find(key); it != teams_.end()) return it->second;
  const NodeId id = graph_.add_node(
      "Team", PropertyMap{{"name", canonical}, {"league", rec.league}, {"season", rec.season}});
  dict_.add(canonical, EntityKind::Team, kind_, id);
  teams_.emplace(std::move(key), id);
  return id;
}

GameNodes GraphBuilder::build_game_and_teams(const ingest::GameRecord& rec) {
  const std::string home_name = dict_.canonical(rec.home_team);
  const std::string away_name = dict_.canonical(rec.away_team);

  PropertyMap props{
      {"game_id", rec.game_id},
      {"home_team", home_name},
      {"away_team", away_name},
      {"score", rec.score_text()},
      {"score_home", rec.score_home},
      {"score_away", rec.score_away},
      {"date", rec.date},
      {"season", rec.season},
      {"league", rec.league},
  };
  if (rec.venue) props.emplace("venue", *rec.venue);
  if (rec.referee) props.emplace("referee", *rec.referee);
  if (rec.round) props.emplace("round", *rec.round);
  if (rec.home_coach) props.emplace("home_coach", *rec.home_coach);
  if (rec.away_coach) props.emplace("away_coach", *rec.away_coach);
  const NodeId game = graph_.add_node("Game", std::move(props));

  if (!rec.league.empty()) dict_.add(rec.league, EntityKind::League, kind_, game);
  if (rec.venue) dict_.add(*rec.venue, EntityKind::Venue, kind_, game);
  if (rec.referee) dict_.add(*rec.referee, EntityKind::Referee, kind_, game);
  if (rec.home_coach) dict_.add(*rec.home_coach, EntityKind::Coach, kind_, game);
  if (rec.away_coach) dict_.add(*rec.away_coach, EntityKind::Coach, kind_, game);

  const NodeId home = team_node(home_name, rec);
  const NodeId away = team_node(away_name, rec);

  auto participation = [](const char* side, const std::optional<std::string>& coach) {
    PropertyMap p{{"side", side}};
    if (coach) p.emplace("coach", *coach);
    return p;
  };
  graph_.add_edge(home, game, "PARTICIPATED_IN", participation("home", rec.home_coach));
  graph_.add_edge(away, game, "PARTICIPATED_IN", participation("away", rec.away_coach));
  graph_.add_edge(home, game, "HOME_TEAM");
  graph_.add_edge(away, game, "AWAY_TEAM");
  if (!rec.is_draw()) {
    const bool home_won = rec.score_home > rec.score_away;
    graph_.add_edge(home_won ? home : away, game, "WINNER");
    graph_.add_edge(home_won ? away : home, game, "LOSER");
  }
  return {game, home, away};
}

NodeId GraphBuilder::build_event(const ingest::EventAnnotation& ev, const GameNodes& game) {
  PropertyMap props{
      {"name", ev.label},
      {"half", ev.half},
      {"clock", ev.clock},
      {"game_time", ev.game_time()},
      {"team", std::string(ingest::to_string(ev.team_side))},
  };
  if (ev.visibility) props.emplace("visibility", *ev.visibility);
  if (ev.position_ms) props.emplace("position_ms", *ev.position_ms);
  const NodeId node = graph_.add_node("Event", std::move(props));
  graph_.add_edge(node, game.game, "IS_PART_OF");
  if (ev.team_side != TeamSide::NotApplicable)
    graph_.add_edge(node, game.team(ev.team_side), "ASSOCIATED_TO");
  return node;
}

NodeId GraphBuilder::build_player(const ingest::PlayerEntry& p, NodeId game, NodeId team) {
  const std::string name = dict_.canonical(p.name);
  NodeId player;
  if (auto it = players_.find(name); it != players_.end()) {
    player = it->second;
  } else {
    player = graph_.add_node("Player", PropertyMap{{"name", name}});
    players_.emplace(name, player);
  }
  dict_.add(name, EntityKind::Player, kind_, player);

  PropertyMap played{{"side", std::string(ingest::to_string(p.team_side))}};
  if (p.shirt_number) played.emplace("shirt_number", *p.shirt_number);
  if (p.lineup_role) played.emplace("lineup_role", *p.lineup_role);
  graph_.add_edge(player, game, "PLAYED_IN", std::move(played));
  if (plays_for_.emplace(player, team).second) graph_.add_edge(player, team, "PLAYS_FOR");
  return player;
}

NodeId GraphBuilder::build_fact(const ingest::FactEntry& f, NodeId game, NodeId team, NodeId player) {
  const NodeId fact = graph_.add_node(
      "Fact", PropertyMap{
                  {"kind", std::string(ingest::to_string(f.fact_type))},
                  {"type", static_cast<int>(f.fact_type)},
                  {"time", f.time},
                  {"detail", f.detail},
                  {"subject_player", dict_.canonical(f.subject_player)},
              });
  graph_.add_edge(fact, game, "IS_PART_OF");
  graph_.add_edge(fact, team, "ASSOCIATED_TO");
  graph_.add_edge(player, fact, std::string(player_edge_type(f.fact_type)));
  return fact;
}

BuildStats BuildStats::of(const store::Graph& g) {
  BuildStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  for (const auto& label : g.labels()) s.nodes_by_label[label] = g.label_count(label);
  for (const auto& type : g.edge_types()) s.edges_by_type[type] = g.edge_type_count(type);
  return s;
}

BuildOutput build_all(const ingest::Dataset& dataset) {
  BuildOutput out;
  GraphBuilder labels(out.labels_kg, GraphKind::Labels, out.entity_dict);
  GraphBuilder captions(out.captions_kg, GraphKind::Captions, out.entity_dict);

  std::map<std::string, GameNodes, std::less<>> labels_games;
  std::map<std::string, GameNodes, std::less<>> captions_games;
  for (const auto& game : dataset.games) {
    labels_games.emplace(game.game_id, labels.build_game_and_teams(game));
    captions_games.emplace(game.game_id, captions.build_game_and_teams(game));
  }
  for (const auto& ev : dataset.events) {
    auto it = labels_games.find(ev.game_id);
    if (it == labels_games.end()) throw ValueError("event references unknown game id " + ev.game_id);
    labels.build_event(ev, it->second);
  }
  for (const auto& p : dataset.players) {
    auto it = captions_games.find(p.game_id);
    if (it == captions_games.end()) throw ValueError("player references unknown game id " + p.game_id);
    const NodeId team = it->second.team(p.team_side);
    const NodeId player = captions.build_player(p, it->second.game, team);
    for (const auto& f : p.facts) captions.build_fact(f, it->second.game, team, player);
  }
  out.labels_kg.freeze();
  out.captions_kg.freeze();
  return out;
}

namespace {

nlohmann::json graph_stats_json(const store::Graph& g) {
  const BuildStats s = BuildStats::of(g);
  nlohmann::json j = {{"nodes", s.nodes}, {"edges", s.edges}};
  j["nodes_by_label"] = s.nodes_by_label;
  j["edges_by_type"] = s.edges_by_type;
  if (g.node_count() >= 2) {
    j["density"] = store::density(g);
  } else {
    j["density"] = "n/a";
  }
  return j;
}

}  // namespace

nlohmann::json stats_json(const BuildOutput& out) {
  return {{"labels", graph_stats_json(out.labels_kg)},
          {"captions", graph_stats_json(out.captions_kg)},
          {"entities", out.entity_dict.size()}};
}

std::string stats_text(const BuildOutput& out) {
  std::ostringstream os;
  for (GraphKind kind : {GraphKind::Labels, GraphKind::Captions}) {
    const store::Graph& g = out.graph(kind);
    const BuildStats s = BuildStats::of(g);
    os << to_string(kind) << " graph\n";
    os << "  nodes  " << s.nodes << "\n";
    for (const auto& [label, n] : s.nodes_by_label) {
      os << "    " << label << std::string(label.size() < 18 ? 18 - label.size() : 1, ' ') << n << "\n";
    }
    os << "  edges  " << s.edges << "\n";
    for (const auto& [type, n] : s.edges_by_type) {
      os << "    " << type << std::string(type.size() < 18 ? 18 - type.size() : 1, ' ') << n << "\n";
    }
    os << "  density  ";
    if (g.node_count() >= 2) {
      os << store::density(g) << "\n";
    } else {
      os << "n/a\n";
    }
  }
  return os.str();
}

}  // namespace pitchgraph::kg
