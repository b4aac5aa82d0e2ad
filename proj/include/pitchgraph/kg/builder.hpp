#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "pitchgraph/ingest/records.hpp"
#include "pitchgraph/kg/entity_dictionary.hpp"
#include "pitchgraph/store/graph.hpp"

namespace pitchgraph::kg {

struct GameNodes {
  store::NodeId game;
  store::NodeId home;
  store::NodeId away;

  [[nodiscard]] store::NodeId team(ingest::TeamSide side) const {
    return side == ingest::TeamSide::Away ? away : home;
  }
};

// Edge type that links a player to a fact of the given kind.
std::string_view player_edge_type(ingest::FactType type);

// Applies the construction rules to one graph. Keeps the per-graph
// identity maps (teams by (name, league, season), players by name,
// (player, team) pairs) so repeated entities reuse their nodes.
class GraphBuilder {
 public:
  GraphBuilder(store::Graph& graph, GraphKind kind, EntityDictionary& dict)
      : graph_(graph), kind_(kind), dict_(dict) {}

  // Game node, both Team nodes, PARTICIPATED_IN/HOME_TEAM/AWAY_TEAM edges,
  // and WINNER/LOSER unless the game is a draw.
  GameNodes build_game_and_teams(const ingest::GameRecord& rec);

  // Event node -IS_PART_OF-> game; -ASSOCIATED_TO-> team unless the side
  // is NotApplicable.
  store::NodeId build_event(const ingest::EventAnnotation& ev, const GameNodes& game);

  // Player node (reused across games) -PLAYED_IN-> game and, once per
  // (player, team), -PLAYS_FOR-> team.
  store::NodeId build_player(const ingest::PlayerEntry& p, store::NodeId game, store::NodeId team);

  // Fact node -IS_PART_OF-> game, -ASSOCIATED_TO-> team, and one edge from
  // the player whose type depends on the fact kind.
  store::NodeId build_fact(const ingest::FactEntry& f, store::NodeId game, store::NodeId team,
                           store::NodeId player);

  [[nodiscard]] store::Graph& graph() { return graph_; }

 private:
  store::NodeId team_node(const std::string& name, const ingest::GameRecord& rec);

  store::Graph& graph_;
  GraphKind kind_;
  EntityDictionary& dict_;
  std::map<std::tuple<std::string, std::string, std::string>, store::NodeId> teams_;
  std::map<std::string, store::NodeId, std::less<>> players_;
  std::set<std::pair<store::NodeId, store::NodeId>> plays_for_;
};

struct BuildStats {
  std::map<std::string, std::size_t> nodes_by_label;
  std::map<std::string, std::size_t> edges_by_type;
  std::size_t nodes = 0;
  std::size_t edges = 0;

  static BuildStats of(const store::Graph& g);
  bool operator==(const BuildStats&) const = default;
};

struct BuildOutput {
  store::Graph labels_kg;
  store::Graph captions_kg;
  EntityDictionary entity_dict;

  [[nodiscard]] const store::Graph& graph(GraphKind kind) const {
    return kind == GraphKind::Labels ? labels_kg : captions_kg;
  }
  [[nodiscard]] BuildStats stats(GraphKind kind) const { return BuildStats::of(graph(kind)); }
};

// Builds and freezes both graphs. Deterministic in the record order.
BuildOutput build_all(const ingest::Dataset& dataset);

// stats.json content: per graph node/edge counts by label/type and density
// ("n/a" below two nodes).
nlohmann::json stats_json(const BuildOutput& out);
std::string stats_text(const BuildOutput& out);

}  // namespace pitchgraph::kg
