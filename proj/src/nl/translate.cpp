#include "pitchgraph/nl/translate.hpp"

#include <regex>

#include "pitchgraph/error.hpp"

namespace pitchgraph::nl {
namespace {

using ingest::FactType;

const std::array<Category, 23> kCategories = {{
    {1, "Q1", "team or player present", Route::CaptionsThenLabels},
    {2, "Q2", "home events of a team in a season", Route::Labels},
    {3, "Q3", "home advantage of a team in a season", Route::Labels},
    {4, "Q4", "goals by a player", Route::Captions},
    {5, "Q5", "cards shown to a player", Route::Captions},
    {6, "Q6", "opponents of a team", Route::CaptionsThenLabels},
    {7, "Q7", "teams of a league in a season", Route::CaptionsThenLabels},
    {8, "Q8", "games with an event in one half", Route::Labels},
    {9, "Q9", "teams and leagues of a player", Route::Captions},
    {10, "Q10", "goals by a player in one game", Route::Captions},
    {11, "Q11", "assists for a scorer", Route::Captions},
    {12, "Q12", "reasons for cards shown to a player", Route::Captions},
    {13, "Q13", "cards in a league and season", Route::Captions},
    {14, "Q14", "events of one game", Route::Labels},
    {15, "Q15", "times of an event type", Route::Labels},
    {16, "Q16", "appearances of a player", Route::Captions},
    {17, "Q17", "games by referee", Route::CaptionsThenLabels},
    {18, "Q18", "coaches of a team", Route::CaptionsThenLabels},
    {19, "Q19", "games at a venue", Route::CaptionsThenLabels},
    {20, "Q20", "details of one game", Route::CaptionsThenLabels},
    {21, "Q21", "which team won more", Route::CaptionsThenLabels},
    {22, "Q22", "wins of a team", Route::CaptionsThenLabels},
    {23, "Q23", "leagues of several teams", Route::CaptionsThenLabels},
}};

bool has(const std::string& lower, const char* re) { return std::regex_search(lower, std::regex(re)); }

bool has_card(const Mentions& m) {
  for (auto f : m.facts) {
    if (ingest::is_card(f)) return true;
  }
  return false;
}

bool has_fact(const Mentions& m, FactType t) {
  return std::find(m.facts.begin(), m.facts.end(), t) != m.facts.end();
}

std::vector<FactType> card_kinds(const Mentions& m) {
  std::vector<FactType> out;
  for (auto f : m.facts) {
    if (ingest::is_card(f)) out.push_back(f);
  }
  return out;
}

// "{k: v, ...}" for the game-level filters that were mentioned.
std::string game_props(const Mentions& m, bool with_league = true) {
  std::vector<std::string> parts;
  if (m.season) parts.push_back("season: " + cypher_string(*m.season));
  if (with_league && !m.leagues.empty()) parts.push_back("league: " + cypher_string(m.leagues.front()));
  if (parts.empty()) return "";
  std::string s = " {";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + "}";
}

std::string between(const std::string& a, const std::string& b) {
  const auto A = cypher_string(a);
  const auto B = cypher_string(b);
  return "(g.home_team = " + A + " AND g.away_team = " + B + ") OR (g.home_team = " + B +
         " AND g.away_team = " + A + ")";
}

[[noreturn]] void missing(int cat, const char* what) {
  throw NoTemplateError(std::string("question looks like ") + std::string(kCategories[cat - 1].id) +
                            " (" + std::string(kCategories[cat - 1].description) + ") but names no " + what,
                        std::string(kCategories[cat - 1].id));
}

// Named teams, topped up with unrecognised names when short.
std::vector<std::string> teams_or_unresolved(const Mentions& m, std::size_t want) {
  std::vector<std::string> out = m.teams;
  for (const auto& u : m.unresolved) {
    if (out.size() >= want) break;
    out.push_back(u);
  }
  return out;
}

std::string first_or(const std::vector<std::string>& v, const std::vector<std::string>& fallback) {
  if (!v.empty()) return v.front();
  if (!fallback.empty()) return fallback.front();
  return {};
}

}  // namespace

const std::array<Category, 23>& categories() { return kCategories; }

const Category& category(int number) {
  if (number < 1 || number > 23) throw ValueError("no category Q" + std::to_string(number));
  return kCategories[static_cast<std::size_t>(number - 1)];
}

std::string cypher_string(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

int classify(std::string_view question, const Mentions& m) {
  const std::string q = kg::ascii_lower(question);
  const std::size_t teams = m.teams.size();
  const bool players = !m.players.empty();
  const bool person = players || !m.unresolved.empty();
  const bool team_named = teams > 0 || !m.unresolved.empty();
  const bool events = !m.events.empty();
  const bool game_between = teams + m.unresolved.size() >= 2 && has(q, R"(\b(game|match)\b[^?]*\bbetween\b|\bbetween\b)");

  if (has(q, R"(home (team )?advantage)")) return 3;
  if (has(q, R"(\bwon more\b|\bmore (games|wins|matches)\b|\bmost (games|wins)\b)")) return 21;
  if (has(q, R"(\bhow many (games|matches)\b)") && has(q, R"(\bw[io]n\b)")) return 22;
  if (has(q, R"(\bassist)")) return 11;
  if (events && has(q, R"(\bhome\b)") && !players && team_named) return 2;
  if (has_card(m) && person && has(q, R"(\bwhy\b|\breasons?\b)")) return 12;
  if (has_card(m) && person) return 5;
  if (has_card(m) && has(q, R"(\bhow many\b|\bnumber of\b|\bcount\b)")) return 13;
  if (has_fact(m, FactType::Goal) && person && game_between) return 10;
  if (has_fact(m, FactType::Goal) && person && !game_between && teams == 0) return 4;
  if (events && m.half) return 8;
  if (events && has(q, R"(\bwhen\b|\bdates?\b|\btimes?\b|\bminutes?\b)")) return 15;
  if (game_between && has(q, R"(\bevents?\b|\bhappen)")) return 14;
  if (has(q, R"(\breferee)") || !m.referees.empty()) return 17;
  if (has(q, R"(\bcoach|\bmanager)")) return 18;
  if (has(q, R"(\bvenue|\bstadium|\bplayed at\b|\bheld at\b|\barena\b)") || !m.venues.empty()) return 19;
  if (game_between) return 20;
  if (has(q, R"(\bagainst\b|\bopponents?\b)")) return 6;
  if (person && has(q, R"(\binformation\b|\btell me about\b|\bwhat do you (have|know)\b|\bappear)")) return 16;
  if (person && teams == 0 && has(q, R"(\bteams?\b[^?]*\bplayed\b|\bplay(ed|s)? for\b)")) return 9;
  if (players && has(q, R"(\bteams?\b|\bplay(ed|s)? for\b)")) return 9;
  if (has(q, R"(\bleagues?\b)") && (teams >= 1 || m.unresolved.size() >= 1) && !has(q, R"(\bteams\b)")) return 23;
  if (has(q, R"(\bteams\b)") && (!m.leagues.empty() || m.season)) return 7;
  if (has(q, R"(\bdatabase\b|\bdataset\b|\bexists?\b|\bknown\b)")) return 1;
  return 0;
}

Translation translate_rule(std::string_view question, const kg::EntityDictionary& dict) {
  Translation t;
  t.mentions = find_mentions(question, dict);
  const Mentions& m = t.mentions;
  t.category = classify(question, m);
  const auto S = [](const std::string& s) { return cypher_string(s); };
  const auto team = [&](int cat) {
    auto v = teams_or_unresolved(m, 1);
    if (v.empty()) missing(cat, "team");
    t.names.push_back(v.front());
    return v.front();
  };
  const auto two_teams = [&](int cat) {
    auto v = teams_or_unresolved(m, 2);
    if (v.size() < 2) missing(cat, "pair of teams");
    t.names.push_back(v[0]);
    t.names.push_back(v[1]);
    return std::pair{v[0], v[1]};
  };
  const auto player = [&](int cat) {
    const std::string p = first_or(m.players, m.unresolved);
    if (p.empty()) missing(cat, "player");
    t.names.push_back(p);
    return p;
  };
  const auto event = [&](const char* fallback) { return m.events.empty() ? std::string(fallback) : m.events.front(); };
  const auto card_filter = [&] {
    const auto kinds = card_kinds(m);
    if (kinds.size() != 1) return std::string();
    return " {kind: " + S(std::string(ingest::to_string(kinds.front()))) + "}";
  };

  std::string& out = t.query_text;
  switch (t.category) {
    case 1: {
      std::string name;
      bool is_player = false;
      if (!m.teams.empty()) {
        name = m.teams.front();
      } else if (!m.players.empty()) {
        name = m.players.front();
        is_player = true;
      } else if (!m.unresolved.empty()) {
        name = m.unresolved.front();
      } else {
        missing(1, "team or player");
      }
      t.names.push_back(name);
      out = is_player ? "MATCH (p:Player {name: " + S(name) + "}) RETURN count(p) > 0 AS present"
                      : "MATCH (t:Team {name: " + S(name) + "}) RETURN count(t) > 0 AS present";
      break;
    }
    case 2:
      out = "MATCH (t:Team {name: " + S(team(2)) + "})-[:HOME_TEAM]->(g:Game" + game_props(m) +
            ")<-[:IS_PART_OF]-(e:Event {name: " + S(event("Goal")) +
            "})-[:ASSOCIATED_TO]->(t) RETURN count(e) AS total";
      break;
    case 3:
      out = "MATCH (t:Team {name: " + S(team(3)) + "})-[:WINNER]->(g:Game" + game_props(m) +
            ")<-[p:PARTICIPATED_IN]-(t) RETURN p.side AS side, count(g) AS wins ORDER BY side";
      break;
    case 4:
      out = "MATCH (p:Player {name: " + S(player(4)) +
            "})-[:SCORED]->(f:Fact {kind: 'Goal'})-[:IS_PART_OF]->(g:Game" + game_props(m) +
            ") RETURN count(f) AS goals";
      break;
    case 5: {
      const std::string p = player(5);
      const std::string filter = card_filter();
      out = "MATCH (p:Player {name: " + S(p) + "})-[:RECEIVED]->(f:Fact" + filter +
            ")-[:IS_PART_OF]->(g:Game" + game_props(m) + ")";
      out += filter.empty() ? " RETURN f.kind AS card, count(f) AS cards ORDER BY card"
                            : " RETURN count(f) AS cards";
      break;
    }
    case 6:
      out = "MATCH (t:Team {name: " + S(team(6)) + "})-[:PARTICIPATED_IN]->(g:Game" + game_props(m) +
            ")<-[:PARTICIPATED_IN]-(o:Team) RETURN DISTINCT o.name AS opponent ORDER BY opponent";
      break;
    case 7:
      out = "MATCH (t:Team)-[:PARTICIPATED_IN]->(g:Game" + game_props(m) +
            ") RETURN DISTINCT t.name AS team ORDER BY team";
      break;
    case 8:
      out = "MATCH (e:Event {name: " + S(event("Goal")) + ", half: " + std::to_string(m.half.value_or(1)) +
            "})-[:IS_PART_OF]->(g:Game" + game_props(m) +
            ") RETURN DISTINCT g.date AS date, g.home_team AS home, g.away_team AS away ORDER BY date, home";
      break;
    case 9:
      out = "MATCH (p:Player {name: " + S(player(9)) +
            "})-[:PLAYS_FOR]->(t:Team) RETURN DISTINCT t.name AS team, t.league AS league ORDER BY league, team";
      break;
    case 10: {
      const std::string p = player(10);
      const auto [a, b] = two_teams(10);
      out = "MATCH (p:Player {name: " + S(p) + "})-[:SCORED]->(f:Fact {kind: 'Goal'})-[:IS_PART_OF]->(g:Game" +
            game_props(m) + ") WHERE " + between(a, b) + " RETURN count(f) AS goals";
      break;
    }
    case 11:
      out = "MATCH (a:Player)-[:ASSISTED_BY]->(f:Fact {kind: 'Assist', detail: " + S(player(11)) +
            "})-[:IS_PART_OF]->(g:Game" + game_props(m) +
            ") RETURN a.name AS assistant, count(f) AS assists ORDER BY assists DESC, assistant";
      break;
    case 12:
      out = "MATCH (p:Player {name: " + S(player(12)) + "})-[:RECEIVED]->(f:Fact" + card_filter() +
            ")-[:IS_PART_OF]->(g:Game" + game_props(m) +
            ") RETURN f.kind AS card, f.detail AS reason, f.time AS minute, g.date AS date ORDER BY date, minute";
      break;
    case 13:
      out = "MATCH (p:Player)-[:RECEIVED]->(f:Fact" + card_filter() + ")-[:IS_PART_OF]->(g:Game" +
            game_props(m) + ") RETURN f.kind AS card, count(f) AS total, collect(p.name) AS players ORDER BY card";
      break;
    case 14: {
      const auto [a, b] = two_teams(14);
      out = "MATCH (e:Event)-[:IS_PART_OF]->(g:Game" + game_props(m) + ") WHERE " + between(a, b) +
            " RETURN g.date AS date, e.game_time AS time, e.name AS event, e.team AS side"
            " ORDER BY date, e.half, e.clock";
      break;
    }
    case 15:
      out = "MATCH (e:Event {name: " + S(event("Goal")) + "})-[:IS_PART_OF]->(g:Game" + game_props(m) +
            ") RETURN g.date AS date, e.game_time AS time, g.home_team AS home, g.away_team AS away"
            " ORDER BY date, e.half, e.clock";
      break;
    case 16:
      out = "MATCH (p:Player {name: " + S(player(16)) +
            "})-[r:PLAYED_IN]->(g:Game) RETURN g.date AS date, g.home_team AS home, g.away_team AS away,"
            " r.side AS side, r.shirt_number AS shirt, r.lineup_role AS role ORDER BY date";
      break;
    case 17: {
      const std::string r = first_or(m.referees, m.unresolved);
      if (r.empty()) missing(17, "referee");
      t.names.push_back(r);
      out = "MATCH (g:Game {referee: " + S(r) +
            "}) RETURN g.date AS date, g.home_team AS home, g.score AS score, g.away_team AS away ORDER BY date";
      break;
    }
    case 18:
      out = "MATCH (t:Team {name: " + S(team(18)) +
            "})-[r:PARTICIPATED_IN]->(g:Game) WHERE r.coach IS NOT NULL RETURN DISTINCT r.coach AS coach ORDER BY coach";
      break;
    case 19: {
      const std::string v = first_or(m.venues, m.unresolved);
      if (v.empty()) missing(19, "venue");
      t.names.push_back(v);
      out = "MATCH (g:Game {venue: " + S(v) +
            "}) RETURN g.date AS date, g.home_team AS home, g.score AS score, g.away_team AS away ORDER BY date";
      break;
    }
    case 20: {
      const auto [a, b] = two_teams(20);
      out = "MATCH (g:Game" + game_props(m) + ") WHERE " + between(a, b) +
            " RETURN g.date AS date, g.home_team AS home, g.score AS score, g.away_team AS away,"
            " g.league AS league, g.season AS season, g.round AS round, g.venue AS venue,"
            " g.referee AS referee, g.home_coach AS home_coach, g.away_coach AS away_coach ORDER BY date";
      break;
    }
    case 21: {
      const auto [a, b] = two_teams(21);
      out = "MATCH (t:Team)-[:WINNER]->(g:Game" + game_props(m) + ") WHERE t.name = " + S(a) +
            " OR t.name = " + S(b) + " RETURN t.name AS team, count(g) AS wins ORDER BY wins DESC, team";
      break;
    }
    case 22:
      out = "MATCH (t:Team {name: " + S(team(22)) + "})-[:WINNER]->(g:Game" + game_props(m) +
            ") RETURN count(g) AS wins";
      break;
    case 23: {
      std::vector<std::string> names = m.teams;
      names.insert(names.end(), m.unresolved.begin(), m.unresolved.end());
      if (names.empty()) missing(23, "team");
      t.names = names;
      std::string where;
      for (const auto& n : names) where += (where.empty() ? "" : " OR ") + std::string("t.name = ") + S(n);
      out = "MATCH (t:Team) WHERE " + where +
            " RETURN DISTINCT t.name AS team, t.league AS league ORDER BY team, league";
      break;
    }
    default: {
      // Closest category by the kinds of names mentioned.
      std::string nearest = "Q16";
      if (!m.teams.empty()) nearest = m.teams.size() >= 2 ? "Q20" : "Q22";
      else if (!m.leagues.empty() || m.season) nearest = "Q7";
      else if (m.players.empty()) nearest = "Q1";
      throw NoTemplateError("no question template fits this question", nearest);
    }
  }
  return t;
}

Translation RuleBackend::translate(std::string_view question, const SchemaCard&,
                                   const std::vector<FewShot>&) const {
  return translate_rule(question, dict_);
}

std::vector<FewShot> make_few_shots(const SchemaCard& card, const kg::EntityDictionary& dict) {
  const auto sample = [&](const char* key, const char* fallback) {
    const auto it = card.samples.find(key);
    return it == card.samples.end() || it->second.empty() ? std::string(fallback) : it->second.front();
  };
  const std::string team = sample("Team", "Chelsea");
  const std::string player = sample("Player", "Eden Hazard");
  const std::string season = sample("season", "2015-2016");
  std::string other = team;
  if (const auto it = card.samples.find("Team"); it != card.samples.end() && it->second.size() > 1) {
    other = it->second[1];
  }
  const std::vector<std::string> questions = {
      "Give me the total home goals for " + team + " in the " + season + " season.",
      "How many goals did " + player + " score in the " + season + " season?",
      "List all the teams that played a game against " + team + " in the " + season + " season.",
      "Which events happened in the game between " + team + " and " + other + " in the " + season + " season?",
      "How many games did " + team + " win in the " + season + " season?",
  };
  std::vector<FewShot> out;
  for (const auto& q : questions) {
    try {
      out.push_back(FewShot{q, translate_rule(q, dict).query_text});
    } catch (const NoTemplateError&) {
      // A sample missing from the dictionary; skip the pair.
    }
  }
  return out;
}

}  // namespace pitchgraph::nl
