#include "pitchgraph/ingest/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

#include <boost/locale.hpp>
#include <json.hpp>

#include "pitchgraph/error.hpp"

namespace pitchgraph::ingest {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

json parse_json(std::string_view bytes) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) throw SchemaError(path + "." + key, "missing required field");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw SchemaError(path + "." + key, "expected a string");
}

// Unset or empty names are treated as absent.
std::optional<std::string> optional_name(const json& obj, const char* key, const std::string& path) {
  auto v = optional_string(obj, key, path);
  if (!v) return std::nullopt;
  auto n = normalize_name(*v);
  if (n.empty()) return std::nullopt;
  return n;
}

TeamSide parse_team_side(std::string_view raw, const std::string& path) {
  const std::string t = lower(normalize_name(raw));
  if (t == "home") return TeamSide::Home;
  if (t == "away") return TeamSide::Away;
  if (t.find("not applicable") != std::string::npos) return TeamSide::NotApplicable;
  throw ValueError(path + ": unknown team value '" + std::string(raw) + "'");
}

std::optional<int> parse_int(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::pair<int, int> parse_score(std::string_view text, const std::string& path) {
  static const std::regex re(R"(^\s*(\d+)\s*-\s*(\d+)\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re))
    throw ValueError(path + ": score '" + std::string(text) + "' is not of the form 'int - int'");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

std::string parse_date(std::string_view text, const std::string& path) {
  static const std::regex iso(R"(^\s*(\d{4})-(\d{2})-(\d{2})\s*$)");
  static const std::regex dmy(R"(^\s*(\d{2})/(\d{2})/(\d{4})(\s*-\s*\d{2}:\d{2})?\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_match(text.begin(), text.end(), m, iso))
    return m[1].str() + "-" + m[2].str() + "-" + m[3].str();
  if (std::regex_match(text.begin(), text.end(), m, dmy))
    return m[3].str() + "-" + m[2].str() + "-" + m[1].str();
  throw ValueError(path + ": unparsable date '" + std::string(text) + "'");
}

int parse_fact_code(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    if (auto code = parse_int(v.get<std::string>())) return *code;
  }
  throw ValueError(path + ": fact type is not an integer code");
}

FactEntry parse_fact(const json& f, const std::string& player, const std::string& path) {
  const int code = parse_fact_code(require(f, "type", path), path + ".type");
  auto type = fact_type_from_code(code);
  if (!type) throw ValueError(path + ".type: unknown fact type code " + std::to_string(code));

  FactEntry fact;
  fact.fact_type = *type;
  const json& time = require(f, "time", path);
  std::vector<std::string> parts;
  if (time.is_string()) {
    parts.push_back(time.get<std::string>());
  } else if (time.is_array()) {
    for (std::size_t i = 0; i < time.size(); ++i) {
      if (!time[i].is_string())
        throw SchemaError(path + ".time[" + std::to_string(i) + "]", "expected a string");
      parts.push_back(time[i].get<std::string>());
    }
  } else {
    throw SchemaError(path + ".time", "expected a string or an array of strings");
  }
  if (parts.empty() || parts.size() > 3)
    throw SchemaError(path + ".time", "expected one to three elements");

  fact.time = normalize_name(parts[0]);
  fact.subject_player = parts.size() > 1 ? normalize_name(parts[1]) : player;
  fact.detail = parts.size() > 2 ? normalize_name(parts[2]) : std::string{};
  if (auto d = optional_string(f, "description", path); d && fact.detail.empty())
    fact.detail = normalize_name(*d);

  if (is_card(fact.fact_type) &&
      (parts.size() != 3 || fact.time.empty() || fact.subject_player.empty() || fact.detail.empty()))
    throw SchemaError(path + ".time", "card facts need [time, player, reason]");
  if (fact.time.empty()) throw SchemaError(path + ".time[0]", "empty match clock");
  if (fact.subject_player.empty()) fact.subject_player = player;
  return fact;
}

void parse_lineup(const json& side, TeamSide team_side, const std::string& game_id,
                  const std::string& path, std::vector<PlayerEntry>& out) {
  auto it = side.find("players");
  if (it == side.end() || it->is_null()) return;
  if (!it->is_array()) throw SchemaError(path + ".players", "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& p = (*it)[i];
    const std::string ppath = path + ".players[" + std::to_string(i) + "]";
    PlayerEntry entry;
    entry.game_id = game_id;
    entry.team_side = team_side;
    entry.name = normalize_name(require_string(p, "name", ppath));
    if (entry.name.empty()) throw SchemaError(ppath + ".name", "empty player name");
    if (auto n = p.find("number"); n != p.end() && !n->is_null()) {
      if (n->is_number_integer()) {
        entry.shirt_number = n->get<int>();
      } else if (n->is_string()) {
        entry.shirt_number = parse_int(n->get<std::string>());
      }
      if (!entry.shirt_number) throw ValueError(ppath + ".number: not an integer");
    }
    if (auto role = optional_string(p, "role", ppath)) {
      entry.lineup_role = *role;
    } else if (auto s = p.find("starting"); s != p.end() && s->is_boolean()) {
      entry.lineup_role = s->get<bool>() ? "starter" : "substitute";
    }
    if (auto facts = p.find("facts"); facts != p.end() && !facts->is_null()) {
      if (!facts->is_array()) throw SchemaError(ppath + ".facts", "expected an array");
      for (std::size_t k = 0; k < facts->size(); ++k)
        entry.facts.push_back(
            parse_fact((*facts)[k], entry.name, ppath + ".facts[" + std::to_string(k) + "]"));
    }
    out.push_back(std::move(entry));
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::pair<int, int> parse_game_time(std::string_view text) {
  static const std::regex re(R"(^\s*(\d+)\s*-\s*(\d+):(\d{2})\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re))
    throw ValueError("unparsable game time '" + std::string(text) + "'");
  const int half = std::stoi(m[1].str());
  const int minutes = std::stoi(m[2].str());
  const int seconds = std::stoi(m[3].str());
  if (half != 1 && half != 2) throw ValueError("half must be 1 or 2 in '" + std::string(text) + "'");
  if (seconds >= 60) throw ValueError("seconds out of range in '" + std::string(text) + "'");
  return {half, minutes * 60 + seconds};
}

std::optional<std::string> canonical_season(std::string_view text) {
  static const std::regex re(R"(^\s*(\d{2}|\d{4})\s*[-/]\s*(\d{2}|\d{4})\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re)) return std::nullopt;
  const std::string a = m[1].str();
  const std::string b = m[2].str();
  int first = std::stoi(a);
  if (a.size() == 2) first += 2000;
  int second = std::stoi(b);
  if (b.size() == 2) second += (first / 100) * 100;
  if (second != first + 1) return std::nullopt;
  return std::to_string(first) + "-" + std::to_string(second);
}

bool is_canonical_season(std::string_view text) {
  auto c = canonical_season(text);
  return c && *c == text;
}

std::string normalize_name(std::string_view raw) {
  std::string spaced;
  spaced.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // U+00A0 no-break space
    if (static_cast<unsigned char>(raw[i]) == 0xC2 && i + 1 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0xA0) {
      spaced.push_back(' ');
      ++i;
      continue;
    }
    spaced.push_back(raw[i]);
  }

  std::string collapsed;
  collapsed.reserve(spaced.size());
  bool pending_space = false;
  for (char c : spaced) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(' ');
    pending_space = false;
    collapsed.push_back(c);
  }

  const bool ascii = std::all_of(collapsed.begin(), collapsed.end(),
                                 [](unsigned char c) { return c < 0x80; });
  if (ascii) return collapsed;
  try {
    static const std::locale loc = boost::locale::generator{}("en_US.UTF-8");
    return boost::locale::normalize(collapsed, boost::locale::norm_nfc, loc);
  } catch (const std::exception&) {
    return collapsed;  // invalid UTF-8 stays as-is
  }
}

std::vector<EventAnnotation> parse_labels_file(std::string_view bytes, const std::string& game_id) {
  const json doc = parse_json(bytes);
  const json& anns = require(doc, "annotations", "$");
  if (!anns.is_array()) throw SchemaError("$.annotations", "expected an array");

  std::vector<EventAnnotation> out;
  out.reserve(anns.size());
  for (std::size_t i = 0; i < anns.size(); ++i) {
    const json& a = anns[i];
    const std::string path = "$.annotations[" + std::to_string(i) + "]";
    EventAnnotation ev;
    ev.game_id = game_id;
    ev.label = normalize_name(require_string(a, "label", path));
    if (ev.label.empty()) throw SchemaError(path + ".label", "empty label");
    const std::string time = require_string(a, "gameTime", path);
    try {
      std::tie(ev.half, ev.clock) = parse_game_time(time);
    } catch (const ValueError& e) {
      throw ValueError(path + ".gameTime: " + e.what());
    }
    ev.team_side = parse_team_side(require_string(a, "team", path), path + ".team");
    ev.visibility = optional_string(a, "visibility", path);
    if (auto pos = optional_string(a, "position", path)) {
      auto v = parse_int(*pos);
      if (!v) throw ValueError(path + ".position: not an integer");
      ev.position_ms = *v;
    }
    out.push_back(std::move(ev));
  }
  return out;
}

std::pair<GameRecord, std::vector<PlayerEntry>> parse_captions_file(std::string_view bytes,
                                                                    const std::string& game_id,
                                                                    std::string_view league,
                                                                    std::string_view season) {
  const json doc = parse_json(bytes);
  GameRecord g;
  g.game_id = game_id;
  g.home_team = normalize_name(require_string(doc, "gameHomeTeam", "$"));
  g.away_team = normalize_name(require_string(doc, "gameAwayTeam", "$"));
  if (g.home_team.empty()) throw SchemaError("$.gameHomeTeam", "empty team name");
  if (g.away_team.empty()) throw SchemaError("$.gameAwayTeam", "empty team name");
  std::tie(g.score_home, g.score_away) =
      parse_score(require_string(doc, "gameScore", "$"), "$.gameScore");
  g.date = parse_date(require_string(doc, "gameDate", "$"), "$.gameDate");
  g.venue = optional_name(doc, "venue", "$");
  g.referee = optional_name(doc, "referee", "$");
  g.round = optional_string(doc, "round", "$");

  const std::string raw_league = optional_string(doc, "league", "$").value_or(std::string(league));
  g.league = normalize_name(raw_league);
  const std::string raw_season = optional_string(doc, "season", "$").value_or(std::string(season));
  g.season = canonical_season(raw_season).value_or(normalize_name(raw_season));

  std::vector<PlayerEntry> players;
  if (auto lineup = doc.find("lineup"); lineup != doc.end() && !lineup->is_null()) {
    if (!lineup->is_object()) throw SchemaError("$.lineup", "expected an object");
    for (auto [key, side] : {std::pair{"home", TeamSide::Home}, std::pair{"away", TeamSide::Away}}) {
      auto it = lineup->find(key);
      if (it == lineup->end() || it->is_null()) continue;
      const std::string path = std::string("$.lineup.") + key;
      if (!it->is_object()) throw SchemaError(path, "expected an object");
      auto coach = optional_name(*it, "coach", path);
      (side == TeamSide::Home ? g.home_coach : g.away_coach) = coach;
      parse_lineup(*it, side, game_id, path, players);
    }
  }
  return {std::move(g), std::move(players)};
}

std::string serialize_labels(std::span<const EventAnnotation> events) {
  json anns = json::array();
  for (const auto& ev : events) {
    json a = {{"gameTime", ev.game_time()},
              {"label", ev.label},
              {"team", std::string(to_string(ev.team_side))}};
    if (ev.visibility) a["visibility"] = *ev.visibility;
    if (ev.position_ms) a["position"] = std::to_string(*ev.position_ms);
    anns.push_back(std::move(a));
  }
  return json{{"annotations", std::move(anns)}}.dump(2);
}

std::string serialize_captions(const GameRecord& game, std::span<const PlayerEntry> players) {
  json doc = {{"gameHomeTeam", game.home_team},
              {"gameAwayTeam", game.away_team},
              {"gameScore", game.score_text()},
              {"gameDate", game.date},
              {"league", game.league},
              {"season", game.season}};
  if (game.round) doc["round"] = *game.round;
  if (game.venue) doc["venue"] = *game.venue;
  if (game.referee) doc["referee"] = *game.referee;

  json lineup = json::object();
  for (auto [key, side] : {std::pair{"home", TeamSide::Home}, std::pair{"away", TeamSide::Away}}) {
    json s = {{"players", json::array()}};
    const auto& coach = side == TeamSide::Home ? game.home_coach : game.away_coach;
    if (coach) s["coach"] = *coach;
    for (const auto& p : players) {
      if (p.team_side != side) continue;
      json jp = {{"name", p.name}, {"facts", json::array()}};
      if (p.shirt_number) jp["number"] = *p.shirt_number;
      if (p.lineup_role) jp["role"] = *p.lineup_role;
      for (const auto& f : p.facts)
        jp["facts"].push_back({{"type", std::to_string(static_cast<int>(f.fact_type))},
                               {"time", json::array({f.time, f.subject_player, f.detail})}});
      s["players"].push_back(std::move(jp));
    }
    lineup[key] = std::move(s);
  }
  doc["lineup"] = std::move(lineup);
  return doc.dump(2);
}

Dataset load_dataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());

  std::vector<fs::path> game_dirs;
  for (auto it = fs::recursive_directory_iterator(root, ec); it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (ec) throw IoError("cannot walk " + root.string() + ": " + ec.message());
    if (it->is_regular_file() && it->path().filename() == kCaptionsFileName)
      game_dirs.push_back(it->path().parent_path());
  }
  std::sort(game_dirs.begin(), game_dirs.end());

  Dataset ds;
  for (const auto& dir : game_dirs) {
    const fs::path rel = fs::relative(dir, root);
    std::vector<std::string> parts;
    for (const auto& c : rel) parts.push_back(c.string());
    const std::string league = parts.size() >= 3 ? parts[parts.size() - 3] : std::string{};
    const std::string season = parts.size() >= 2 ? parts[parts.size() - 2] : std::string{};
    const std::string game_id = rel.generic_string();

    const fs::path labels_path = dir / kLabelsFileName;
    const fs::path captions_path = dir / kCaptionsFileName;
    if (!fs::exists(labels_path)) throw IoError("missing " + labels_path.string());

    try {
      auto [game, players] = parse_captions_file(read_file(captions_path), game_id, league, season);
      ds.games.push_back(std::move(game));
      for (auto& p : players) ds.players.push_back(std::move(p));
    } catch (const SchemaError& e) {
      throw SchemaError(captions_path.string() + ":" + e.path(), e.detail());
    } catch (const ValueError& e) {
      throw ValueError(captions_path.string() + ": " + e.what());
    }
    try {
      for (auto& ev : parse_labels_file(read_file(labels_path), game_id)) ds.events.push_back(std::move(ev));
    } catch (const SchemaError& e) {
      throw SchemaError(labels_path.string() + ":" + e.path(), e.detail());
    } catch (const ValueError& e) {
      throw ValueError(labels_path.string() + ": " + e.what());
    }
  }
  return ds;
}

}  // namespace pitchgraph::ingest
