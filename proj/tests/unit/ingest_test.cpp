#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include <json.hpp>

#include "pitchgraph/error.hpp"
#include "pitchgraph/ingest/parse.hpp"
#include "pitchgraph/ingest/validate.hpp"
#include "test_support.hpp"

namespace pg = pitchgraph;
using namespace pitchgraph::ingest;
using nlohmann::json;

namespace {

std::string labels_doc(const json& annotations) {
  return json{{"UrlLocal", "x/"}, {"annotations", annotations}}.dump();
}

json one_player(const char* name, int number, bool starting, json facts = json::array()) {
  return {{"name", name}, {"number", number}, {"starting", starting}, {"facts", std::move(facts)}};
}

std::string captions_doc(const std::string& score, json home_facts = json::array()) {
  json doc = {
      {"gameHomeTeam", "Chelsea"},
      {"gameAwayTeam", "Crystal Palace"},
      {"gameScore", score},
      {"gameDate", "29/08/2015 - 17:00"},
      {"venue", "Stamford Bridge"},
      {"referee", "Michael Oliver"},
      {"lineup",
       {{"home", {{"coach", "Jose Mourinho"}, {"players", json::array({one_player("Eden Hazard", 10, true, home_facts)})}}},
        {"away", {{"coach", "Alan Pardew"}, {"players", json::array({one_player("Damien Delaney", 27, true)})}}}}},
  };
  return doc.dump();
}

}  // namespace

TEST(ParseLabels, FoulAwayFirstHalf) {
  const auto evs = parse_labels_file(
      labels_doc(json::array({{{"gameTime", "1 - 07:32"}, {"label", "Foul"}, {"team", "away"},
                               {"position", "452000"}, {"visibility", "visible"}}})),
      "g");
  ASSERT_EQ(evs.size(), 1u);
  EXPECT_EQ(evs[0].label, "Foul");
  EXPECT_EQ(evs[0].half, 1);
  EXPECT_EQ(evs[0].clock, 7 * 60 + 32);
  EXPECT_EQ(evs[0].team_side, TeamSide::Away);
  EXPECT_EQ(evs[0].position_ms, 452000);
}

TEST(ParseLabels, NotApplicableTeam) {
  const auto evs = parse_labels_file(
      labels_doc(json::array({{{"gameTime", "1 - 00:00"}, {"label", "Kick-off"}, {"team", "not applicable"}}})),
      "g");
  ASSERT_EQ(evs.size(), 1u);
  EXPECT_EQ(evs[0].team_side, TeamSide::NotApplicable);
}

TEST(ParseLabels, EmptyAnnotations) { EXPECT_TRUE(parse_labels_file(labels_doc(json::array()), "g").empty()); }

TEST(ParseLabels, MissingFieldsAndBadTimes) {
  EXPECT_THROW(parse_labels_file("{}", "g"), pg::SchemaError);
  EXPECT_THROW(parse_labels_file("not json", "g"), pg::SchemaError);
  EXPECT_THROW(parse_labels_file(labels_doc(json::array({{{"label", "Goal"}, {"team", "home"}}})), "g"),
               pg::SchemaError);
  EXPECT_THROW(parse_labels_file(labels_doc(json::array({{{"gameTime", "3 - 01:00"}, {"label", "Goal"},
                                                          {"team", "home"}}})),
                                 "g"),
               pg::ValueError);
  EXPECT_THROW(parse_labels_file(labels_doc(json::array({{{"gameTime", "1 - 01:60"}, {"label", "Goal"},
                                                          {"team", "home"}}})),
                                 "g"),
               pg::ValueError);
  EXPECT_THROW(parse_labels_file(labels_doc(json::array({{{"gameTime", "1 - 01:00"}, {"label", "Goal"},
                                                          {"team", "visitors"}}})),
                                 "g"),
               pg::ValueError);
}

TEST(ParseLabels, OutputLengthEqualsInputLengthRandomized) {
  std::mt19937_64 rng(7);
  const char* teams[] = {"home", "away", "not applicable"};
  for (int round = 0; round < 50; ++round) {
    const int n = static_cast<int>(rng() % 40);
    json arr = json::array();
    for (int i = 0; i < n; ++i) {
      const int half = 1 + static_cast<int>(rng() % 2);
      const int mm = static_cast<int>(rng() % 50);
      const int ss = static_cast<int>(rng() % 60);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%d - %02d:%02d", half, mm, ss);
      arr.push_back({{"gameTime", buf}, {"label", "Foul"}, {"team", teams[rng() % 3]}});
    }
    const auto evs = parse_labels_file(labels_doc(arr), "g");
    ASSERT_EQ(evs.size(), static_cast<std::size_t>(n));
  }
}

TEST(ParseCaptions, ScoreSplit) {
  const auto [game, players] = parse_captions_file(captions_doc("2 - 1"), "g", "england_epl", "2015-16");
  EXPECT_EQ(game.score_home, 2);
  EXPECT_EQ(game.score_away, 1);
  EXPECT_EQ(game.date, "2015-08-29");
  EXPECT_EQ(game.season, "2015-2016");
  EXPECT_EQ(game.league, "england_epl");
  EXPECT_EQ(game.home_coach, "Jose Mourinho");
  EXPECT_EQ(players.size(), 2u);
}

TEST(ParseCaptions, BadScoreIsValueError) {
  EXPECT_THROW(parse_captions_file(captions_doc("2-x"), "g"), pg::ValueError);
  EXPECT_THROW(parse_captions_file(captions_doc("two - one"), "g"), pg::ValueError);
}

TEST(ParseCaptions, YellowCardFact) {
  const auto [game, players] = parse_captions_file(
      captions_doc("2 - 1", json::array({{{"type", 1}, {"time", {"61'", "Eden Hazard", "Foul"}}}})), "g");
  ASSERT_EQ(players[0].facts.size(), 1u);
  EXPECT_EQ(players[0].facts[0].fact_type, FactType::YellowCard);
  EXPECT_EQ(players[0].facts[0].time, "61'");
  EXPECT_EQ(players[0].facts[0].detail, "Foul");
  EXPECT_EQ(players[0].facts[0].subject_player, "Eden Hazard");
}

TEST(ParseCaptions, FactTypeFiveRejected) {
  EXPECT_THROW(parse_captions_file(
                   captions_doc("2 - 1", json::array({{{"type", 5}, {"time", {"10'", "Eden Hazard", "x"}}}})), "g"),
               pg::ValueError);
  EXPECT_THROW(parse_captions_file(
                   captions_doc("2 - 1", json::array({{{"type", "9"}, {"time", {"10'", "Eden Hazard", "x"}}}})), "g"),
               pg::ValueError);
}

TEST(ParseCaptions, CardFactNeedsReason) {
  EXPECT_THROW(parse_captions_file(captions_doc("2 - 1", json::array({{{"type", 2}, {"time", {"10'"}}}})), "g"),
               pg::SchemaError);
}

TEST(ParseCaptions, FactTypesAlwaysValidRandomized) {
  // Any valid code survives parsing with its enum value intact.
  const int valid[] = {1, 2, 3, 4, 6, 7, 8};
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    json facts = json::array();
    std::vector<int> codes;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      const int code = valid[rng() % 7];
      codes.push_back(code);
      json t = rng() % 2 ? json(code) : json(std::to_string(code));
      facts.push_back({{"type", t}, {"time", {std::to_string(rng() % 90) + "'", "Eden Hazard", "detail"}}});
    }
    const auto [game, players] = parse_captions_file(captions_doc("1 - 0", facts), "g");
    ASSERT_EQ(players[0].facts.size(), codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i)
      EXPECT_EQ(static_cast<int>(players[0].facts[i].fact_type), codes[i]);
  }
}

TEST(NormalizeName, Examples) {
  EXPECT_EQ(normalize_name("  bayern  munich "), "bayern munich");
  EXPECT_EQ(normalize_name("Chelsea"), "Chelsea");
  EXPECT_EQ(normalize_name("Crystal  Palace"), "Crystal Palace");
  EXPECT_EQ(normalize_name(""), "");
  EXPECT_EQ(normalize_name("\t Loic Remy\n"), "Loic Remy");
  // Decomposed e + combining acute composes to the single code point.
  EXPECT_EQ(normalize_name("Jose\xcc\x81"), "Jos\xc3\xa9");
}

TEST(Season, Canonicalization) {
  EXPECT_EQ(canonical_season("2014-15"), "2014-2015");
  EXPECT_EQ(canonical_season("2014/2015"), "2014-2015");
  EXPECT_EQ(canonical_season("14-15"), "2014-2015");
  EXPECT_EQ(canonical_season("2014-2015"), "2014-2015");
  EXPECT_FALSE(canonical_season("2014-2016").has_value());
  EXPECT_FALSE(canonical_season("season").has_value());
  EXPECT_TRUE(is_canonical_season("2015-2016"));
  EXPECT_FALSE(is_canonical_season("2015-16"));
}

TEST(GameTime, Parse) {
  EXPECT_EQ(parse_game_time("2 - 45:00"), std::make_pair(2, 2700));
  EXPECT_THROW(parse_game_time("garbage"), pg::ValueError);
}

TEST(Validate, FixtureIsConsistent) {
  const auto report = validate_dataset(pitchgraph::testing::fixture_dataset());
  EXPECT_TRUE(report.accepted()) << report.to_text();
  EXPECT_EQ(report.to_json()["accepted"], true);
}

TEST(Validate, DanglingEvent) {
  Dataset d = pitchgraph::testing::fixture_dataset();
  EventAnnotation ev;
  ev.game_id = "no/such/game";
  ev.label = "Foul";
  d.events.push_back(ev);
  const auto report = validate_dataset(d);
  ASSERT_EQ(report.findings.size(), 1u);
  EXPECT_EQ(report.findings[0].kind, Finding::Kind::DanglingReference);
  EXPECT_FALSE(report.accepted());
}

TEST(Validate, DuplicateGameId) {
  Dataset d = pitchgraph::testing::fixture_dataset();
  d.games.push_back(d.games.front());
  const auto report = validate_dataset(d);
  ASSERT_EQ(report.findings.size(), 1u);
  EXPECT_EQ(report.findings[0].kind, Finding::Kind::DuplicateGameId);
}

TEST(Validate, SeasonFormatViolation) {
  Dataset d = pitchgraph::testing::fixture_dataset();
  d.games.front().season = "2014";
  const auto report = validate_dataset(d);
  ASSERT_EQ(report.findings.size(), 1u);
  EXPECT_EQ(report.findings[0].kind, Finding::Kind::SeasonFormat);
  EXPECT_NE(report.to_text().find("season-format"), std::string::npos);
}

TEST(LoadDataset, FixtureShape) {
  const auto& d = pitchgraph::testing::fixture_dataset();
  EXPECT_EQ(d.games.size(), 4u);
  EXPECT_EQ(d.events.size(), 40u);
  EXPECT_EQ(d.players.size(), 56u);
  std::size_t facts = 0;
  for (const auto& p : d.players) facts += p.facts.size();
  EXPECT_EQ(facts, 12u);
  for (const auto& g : d.games) EXPECT_TRUE(is_canonical_season(g.season));
}

TEST(LoadDataset, MissingDirectoryIsIoError) {
  EXPECT_THROW(load_dataset("/nonexistent/pitchgraph"), pg::IoError);
}

TEST(RoundTrip, EveryFixtureFileParsesSerializesParses) {
  namespace fs = std::filesystem;
  std::size_t games = 0;
  for (const auto& entry : fs::recursive_directory_iterator(pitchgraph::testing::fixture_dir())) {
    if (entry.path().filename() != kCaptionsFileName) continue;
    ++games;
    const auto dir = entry.path().parent_path();
    const auto captions = pitchgraph::testing::read_file(entry.path());
    const auto labels = pitchgraph::testing::read_file(dir / kLabelsFileName);

    const auto [game, players] = parse_captions_file(captions, "id", "lg", "2014-2015");
    const auto [game2, players2] = parse_captions_file(serialize_captions(game, players), "id", "other", "1999-2000");
    EXPECT_EQ(game, game2) << dir;
    EXPECT_EQ(players, players2) << dir;

    const auto events = parse_labels_file(labels, "id");
    EXPECT_EQ(events, parse_labels_file(serialize_labels(events), "id")) << dir;
  }
  EXPECT_EQ(games, 4u);
}
