#include <gtest/gtest.h>

#include <random>

#include "pitchgraph/kg/entity_dictionary.hpp"
#include "pitchgraph/nl/entities.hpp"
#include "test_support.hpp"

using namespace pitchgraph;
namespace pt = pitchgraph::testing;
using nl::repair_entities;

namespace {

const kg::EntityDictionary& dict() { return pt::fixture_build().entity_dict; }

kg::EntityDictionary tiny_dict(std::initializer_list<std::pair<const char*, kg::EntityKind>> names) {
  kg::EntityDictionary d;
  store::NodeId id{0};
  for (const auto& [n, k] : names) d.add(n, k, kg::GraphKind::Captions, id);
  return d;
}

}  // namespace

TEST(Threshold, GrowsWithLength) {
  EXPECT_EQ(nl::repair_threshold(0), 1u);
  EXPECT_EQ(nl::repair_threshold(1), 1u);
  EXPECT_EQ(nl::repair_threshold(8), 1u);
  EXPECT_EQ(nl::repair_threshold(9), 2u);
  EXPECT_EQ(nl::repair_threshold(13), 2u);
  EXPECT_EQ(nl::repair_threshold(16), 2u);
  EXPECT_EQ(nl::repair_threshold(17), 3u);
}

TEST(Repair, MisspelledTeam) {
  const std::string q = "Give me the total home goals for Bayern Munche in the 2014-15 season.";
  const auto r = repair_entities(q, dict());
  EXPECT_EQ(r.text, "Give me the total home goals for Bayern Munich in the 2014-15 season.");
  ASSERT_EQ(r.repairs.size(), 1u);
  EXPECT_EQ(r.repairs[0].original, "Bayern Munche");
  EXPECT_EQ(r.repairs[0].replacement, "Bayern Munich");
  EXPECT_EQ(r.repairs[0].distance, 2u);
  EXPECT_EQ(r.repairs[0].offset, q.find("Bayern"));
  EXPECT_EQ(r.repairs[0].length, 13u);
  EXPECT_FALSE(r.repairs[0].ambiguous);
  EXPECT_TRUE(r.unresolved.empty());
}

TEST(Repair, BeyondThresholdIsUnresolved) {
  // "Bayern Mnh" is 3 edits away; 10 bytes allow 2.
  const auto r = repair_entities("Goals for Bayern Mnh?", dict());
  EXPECT_TRUE(r.repairs.empty());
  EXPECT_EQ(r.text, "Goals for Bayern Mnh?");
  ASSERT_EQ(r.unresolved.size(), 1u);
  EXPECT_EQ(r.unresolved[0], "Bayern Mnh");
}

TEST(Repair, ExactNamesUntouched) {
  const std::string q = "How many games did Chelsea win against Crystal Palace?";
  const auto r = repair_entities(q, dict());
  EXPECT_EQ(r.text, q);
  EXPECT_TRUE(r.repairs.empty());
  EXPECT_TRUE(r.unresolved.empty());
}

TEST(Repair, CaseOnlyDifferenceKept) {
  const std::string q = "Is chelsea in the database? And CHELSEA?";
  EXPECT_EQ(repair_entities(q, dict()).text, q);
}

TEST(Repair, Abbreviations) {
  auto r = repair_entities("How many goals did E. Hazard score?", dict());
  EXPECT_EQ(r.text, "How many goals did Eden Hazard score?");
  r = repair_entities("Games that Oliver M. refereed", dict());
  EXPECT_EQ(r.text, "Games that Michael Oliver refereed");
  r = repair_entities("Who assisted Lewandowski?", dict());
  EXPECT_EQ(r.text, "Who assisted Robert Lewandowski?");
}

TEST(Repair, TieGoesToSmallestAndIsFlagged) {
  const auto d = tiny_dict({{"Alan Smyth", kg::EntityKind::Player}, {"Alan Smith", kg::EntityKind::Player}});
  const auto r = repair_entities("Cards for Alan Smoth", d);
  ASSERT_EQ(r.repairs.size(), 1u);
  EXPECT_EQ(r.repairs[0].replacement, "Alan Smith");
  EXPECT_TRUE(r.repairs[0].ambiguous);
}

TEST(Repair, QuestionWordsAndLeaguesAreNotNames) {
  const auto r = repair_entities("Which teams played in the EPL and the Premier League in 15-2016?", dict());
  EXPECT_TRUE(r.repairs.empty());
  EXPECT_TRUE(r.unresolved.empty());
}

TEST(Repair, UnknownTeamsListed) {
  const auto r = repair_entities("What league is Manchester United, Arsenal, Chelsea in?", dict());
  EXPECT_EQ(r.unresolved, (std::vector<std::string>{"Manchester United", "Arsenal"}));
}

TEST(Repair, IdempotentOnFuzzedNames) {
  std::vector<std::string> names;
  for (const auto* e : dict().entries()) {
    if (e->kinds.count(kg::EntityKind::League) == 0) names.push_back(e->name);
  }
  ASSERT_FALSE(names.empty());
  std::mt19937_64 rng(31);
  const std::vector<std::string> frames = {"How many goals did {} score?", "Is {} in the database?",
                                           "List the coaches for {}.", "Tell me about {}, please."};
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  int repaired = 0;
  for (int i = 0; i < 100; ++i) {
    std::string name = names[rng() % names.size()];
    // One substitution or deletion away from the original, past the first letter.
    if (name.size() > 3) {
      const std::size_t at = 1 + rng() % (name.size() - 1);
      if (rng() % 2 == 0) name[at] = letters[rng() % letters.size()];
      else name.erase(at, 1);
    }
    std::string q = frames[rng() % frames.size()];
    q.replace(q.find("{}"), 2, name);
    const auto once = repair_entities(q, dict());
    const auto twice = repair_entities(once.text, dict());
    EXPECT_EQ(twice.text, once.text) << q;
    EXPECT_TRUE(twice.repairs.empty()) << q;
    for (const auto& rep : once.repairs) {
      EXPECT_NE(dict().find(rep.replacement), nullptr);
      EXPECT_LE(rep.distance, nl::repair_threshold(rep.original.size()));
    }
    repaired += !once.repairs.empty();
  }
  EXPECT_GT(repaired, 50);
}

TEST(Leagues, Aliases) {
  EXPECT_EQ(nl::league_from_alias("EPL"), "england_epl");
  EXPECT_EQ(nl::league_from_alias("english premier league"), "england_epl");
  EXPECT_EQ(nl::league_from_alias("UCL"), "europe_uefa-champions-league");
  EXPECT_EQ(nl::league_from_alias("Serie A"), "italy_serie-a");
  EXPECT_EQ(nl::league_from_alias("germany_bundesliga"), "germany_bundesliga");
  EXPECT_FALSE(nl::league_from_alias("Eredivisie").has_value());
}

TEST(Mentions, SlotsFromQuestion) {
  const auto m = nl::find_mentions(
      "Give me all games in the EPL with yellow cards in the first half in the 15-2016 season.", dict());
  EXPECT_EQ(m.leagues, (std::vector<std::string>{"england_epl"}));
  EXPECT_EQ(m.season, "2015-2016");
  EXPECT_EQ(m.events, (std::vector<std::string>{"Yellow card"}));
  EXPECT_EQ(m.half, 1);
  EXPECT_EQ(m.facts, (std::vector<ingest::FactType>{ingest::FactType::YellowCard}));
  EXPECT_TRUE(m.teams.empty());
}

TEST(Mentions, NamesInOrder) {
  const auto m = nl::find_mentions(
      "How many goals did Eden Hazard score in the game between Bournemouth and chelsea?", dict());
  EXPECT_EQ(m.players, (std::vector<std::string>{"Eden Hazard"}));
  EXPECT_EQ(m.teams, (std::vector<std::string>{"Bournemouth", "Chelsea"}));
  EXPECT_FALSE(m.season.has_value());
  EXPECT_EQ(m.facts, (std::vector<ingest::FactType>{ingest::FactType::Goal}));
}

TEST(Mentions, LongestNameWins) {
  const auto d = tiny_dict({{"Real", kg::EntityKind::Team}, {"Real Madrid", kg::EntityKind::Team}});
  const auto m = nl::find_mentions("Games of Real Madrid", d);
  EXPECT_EQ(m.teams, (std::vector<std::string>{"Real Madrid"}));
}

TEST(Mentions, BothCardColours) {
  const auto m = nl::find_mentions("How many yellow and red cards were given?", dict());
  EXPECT_EQ(m.facts, (std::vector<ingest::FactType>{ingest::FactType::YellowCard, ingest::FactType::RedCard}));
}
