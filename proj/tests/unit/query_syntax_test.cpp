#include <gtest/gtest.h>

#include <random>

#include "pitchgraph/error.hpp"
#include "pitchgraph/query/lexer.hpp"
#include "pitchgraph/query/parser.hpp"

using namespace pitchgraph;
using namespace pitchgraph::query;
using TK = TokenKind;

namespace {

std::vector<TK> kinds(std::string_view src) {
  std::vector<TK> out;
  for (const auto& t : tokenize(src)) out.push_back(t.kind);
  return out;
}

ExprPtr var(std::string n) { return make_expr(Variable{std::move(n)}); }

}  // namespace

TEST(Tokenize, MatchPrefix) {
  const auto toks = tokenize("MATCH (g:Game)");
  ASSERT_EQ(toks.size(), 6u);
  EXPECT_EQ(kinds("MATCH (g:Game)"),
            (std::vector<TK>{TK::Match, TK::LParen, TK::Ident, TK::Colon, TK::Ident, TK::RParen}));
  EXPECT_EQ(toks[2].text, "g");
  EXPECT_EQ(toks[4].text, "Game");
  EXPECT_EQ(toks[4].offset, 9u);
}

TEST(Tokenize, StringLiterals) {
  auto t = tokenize("'2014-2015'");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].kind, TK::String);
  EXPECT_EQ(t[0].text, "2014-2015");
  t = tokenize(R"("it's" 'a\'b\n')");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].text, "it's");
  EXPECT_EQ(t[1].text, "a'b\n");
}

TEST(Tokenize, UnterminatedStringAtQuote) {
  try {
    tokenize("MATCH (g:Game 'abc");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.offset(), 14u);
  }
}

TEST(Tokenize, IllegalCharacter) {
  try {
    tokenize("MATCH (n) RETURN n % 2");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.offset(), 19u);
  }
  EXPECT_THROW(tokenize("'bad \\q escape'"), LexError);
  EXPECT_THROW(tokenize("99999999999999999999"), LexError);
}

TEST(Tokenize, KeywordsCaseInsensitiveAndBackticks) {
  EXPECT_EQ(kinds("match Where rEtUrN"), (std::vector<TK>{TK::Match, TK::Where, TK::Return}));
  const auto t = tokenize("`weird name``s` <> != <= >= <-");
  EXPECT_EQ(t[0].kind, TK::Ident);
  EXPECT_EQ(t[0].text, "weird name`s");
  EXPECT_EQ(kinds("<> != <= >= <-"), (std::vector<TK>{TK::Neq, TK::Neq, TK::Le, TK::Ge, TK::Lt, TK::Dash}));
  EXPECT_EQ(kinds("1 2.5 // trailing comment"), (std::vector<TK>{TK::Integer, TK::Float}));
}

TEST(Parse, GoalCountShape) {
  const Query q = parse(
      "MATCH (t:Team {name:'Bayern Munich'})<-[:ASSOCIATED_TO]-(e:Event {name:'Goal'}) RETURN count(e)");

  Query want;
  PathPattern p;
  p.nodes.push_back(NodePattern{"t", "Team", {{"name", Value("Bayern Munich")}}});
  p.nodes.push_back(NodePattern{"e", "Event", {{"name", Value("Goal")}}});
  p.rels.push_back(RelPattern{"", "ASSOCIATED_TO", RelDir::Left});
  want.match.push_back(p);
  want.items.push_back(ReturnItem{make_expr(Aggregate{AggFn::Count, false, var("e")}), std::nullopt});
  EXPECT_TRUE(equal(q, want));

  ASSERT_EQ(q.match.size(), 1u);
  ASSERT_EQ(q.items.size(), 1u);
  EXPECT_TRUE(contains_aggregate(*q.items[0].expr));
}

TEST(Parse, FullClauseSet) {
  const Query q = parse(
      "match (g:Game)-[r:HOME_TEAM]-(t), (p:Player) where g.season = '2014-2015' and not t.name "
      "contains 'x' or p.name is not null return distinct t.name as team, sum(g.score_home) "
      "order by team desc, t.name limit 3;");
  EXPECT_EQ(q.match.size(), 2u);
  EXPECT_EQ(q.match[0].rels[0].dir, RelDir::Both);
  EXPECT_EQ(q.match[0].rels[0].var, "r");
  EXPECT_TRUE(q.distinct);
  ASSERT_EQ(q.order_by.size(), 2u);
  EXPECT_TRUE(q.order_by[0].descending);
  EXPECT_FALSE(q.order_by[1].descending);
  EXPECT_EQ(q.limit, 3);
  // OR binds loosest.
  const auto* top = std::get_if<Logical>(&q.where->node);
  ASSERT_NE(top, nullptr);
  EXPECT_EQ(top->op, LogicOp::Or);
  EXPECT_EQ(column_name(q.items[0]), "team");
  EXPECT_EQ(column_name(q.items[1]), "sum(g.score_home)");
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("MATCH (n) RETURN n LIMIT 0"), ParseError);
  EXPECT_THROW(parse("WHERE n.x = 1 MATCH (n) RETURN n"), ParseError);
  EXPECT_THROW(parse("MATCH (a)-->(b) RETURN a"), ParseError);  // type required
  EXPECT_THROW(parse("MATCH (a)<-[:X]->(b) RETURN a"), ParseError);
  EXPECT_THROW(parse("MATCH (a) RETURN count(a"), ParseError);
  EXPECT_THROW(parse("MATCH (a) RETURN sum(*)"), ParseError);
  EXPECT_THROW(parse("MATCH (a) RETURN a extra"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, ErrorCarriesOffsetAndExpectedSet) {
  try {
    parse("MATCH (n) RETURN n LIMIT 0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 25u);
  }
  try {
    parse("MATCH (n RETURN n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 9u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parse, UnknownTypesAreSyntacticallyFine) {
  EXPECT_NO_THROW(parse("MATCH (a:Nope)-[:PLAYZ_FOR]->(b) RETURN a.whatever"));
}

TEST(Parse, NegativeLiteralAndNulls) {
  const Query q = parse("MATCH (e:Event) WHERE e.clock > -5 AND e.team IS NULL RETURN e");
  const auto& land = std::get<Logical>(q.where->node);
  const auto& cmp = std::get<Comparison>(land.lhs->node);
  EXPECT_EQ(std::get<Literal>(cmp.rhs->node).value, Value(-5));
  EXPECT_FALSE(std::get<IsNull>(land.rhs->node).negated);
}

// Round trip over a corpus of hand-written queries.
TEST(PrettyPrint, RoundTripCorpus) {
  const std::vector<std::string> corpus = {
      "MATCH (t:Team {name:'Bayern Munich'})<-[:ASSOCIATED_TO]-(e:Event {name:'Goal'}) RETURN count(e)",
      "MATCH (n) RETURN n",
      "MATCH (p:Player)-[:PLAYS_FOR]->(t:Team) WHERE t.name = 'Chelsea' RETURN p.name ORDER BY p.name LIMIT 5",
      "MATCH (a)-[r:WINNER]-(b), (c:Team) RETURN DISTINCT a, count(DISTINCT c) AS n ORDER BY n DESC",
      "MATCH (g:Game) WHERE NOT (g.score_home > 1 OR g.score_away <= 0) AND g.venue IS NOT NULL "
      "RETURN collect(g.date), sum(g.score_home)",
      "MATCH (`odd var`:`Odd Label` {`the key`: 'it\\'s'}) RETURN `odd var`.`the key` AS `match`",
      "MATCH (e:Event) WHERE e.clock >= 1.5 AND e.team <> 'home' AND e.name CONTAINS 'oa' RETURN e.clock",
      "MATCH (n) WHERE n.x = true OR n.y = false OR n.z = null RETURN count(*)",
  };
  for (const auto& src : corpus) {
    const Query q = parse(src);
    const std::string printed = to_cypher(q);
    const Query again = parse(printed);
    EXPECT_TRUE(equal(q, again)) << src << "\n  printed: " << printed;
    EXPECT_EQ(to_cypher(again), printed);
  }
}

namespace {

// Generator for random ASTs over the whole grammar.
class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  Query query() {
    Query q;
    vars_.clear();
    const int paths = pick(1, 2);
    for (int i = 0; i < paths; ++i) {
      PathPattern p;
      p.nodes.push_back(node());
      const int hops = pick(0, 2);
      for (int h = 0; h < hops; ++h) {
        RelPattern r;
        if (pick(0, 2) == 0) r.var = "r" + std::to_string(rel_counter_++);
        r.type = pick_of({"PLAYS_FOR", "WINNER", "IS_PART_OF", "Odd Type"});
        r.dir = static_cast<RelDir>(pick(0, 2));
        p.rels.push_back(r);
        p.nodes.push_back(node());
      }
      q.match.push_back(p);
    }
    if (vars_.empty()) {
      q.match[0].nodes[0].var = "n";
      vars_.push_back("n");
    }
    if (pick(0, 1)) q.where = expr(3, false);
    q.distinct = pick(0, 3) == 0;
    const int items = pick(1, 3);
    for (int i = 0; i < items; ++i) {
      ReturnItem it{pick(0, 2) == 0 ? aggregate() : expr(1, false), std::nullopt};
      if (pick(0, 2) == 0) it.alias = "c" + std::to_string(i);
      q.items.push_back(it);
    }
    const int keys = pick(0, 2);
    for (int i = 0; i < keys; ++i) q.order_by.push_back(OrderItem{expr(1, false), pick(0, 1) == 1});
    if (pick(0, 2) == 0) q.limit = pick(1, 1000);
    return q;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::string pick_of(std::initializer_list<const char*> xs) {
    return *(xs.begin() + pick(0, static_cast<int>(xs.size()) - 1));
  }

  NodePattern node() {
    NodePattern n;
    if (pick(0, 3) != 0) {
      n.var = pick_of({"a", "b", "c", "Match", "x y"});
      vars_.push_back(n.var);
    }
    if (pick(0, 1)) n.label = pick_of({"Game", "Team", "Player", "Odd Label"});
    if (pick(0, 3) == 0) n.props.emplace_back(pick_of({"name", "season"}), literal());
    return n;
  }

  Value literal() {
    switch (pick(0, 5)) {
      case 0: return Value();
      case 1: return Value(pick(0, 1) == 1);
      case 2: return Value(static_cast<std::int64_t>(pick(-50, 50)));
      case 3: return Value(pick(-100, 100) / 4.0);
      case 4: return Value(std::string("q'uo\"te\\n"));
      default: return Value(std::string("plain"));
    }
  }

  ExprPtr atom() {
    switch (pick(0, 2)) {
      case 0: return make_expr(Literal{literal()});
      case 1: return make_expr(Variable{vars_[pick(0, static_cast<int>(vars_.size()) - 1)]});
      default:
        return make_expr(PropertyAccess{vars_[pick(0, static_cast<int>(vars_.size()) - 1)],
                                        pick_of({"name", "clock", "the key"})});
    }
  }

  ExprPtr aggregate() {
    const auto fn = static_cast<AggFn>(pick(0, 2));
    if (fn == AggFn::Count && pick(0, 2) == 0) return make_expr(Aggregate{fn, false, nullptr});
    return make_expr(Aggregate{fn, pick(0, 1) == 1, atom()});
  }

  ExprPtr expr(int depth, bool) {
    if (depth == 0) return atom();
    switch (pick(0, 5)) {
      case 0: return make_expr(Logical{pick(0, 1) ? LogicOp::And : LogicOp::Or, expr(depth - 1, false), expr(depth - 1, false)});
      case 1: return make_expr(Not{expr(depth - 1, false)});
      case 2: return make_expr(IsNull{atom(), pick(0, 1) == 1});
      case 3:
      case 4: return make_expr(Comparison{static_cast<CompOp>(pick(0, 6)), atom(), atom()});
      default: return atom();
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
  int rel_counter_ = 0;
};

}  // namespace

TEST(PrettyPrint, RoundTripRandomAsts) {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    AstGen gen(seed);
    const Query q = gen.query();
    const std::string printed = to_cypher(q);
    Query again;
    ASSERT_NO_THROW(again = parse(printed)) << printed;
    EXPECT_TRUE(equal(q, again)) << "seed " << seed << ": " << printed;
  }
}

// Any byte soup either parses or raises a positioned error; nothing else.
TEST(Parse, Totality) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "MATCHRETURNWHERE (){}[]:,.-<>=!*;'\"`\\ abn019_\n";
  const std::vector<std::string> seeds = {
      "MATCH (a:Team)-[:WINNER]->(g:Game) WHERE g.score > 1 RETURN a.name, count(*) ORDER BY a.name LIMIT 2",
      "MATCH (n) RETURN n",
  };
  std::size_t parsed = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    if (i % 2 == 0) {
      s = seeds[i % seeds.size()];
      const int edits = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int k = 0; k < edits && !s.empty(); ++k) {
        const auto at = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
        switch (rng() % 3) {
          case 0: s.erase(at, 1); break;
          case 1: s.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
          default: s[at] = alphabet[rng() % alphabet.size()];
        }
      }
    } else {
      const auto len = std::uniform_int_distribution<std::size_t>(0, 40)(rng);
      for (std::size_t k = 0; k < len; ++k) s += static_cast<char>(rng() % 256);
    }
    try {
      parse(s);
      ++parsed;
    } catch (const LexError& e) {
      EXPECT_LE(e.offset(), s.size());
    } catch (const ParseError& e) {
      EXPECT_LE(e.offset(), s.size());
    }
  }
  EXPECT_GT(parsed, 0u);
}
