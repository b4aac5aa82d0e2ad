// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "pitchgraph/error.hpp"
#include "pitchgraph/eval/bank.hpp"
#include "pitchgraph/eval/reports.hpp"
#include "pitchgraph/ingest/parse.hpp"
#include "pitchgraph/kg/builder.hpp"
#include "pitchgraph/nl/ask.hpp"
#include "pitchgraph/nl/entities.hpp"
#include "pitchgraph/query/executor.hpp"
#include "pitchgraph/query/parser.hpp"
#include "pitchgraph/store/snapshot.hpp"
#include "query_gen.hpp"
#include "test_support.hpp"

using namespace pitchgraph;
namespace pt = pitchgraph::testing;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// ---- 1 ---------------------------------------------------------------------

Check fixture_golden() {
  Check c;
  const auto t0 = Clock::now();
  const auto ds = ingest::load_dataset(pt::fixture_dir());
  const auto a = kg::build_all(ds);
  const double elapsed = ms_since(t0);
  const auto golden = nlohmann::json::parse(pt::read_file(pt::golden_dir() / "fixture_stats.json"));
  for (auto kind : {kg::GraphKind::Labels, kg::GraphKind::Captions}) {
    const auto s = a.stats(kind);
    const auto& want = golden.at(std::string(kg::to_string(kind)));
    if (s.nodes != want.at("nodes").get<std::size_t>() || s.edges != want.at("edges").get<std::size_t>())
      c.fail(std::string(kg::to_string(kind)) + " totals differ");
    if (nlohmann::json(s.nodes_by_label) != want.at("nodes_by_label") ||
        nlohmann::json(s.edges_by_type) != want.at("edges_by_type"))
      c.fail(std::string(kg::to_string(kind)) + " per-label/type counts differ");
  }
  const auto b = kg::build_all(ingest::load_dataset(pt::fixture_dir()));
  if (store::snapshot_bytes(a.labels_kg) != store::snapshot_bytes(b.labels_kg) ||
      store::snapshot_bytes(a.captions_kg) != store::snapshot_bytes(b.captions_kg) ||
      a.entity_dict.to_json().dump() != b.entity_dict.to_json().dump() ||
      kg::stats_json(a).dump() != kg::stats_json(b).dump())
    c.fail("rebuild not byte-identical");
  if (elapsed >= 1000) c.fail("build took " + std::to_string(elapsed) + " ms");
  if (c.ok) {
    std::ostringstream os;
    os << "labels " << a.labels_kg.node_count() << "/" << a.labels_kg.edge_count() << ", captions "
       << a.captions_kg.node_count() << "/" << a.captions_kg.edge_count() << ", " << static_cast<int>(elapsed)
       << " ms";
    c.detail = os.str();
  }
  return c;
}

// ---- 2 ---------------------------------------------------------------------

Check construction_invariants() {
  Check c;
  std::mt19937_64 rng(20240501);
  std::size_t violations = 0, draws = 0, events = 0, facts = 0;
  for (int i = 0; i < 500; ++i) {
    const auto ds = pt::random_dataset(rng);
    const auto out = kg::build_all(ds);
    const auto v = pt::invariant_violations(out, ds);
    if (!v.empty() && c.ok) c.fail("dataset " + std::to_string(i) + ": " + v.front());
    violations += v.size();
    for (const auto& g : ds.games) draws += g.score_home == g.score_away;
    events += out.labels_kg.label_count("Event");
    facts += out.captions_kg.label_count("Fact");
  }
  if (draws == 0) c.fail("generator produced no draws");
  if (c.ok)
    c.detail = "500 datasets, " + std::to_string(events) + " events, " + std::to_string(facts) + " facts, " +
               std::to_string(draws) + " draws, 0 violations";
  else
    c.detail += " (" + std::to_string(violations) + " violations)";
  return c;
}

// ---- 3 ---------------------------------------------------------------------

Check density_formula() {
  Check c;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    pt::RandomGraphSpec spec;
    spec.nodes = 2 + rng() % 80;
    spec.edges = rng() % (spec.nodes * 3);
    const auto g = pt::random_graph(rng, spec);
    std::size_t e = 0;
    for (const auto& x : g.edges()) e += (void(x), 1);
    const double n = static_cast<double>(g.nodes().size());
    const double naive = static_cast<double>(e) / (n * (n - 1));
    if (store::density(g) != naive) c.fail("graph " + std::to_string(i) + " differs");
  }
  store::Graph two;
  const auto a = two.add_node("N");
  two.add_edge(a, two.add_node("N"), "E");
  if (store::density(two) != 0.5) c.fail("two-node graph is not 0.5");
  store::Graph full;
  std::vector<store::NodeId> ids;
  for (int i = 0; i < 7; ++i) ids.push_back(full.add_node("N"));
  for (auto x : ids)
    for (auto y : ids)
      if (x != y) full.add_edge(x, y, "E");
  if (store::density(full) != 1.0) c.fail("complete digraph is not 1.0");
  store::Graph one;
  one.add_node("N");
  try {
    (void)store::density(one);
    c.fail("one-node graph did not raise");
  } catch (const DegenerateGraphError&) {
  }
  if (c.ok) c.detail = "200 random digraphs exact; 2-node 0.5; complete 1.0";
  return c;
}

// ---- 4 ---------------------------------------------------------------------

Check oracle_equivalence() {
  Check c;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(4);
  constexpr int kPairs = 1000;
  int nonempty = 0;
  for (int i = 0; i < kPairs; ++i) {
    const auto gq = pt::random_query(rng);
    pt::RandomGraphSpec spec;
    spec.nodes = 4 + rng() % 57;  // <= 60
    spec.edges = rng() % (spec.nodes * 2 + 1);
    auto g = pt::random_graph(rng, spec);
    g.freeze();
    const auto q = query::parse(gq.text);
    const auto fast = query::execute(q, g);
    const auto slow = query::reference_execute(q, g);
    if (fast.columns != slow.columns || !pt::same_multiset(fast.rows, slow.rows, !gq.has_limit)) {
      c.fail("pair " + std::to_string(i) + ": " + gq.text);
      break;
    }
    nonempty += !fast.rows.empty();
  }
  const double s = ms_since(t0) / 1000.0;
  if (s >= 60) c.fail("took " + std::to_string(s) + " s");
  if (c.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d pairs identical (%d non-empty), %.1f s", kPairs, nonempty, s);
    c.detail = buf;
  }
  return c;
}

// ---- 5 ---------------------------------------------------------------------

Check home_goals_example(const nl::Pipeline& p) {
  Check c;
  const auto o = p.ask("Give me the total home goals for Bayern Munich in the 2014-15 season.");
  if (!o.ok()) {
    c.fail(o.error->message);
    return c;
  }
  try {
    (void)query::parse(o.query_text);
  } catch (const Error& e) {
    c.fail(std::string("query does not parse: ") + e.what());
  }
  // Hand count: 3 home goals vs Leverkusen plus 2 vs Dortmund.
  if (o.context.rows.size() != 1 || o.context.rows[0].size() != 1 ||
      o.context.rows[0][0] != query::Value(std::int64_t{5}))
    c.fail("context is not a single count of 5");
  if (o.answer.find('5') == std::string::npos) c.fail("answer lacks 5: " + o.answer);
  const auto text = o.to_text();
  const auto g = text.find("Generated Cypher:"), f = text.find("Full Context:"), r = text.find("Result:");
  if (g == std::string::npos || f == std::string::npos || r == std::string::npos || !(g < f && f < r))
    c.fail("sections missing or out of order");
  if (c.ok) c.detail = "count 5; \"" + o.answer + "\"";
  return c;
}

// ---- 6 ---------------------------------------------------------------------

Check category_coverage(const nl::Pipeline& p) {
  Check c;
  const auto bank = eval::load_bank(pt::data_dir() / "questions.jsonl");
  std::set<int> passing;
  for (const auto& e : bank) {
    const auto o = p.ask(e.question);
    bool good = o.ok() && o.category == e.category;
    if (good) {
      try {
        (void)query::parse(o.query_text);
      } catch (const Error&) {
        good = false;
      }
    }
    good = good && eval::judge(e.gold, o.repaired_question, o.answer, p.graphs().entity_dict);
    if (good) passing.insert(e.category);
    else c.fail(e.id + " (Q" + std::to_string(e.category) + ")");
  }
  if (passing.size() != 23) c.fail(std::to_string(passing.size()) + "/23 categories");
  if (c.ok) c.detail = "23/23 categories, " + std::to_string(bank.size()) + " bank questions";
  return c;
}

// ---- 7 ---------------------------------------------------------------------

Check improvement_formula(const nl::Pipeline& p) {
  Check c;
  const auto t4 = nlohmann::json::parse(pt::read_file(pt::data_dir() / ".." / "baselines" / "timings.json"));
  int rows = 0;
  for (const auto& [id, row] : t4.at("rows").items()) {
    const double got = eval::improvement_pct(row.at("baseline"), row.at("reported_ours"));
    const double want = row.at("reported_improvement_pct");
    if (std::abs(got - want) > 0.01) c.fail(id + ": " + std::to_string(got) + " vs " + std::to_string(want));
    ++rows;
  }
  if (rows != 10) c.fail("expected 10 rows");
  const auto bank = eval::default_subset(eval::load_bank(pt::data_dir() / "questions.jsonl"));
  std::vector<double> medians;
  for (const auto& e : bank) {
    medians.push_back(eval::warm_median(eval::time_reps([&] { (void)p.ask(e.question); }, 5)));
  }
  std::sort(medians.begin(), medians.end());
  const double median = (medians[4] + medians[5]) / 2;
  if (median >= 100) c.fail("median ask " + std::to_string(median) + " ms");
  if (c.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "10/10 rows within 0.01; median ask %.3f ms", median);
    c.detail = buf;
  }
  return c;
}

// ---- 8 ---------------------------------------------------------------------

Check accuracy_eq(const nl::Pipeline& p) {
  Check c;
  // Synthetic 10x5 matrices with exactly k correct cells, in shuffled positions.
  std::mt19937_64 rng(8);
  for (std::size_t k : {32u, 18u}) {
    std::vector<bool> cells(50, false);
    std::fill_n(cells.begin(), k, true);
    std::shuffle(cells.begin(), cells.end(), rng);
    eval::AccuracyReport r;
    for (int q = 0; q < 10; ++q) {
      r.ids.push_back("Q" + std::to_string(q + 1));
      r.matrix.emplace_back(cells.begin() + q * 5, cells.begin() + q * 5 + 5);
    }
    const double want = k == 32 ? 64.0 : 36.0;
    if (r.accuracy() != want) c.fail(std::to_string(k) + " correct gave " + std::to_string(r.accuracy()));
  }
  const auto bank = eval::load_bank(pt::data_dir() / "questions.jsonl");
  eval::AccuracyOptions opt;
  opt.iterations = 5;
  const auto r = eval::run_accuracy(bank, p, opt);
  if (r.self_consistency() != 100.0) c.fail("self-consistency " + std::to_string(r.self_consistency()));
  if (c.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "32/50 -> 64%%, 18/50 -> 36%%; fixture bank x5: %.0f%% consistent, %zu/%zu correct",
                  r.self_consistency(), r.correct(), r.total());
    c.detail = buf;
  }
  return c;
}

// ---- 9 ---------------------------------------------------------------------

// Independent Levenshtein, case-insensitive.
std::size_t lev(const std::string& a, const std::string& b) {
  const auto low = [](char ch) { return static_cast<char>(std::tolower(static_cast<unsigned char>(ch))); };
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (low(a[i - 1]) != low(b[j - 1]))});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Check entity_repair(const kg::EntityDictionary& dict) {
  Check c;
  const auto r = nl::repair_entities("Give me the total home goals for Bayern Munche in the 2014-15 season.", dict);
  if (r.repairs.size() != 1 || r.repairs[0].replacement != "Bayern Munich" ||
      lev("Bayern Munche", "Bayern Munich") > nl::repair_threshold(13))
    c.fail("Bayern Munche not repaired");
  std::vector<std::string> names;
  for (const auto* e : dict.entries())
    if (!e->kinds.count(kg::EntityKind::League)) names.push_back(e->name);
  for (const auto& n : names) {
    const auto q = "Tell me about " + n + ".";
    if (nl::repair_entities(q, dict).text != q) c.fail("exact name changed: " + n);
  }
  std::mt19937_64 rng(9);
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  int repaired = 0;
  for (int i = 0; i < 100; ++i) {
    std::string name = names[rng() % names.size()];
    if (name.size() > 3) {
      const std::size_t at = 1 + rng() % (name.size() - 1);
      if (rng() % 2) name[at] = letters[rng() % 26];
      else name.erase(at, 1);
    }
    const auto q = "How many goals did " + name + " score?";
    const auto once = nl::repair_entities(q, dict);
    const auto twice = nl::repair_entities(once.text, dict);
    if (twice.text != once.text || !twice.repairs.empty()) c.fail("not idempotent: " + q);
    for (const auto& rep : once.repairs) {
      if (!rep.original.empty() && rep.original.find('.') == std::string::npos &&
          rep.original.find(' ') == rep.replacement.find(' ') &&
          lev(rep.original, rep.replacement) != rep.distance)
        c.fail("distance disagrees with oracle: " + rep.original);
    }
    repaired += !once.repairs.empty();
  }
  if (repaired < 50) c.fail("only " + std::to_string(repaired) + " of 100 repaired");
  if (c.ok)
    c.detail = "Bayern Munche -> Bayern Munich; " + std::to_string(names.size()) + " exact names untouched; " +
               std::to_string(repaired) + "/100 fuzzed repaired, idempotent";
  return c;
}

// ---- 10 --------------------------------------------------------------------

std::vector<std::string> node_sigs(const store::Graph& g) {
  const auto prop = [](const store::PropertyValue& v) {
    if (v.is_float()) return "f" + std::to_string(std::bit_cast<std::uint64_t>(v.as_float()));
    return std::to_string(static_cast<int>(v.tag())) + v.to_literal();
  };
  std::vector<std::string> out;
  for (const auto& n : g.nodes()) {
    std::string s = n.label;
    for (const auto& [k, v] : n.props) s += "|" + k + "=" + prop(v);
    out.push_back(s);
  }
  for (const auto& e : g.edges()) {
    std::string s = "E" + e.type + ":" + std::to_string(store::raw(e.src)) + ">" + std::to_string(store::raw(e.dst));
    for (const auto& [k, v] : e.props) s += "|" + k + "=" + prop(v);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool round_trips(const store::Graph& g, std::string& why) {
  const auto back = store::snapshot_from_bytes(store::snapshot_bytes(g));
  if (node_sigs(back) != node_sigs(g)) {
    why = "node/edge multiset differs";
    return false;
  }
  if (g.node_count() >= 2 && store::density(back) != store::density(g)) {
    why = "density differs";
    return false;
  }
  return true;
}

Check snapshot_round_trip() {
  Check c;
  std::string why;
  const auto& f = pt::fixture_build();
  if (!round_trips(f.labels_kg, why)) c.fail("labels: " + why);
  if (!round_trips(f.captions_kg, why)) c.fail("captions: " + why);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    pt::RandomGraphSpec spec;
    spec.nodes = rng() % 70;
    spec.edges = spec.nodes ? rng() % (spec.nodes * 3) : 0;
    auto g = pt::random_graph(rng, spec);
    g.freeze();
    if (!round_trips(g, why)) c.fail("random " + std::to_string(i) + ": " + why);
  }
  if (c.ok) c.detail = "fixture (2 graphs) and 100 random graphs preserved exactly";
  return c;
}

}  // namespace

int main() {
  const auto& build = pt::fixture_build();
  const nl::Pipeline pipeline(build);
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"fixture build golden", fixture_golden},
      {"construction-rule invariants", construction_invariants},
      {"density formula", density_formula},
      {"query engine oracle equivalence", oracle_equivalence},
      {"end-to-end home goals example", [&] { return home_goals_example(pipeline); }},
      {"category coverage", [&] { return category_coverage(pipeline); }},
      {"improvement formula golden", [&] { return improvement_formula(pipeline); }},
      {"accuracy formula and consistency", [&] { return accuracy_eq(pipeline); }},
      {"entity repair", [&] { return entity_repair(build.entity_dict); }},
      {"snapshot round-trip", snapshot_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    failures += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " - "
              << c.detail << std::endl;
  }
  return failures;
}
