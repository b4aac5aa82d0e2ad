#include "query_gen.hpp"

#include <algorithm>

namespace pitchgraph::testing {

namespace {

class Gen {
 public:
  explicit Gen(std::mt19937_64& rng) : rng_(rng) {}

  GeneratedQuery run(bool allow_two_paths) {
    std::string match = "MATCH " + path(2);
    if (allow_two_paths && pick(0, 4) == 0) match += ", " + path(1);
    if (nodes_.empty()) {
      // Guarantee at least one named node.
      match = "MATCH (a)";
      nodes_.push_back("a");
      rels_.clear();
    }
    std::string where;
    if (pick(0, 1)) where = " WHERE " + expr(2);

    std::vector<std::string> items;
    bool has_collect = false;
    bool aggregated = pick(0, 2) == 0;
    if (aggregated) {
      if (pick(0, 1)) items.push_back(scalar());
      const int aggs = pick(1, 2);
      for (int i = 0; i < aggs; ++i) {
        std::string agg = aggregate();
        has_collect = has_collect || agg.rfind("collect", 0) == 0;
        items.push_back(agg);
      }
    } else {
      const int n = pick(1, 2);
      for (int i = 0; i < n; ++i) items.push_back(pick(0, 3) == 0 ? any_var() : scalar());
    }
    const bool distinct = !aggregated && pick(0, 3) == 0;

    GeneratedQuery out;
    std::string ret = " RETURN ";
    if (distinct) ret += "DISTINCT ";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) ret += ", ";
      ret += items[i] + " AS c" + std::to_string(i);
    }
    std::string order;
    const int mode = pick(0, 3);
    if (mode == 1 && !has_collect) {
      // Every column, random directions, maybe a LIMIT.
      std::vector<std::size_t> cols(items.size());
      for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
      std::shuffle(cols.begin(), cols.end(), rng_);
      order = " ORDER BY ";
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) order += ", ";
        order += "c" + std::to_string(cols[i]) + (pick(0, 1) ? " DESC" : "");
      }
      out.has_order = true;
      if (pick(0, 1)) {
        order += " LIMIT " + std::to_string(pick(1, 6));
        out.has_limit = true;
      }
    } else if (mode == 2 && !aggregated && !distinct) {
      order = " ORDER BY " + scalar() + (pick(0, 1) ? " DESC" : "");
      out.has_order = true;
    }
    out.text = match + where + ret + order;
    return out;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  template <class T>
  const T& one_of(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(pick(0, static_cast<int>(xs.size()) - 1))];
  }

  std::string node() {
    std::string s = "(";
    if (pick(0, 3) != 0) {
      static const std::vector<std::string> names{"a", "b", "c", "d"};
      const std::string& v = one_of(names);
      s += v;
      if (std::find(nodes_.begin(), nodes_.end(), v) == nodes_.end()) nodes_.push_back(v);
    }
    if (pick(0, 1)) s += ":" + one_of(std::vector<std::string>{"Game", "Team", "Player"});
    if (pick(0, 4) == 0) s += " {" + prop_literal() + "}";
    return s + ")";
  }

  std::string prop_literal() {
    switch (pick(0, 2)) {
      case 0: return "name: 'name_" + std::to_string(pick(0, 4)) + "'";
      case 1: return "season: 'season_" + std::to_string(pick(0, 4)) + "'";
      default: return "clock: " + number();
    }
  }

  std::string number() {
    const int v = pick(0, 4);
    switch (pick(0, 3)) {
      case 0: return std::to_string(v) + ".0";
      case 1: return std::to_string(v) + ".5";
      default: return std::to_string(v);
    }
  }

  std::string path(int max_hops) {
    std::string s = node();
    const int hops = pick(0, max_hops);
    for (int i = 0; i < hops; ++i) {
      std::string rel = "[";
      if (pick(0, 2) == 0) {
        const std::string v = "r" + std::to_string(rels_.size());
        rels_.push_back(v);
        rel += v;
      }
      rel += ":" + one_of(std::vector<std::string>{"PLAYS_FOR", "PLAYED_IN", "WINNER"}) + "]";
      switch (pick(0, 2)) {
        case 0: s += "-" + rel + "->"; break;
        case 1: s += "<-" + rel + "-"; break;
        default: s += "-" + rel + "-";
      }
      s += node();
    }
    return s;
  }

  std::string any_var() {
    if (!rels_.empty() && pick(0, 3) == 0) return one_of(rels_);
    return one_of(nodes_);
  }

  std::string prop() {
    if (!rels_.empty() && pick(0, 5) == 0) return one_of(rels_) + ".side";
    return one_of(nodes_) + "." + one_of(std::vector<std::string>{"name", "season", "clock"});
  }

  std::string scalar() { return prop(); }

  std::string aggregate() {
    switch (pick(0, 5)) {
      case 0: return "count(*)";
      case 1: return "count(" + any_var() + ")";
      case 2: return "count(DISTINCT " + prop() + ")";
      case 3: return "sum(" + one_of(nodes_) + ".clock)";
      case 4: return "sum(DISTINCT " + one_of(nodes_) + ".clock)";
      default: return "collect(" + prop() + ")";
    }
  }

  std::string comparison() {
    static const std::vector<std::string> ops{"=", "<>", "<", "<=", ">", ">="};
    switch (pick(0, 6)) {
      case 0: return prop() + " IS NULL";
      case 1: return prop() + " IS NOT NULL";
      case 2: return prop() + " CONTAINS '_" + std::to_string(pick(0, 4)) + "'";
      case 3: return prop() + " " + one_of(ops) + " " + prop();
      case 4: return one_of(nodes_) + (pick(0, 1) ? " = " : " <> ") + one_of(nodes_);
      case 5: return one_of(nodes_) + ".clock " + one_of(ops) + " " + number();
      default: {
        const auto key = one_of(std::vector<std::string>{"name", "season"});
        return one_of(nodes_) + "." + key + " " + one_of(ops) + " '" + key + "_" + std::to_string(pick(0, 4)) + "'";
      }
    }
  }

  std::string expr(int depth) {
    if (depth == 0) return comparison();
    switch (pick(0, 4)) {
      case 0: return "(" + expr(depth - 1) + " AND " + expr(depth - 1) + ")";
      case 1: return "(" + expr(depth - 1) + " OR " + expr(depth - 1) + ")";
      case 2: return "NOT " + expr(depth - 1);
      default: return comparison();
    }
  }

  std::mt19937_64& rng_;
  std::vector<std::string> nodes_;
  std::vector<std::string> rels_;
};

// Kind-aware total order: same() equivalence first, representation second.
// Lists compare as sorted multisets.
int cmp_value(const query::Value& a, const query::Value& b, bool exact) {
  using Kind = query::Value::Kind;
  if (a.kind() == Kind::List && b.kind() == Kind::List) {
    auto sorted = [&](query::Value::List l) {
      std::sort(l.begin(), l.end(),
                [&](const query::Value& x, const query::Value& y) { return cmp_value(x, y, exact) < 0; });
      return l;
    };
    const auto x = sorted(a.as_list());
    const auto y = sorted(b.as_list());
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
      if (int c = cmp_value(x[i], y[i], exact)) return c;
    return x.size() < y.size() ? -1 : x.size() > y.size() ? 1 : 0;
  }
  const auto o = a.order(b);
  if (o < 0) return -1;
  if (o > 0) return 1;
  if (!exact) return 0;
  return static_cast<int>(a.kind()) - static_cast<int>(b.kind());
}

int cmp_row(const std::vector<query::Value>& a, const std::vector<query::Value>& b, bool exact) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = cmp_value(a[i], b[i], exact)) return c;
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

}  // namespace

GeneratedQuery random_query(std::mt19937_64& rng, bool allow_two_paths) { return Gen(rng).run(allow_two_paths); }

bool same_multiset(const Rows& a, const Rows& b, bool exact) {
  if (a.size() != b.size()) return false;
  auto sorted = [&](const Rows& r) {
    Rows out = r;
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return cmp_row(x, y, exact) < 0; });
    return out;
  };
  const Rows x = sorted(a);
  const Rows y = sorted(b);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (cmp_row(x[i], y[i], exact) != 0) return false;
  return true;
}

std::string rows_text(const Rows& rows) {
  std::string s;
  for (const auto& r : rows) {
    s += "[";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + r[i].to_literal();
    s += "]\n";
  }
  return s;
}

}  // namespace pitchgraph::testing
