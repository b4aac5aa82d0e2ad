#include "pitchgraph/nl/synthesize.hpp"

#include <algorithm>
#include <map>
#include <regex>

namespace pitchgraph::nl {
namespace {

using query::ResultTable;
using query::Value;

class View {
 public:
  explicit View(const ResultTable& t) : t_(t) {}

  [[nodiscard]] const Value* at(std::size_t row, std::string_view col) const {
    const auto it = std::find(t_.columns.begin(), t_.columns.end(), col);
    if (it == t_.columns.end() || row >= t_.rows.size()) return nullptr;
    return &t_.rows[row][static_cast<std::size_t>(it - t_.columns.begin())];
  }
  [[nodiscard]] std::string text(std::size_t row, std::string_view col) const {
    const Value* v = at(row, col);
    return v == nullptr ? std::string() : str(*v);
  }
  [[nodiscard]] std::string str(const Value& v) const {
    if (v.kind() == Value::Kind::List) {
      std::string out;
      for (const auto& x : v.as_list()) out += (out.empty() ? "" : ", ") + str(x);
      return out;
    }
    return query::render(v, t_.graph);
  }
  [[nodiscard]] std::size_t size() const { return t_.rows.size(); }

 private:
  const ResultTable& t_;
};

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string scope(const Mentions& m) {
  std::string s;
  if (!m.leagues.empty()) s += " in " + m.leagues.front();
  if (m.season) s += " in the " + *m.season + " season";
  return s;
}

std::string plural(const std::string& n, const std::string& word) {
  return n + " " + word + (n == "1" ? "" : "s");
}

std::string card_word(const std::string& kind) {
  if (kind == "YellowCard") return "yellow card";
  if (kind == "RedCard") return "red card";
  return kind;
}

std::string name_at(const Translation& t, std::size_t i) {
  return i < t.names.size() ? t.names[i] : std::string("the team");
}

std::string games_list(const View& v) {
  std::vector<std::string> items;
  for (std::size_t r = 0; r < v.size(); ++r) {
    std::string s = v.text(r, "date") + ": " + v.text(r, "home");
    if (v.at(r, "score") != nullptr) s += " " + v.text(r, "score");
    else s += " vs";
    s += " " + v.text(r, "away");
    items.push_back(s);
  }
  return join(items, "; ");
}

std::string generic(const View& v, const ResultTable& table) {
  if (table.rows.size() == 1 && table.columns.size() == 1) return "The answer is " + v.text(0, table.columns[0]) + ".";
  std::vector<std::string> rows;
  for (std::size_t r = 0; r < v.size(); ++r) {
    std::vector<std::string> cells;
    for (const auto& c : table.columns) {
      const Value* x = v.at(r, c);
      if (x != nullptr && !x->is_null()) cells.push_back(c + ": " + v.str(*x));
    }
    rows.push_back(join(cells));
  }
  return "Result: " + join(rows, "; ") + ".";
}

}  // namespace

std::string synthesize(std::string_view question, const Translation& t, const ResultTable& table) {
  if (table.rows.empty()) {
    std::string s = "No matching data was found in the graph.";
    if (!t.mentions.unresolved.empty()) {
      s += " These names were not recognised: " + join(t.mentions.unresolved) + ".";
    }
    return s;
  }
  const View v(table);
  const Mentions& m = t.mentions;
  const std::string sc = scope(m);
  const auto first = [&](std::string_view col) { return v.text(0, col); };
  const auto list = [&](std::string_view col) {
    std::vector<std::string> items;
    for (std::size_t r = 0; r < v.size(); ++r) items.push_back(v.text(r, col));
    return join(items);
  };

  switch (t.category) {
    case 1: {
      const Value* p = v.at(0, "present");
      const bool yes = p != nullptr && p->kind() == Value::Kind::Bool && p->as_bool();
      return yes ? "Yes, " + name_at(t, 0) + " is in the database."
                 : "No, " + name_at(t, 0) + " is not in the database.";
    }
    case 2: {
      std::string ev = m.events.empty() ? "Goal" : m.events.front();
      return name_at(t, 0) + " had " + first("total") + " home " + ev + " events" + sc + ".";
    }
    case 3: {
      std::string home = "0";
      std::string away = "0";
      std::int64_t h = 0;
      std::int64_t a = 0;
      for (std::size_t r = 0; r < v.size(); ++r) {
        const Value* w = v.at(r, "wins");
        const std::int64_t n = w != nullptr && w->kind() == Value::Kind::Int ? w->as_int() : 0;
        if (v.text(r, "side") == "home") { h = n; home = v.text(r, "wins"); }
        if (v.text(r, "side") == "away") { a = n; away = v.text(r, "wins"); }
      }
      // The only figure not copied from the table: home wins minus away wins.
      return "The home advantage for " + name_at(t, 0) + sc + " is " + std::to_string(h - a) + " (" +
             plural(home, "home win") + ", " + plural(away, "away win") + ").";
    }
    case 4: return name_at(t, 0) + " scored " + plural(first("goals"), "goal") + sc + ".";
    case 5: {
      if (v.at(0, "card") == nullptr) {
        const auto kinds = m.facts;
        std::string word = "card";
        for (auto f : kinds) {
          if (ingest::is_card(f)) word = card_word(std::string(ingest::to_string(f)));
        }
        return name_at(t, 0) + " received " + plural(first("cards"), word) + sc + ".";
      }
      std::vector<std::string> parts;
      for (std::size_t r = 0; r < v.size(); ++r) parts.push_back(plural(v.text(r, "cards"), card_word(v.text(r, "card"))));
      return name_at(t, 0) + " received " + join(parts) + sc + ".";
    }
    case 6: return "Teams that played against " + name_at(t, 0) + sc + ": " + list("opponent") + ".";
    case 7: return "Teams" + sc + ": " + list("team") + ".";
    case 8: {
      const std::string ev = m.events.empty() ? "Goal" : m.events.front();
      const std::string half = m.half.value_or(1) == 1 ? "first" : "second";
      return "Games" + sc + " with a " + ev + " event in the " + half + " half: " + games_list(v) + ".";
    }
    case 9: {
      std::vector<std::string> items;
      for (std::size_t r = 0; r < v.size(); ++r) items.push_back(v.text(r, "team") + " (" + v.text(r, "league") + ")");
      return name_at(t, 0) + " has played for: " + join(items) + ".";
    }
    case 10:
      return name_at(t, 0) + " scored " + plural(first("goals"), "goal") + " in the game between " + name_at(t, 1) +
             " and " + name_at(t, 2) + (m.season ? " in the " + *m.season + " season" : "") + ".";
    case 11: {
      std::vector<std::string> items;
      for (std::size_t r = 0; r < v.size(); ++r) {
        items.push_back(v.text(r, "assistant") + " (" + plural(v.text(r, "assists"), "assist") + ")");
      }
      return "Goals by " + name_at(t, 0) + sc + " were assisted by: " + join(items) + ".";
    }
    case 12: {
      std::vector<std::string> items;
      for (std::size_t r = 0; r < v.size(); ++r) {
        items.push_back("a " + card_word(v.text(r, "card")) + " for " + v.text(r, "reason") + " (minute " +
                        v.text(r, "minute") + ", " + v.text(r, "date") + ")");
      }
      return name_at(t, 0) + " received " + join(items, "; ") + ".";
    }
    case 13: {
      std::vector<std::string> items;
      bool red = false;
      std::string red_players;
      for (std::size_t r = 0; r < v.size(); ++r) {
        const std::string kind = v.text(r, "card");
        items.push_back(plural(v.text(r, "total"), card_word(kind)) + " (" + v.text(r, "players") + ")");
        if (kind == "RedCard") {
          red = true;
          red_players = v.text(r, "players");
        }
      }
      std::string s = "Cards given" + sc + ": " + join(items, "; ") + ".";
      const bool asks_red = std::regex_search(kg::ascii_lower(question),
                                              std::regex(R"(\b(any|anyone|anybody|was there|were there)\b[^?]*\bred\b)"));
      if (asks_red) {
        s += red ? " Yes, a red card was given to " + red_players + "." : " No red card was given.";
      }
      return s;
    }
    case 14: {
      std::vector<std::string> items;
      for (std::size_t r = 0; r < v.size(); ++r) {
        std::string s = v.text(r, "time") + " " + v.text(r, "event");
        const std::string side = v.text(r, "side");
        if (!side.empty() && side != "not applicable") s += " (" + side + ")";
        items.push_back(s);
      }
      return "Events in the game between " + name_at(t, 0) + " and " + name_at(t, 1) + ": " + join(items, "; ") + ".";
    }
    case 15: {
      const std::string ev = m.events.empty() ? "Goal" : m.events.front();
      std::vector<std::string> items;
      for (std::size_t r = 0; r < v.size(); ++r) {
        items.push_back(v.text(r, "date") + " at " + v.text(r, "time") + " (" + v.text(r, "home") + " vs " +
                        v.text(r, "away") + ")");
      }
      return ev + " events" + sc + " happened on: " + join(items, "; ") + ".";
    }
    case 16: {
      std::vector<std::string> items;
      for (std::size_t r = 0; r < v.size(); ++r) {
        std::string s = v.text(r, "date") + " " + v.text(r, "home") + " vs " + v.text(r, "away") + " (" + v.text(r, "side");
        if (const Value* x = v.at(r, "shirt"); x != nullptr && !x->is_null()) s += ", shirt " + v.str(*x);
        if (const Value* x = v.at(r, "role"); x != nullptr && !x->is_null()) s += ", " + v.str(*x);
        items.push_back(s + ")");
      }
      return name_at(t, 0) + " appears in these games: " + join(items, "; ") + ".";
    }
    case 17: return "Games refereed by " + name_at(t, 0) + ": " + games_list(v) + ".";
    case 18: return "Coaches of " + name_at(t, 0) + ": " + list("coach") + ".";
    case 19: return "Games played at " + name_at(t, 0) + ": " + games_list(v) + ".";
    case 20: {
      std::vector<std::string> games;
      for (std::size_t r = 0; r < v.size(); ++r) {
        std::vector<std::string> cells;
        for (const auto& c : table.columns) {
          const Value* x = v.at(r, c);
          if (x != nullptr && !x->is_null()) cells.push_back(c + " " + v.str(*x));
        }
        games.push_back(join(cells));
      }
      return "Game information: " + join(games, "; ") + ".";
    }
    case 21: {
      std::map<std::string, std::string> wins;
      std::map<std::string, std::int64_t> n;
      for (std::size_t r = 0; r < v.size(); ++r) {
        wins[v.text(r, "team")] = v.text(r, "wins");
        const Value* w = v.at(r, "wins");
        n[v.text(r, "team")] = w != nullptr && w->kind() == Value::Kind::Int ? w->as_int() : 0;
      }
      const std::string a = name_at(t, 0);
      const std::string b = name_at(t, 1);
      const auto wa = wins.count(a) ? wins[a] : "0";
      const auto wb = wins.count(b) ? wins[b] : "0";
      const std::string season = m.season ? " in the " + *m.season + " season" : "";
      if (n[a] == n[b]) return a + " and " + b + " won the same number of games" + season + " (" + wa + ").";
      const bool a_more = n[a] > n[b];
      return (a_more ? a : b) + " won more games" + season + " than " + (a_more ? b : a) + " (" +
             (a_more ? wa : wb) + " against " + (a_more ? wb : wa) + ").";
    }
    case 22:
      return name_at(t, 0) + " won " + plural(first("wins"), "game") + sc + ".";
    case 23: {
      std::vector<std::string> items;
      std::vector<std::string> found;
      for (std::size_t r = 0; r < v.size(); ++r) {
        items.push_back(v.text(r, "team") + " plays in " + v.text(r, "league"));
        found.push_back(kg::ascii_lower(v.text(r, "team")));
      }
      std::vector<std::string> absent;
      for (const auto& n : t.names) {
        if (std::find(found.begin(), found.end(), kg::ascii_lower(n)) == found.end()) absent.push_back(n);
      }
      std::string s = join(items, "; ") + ".";
      if (!absent.empty()) s += " Not in the database: " + join(absent) + ".";
      return s;
    }
    default: return generic(v, table);
  }
}

}  // namespace pitchgraph::nl
