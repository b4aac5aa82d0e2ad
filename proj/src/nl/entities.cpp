#include "pitchgraph/nl/entities.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <set>

#include "pitchgraph/ingest/parse.hpp"

namespace pitchgraph::nl {
namespace {

using kg::ascii_lower;

struct Token {
  std::size_t begin = 0;  // byte offsets of the word with punctuation trimmed
  std::size_t end = 0;
  std::string text;
  bool breaks_after = false;  // a comma, question mark or full stop follows
};

bool is_upper_start(const std::string& w) {
  if (w.empty()) return false;
  const auto c = static_cast<unsigned char>(w[0]);
  return std::isupper(c) || c >= 0x80;
}

bool is_initial(std::string_view w) {
  return w.size() == 2 && std::isupper(static_cast<unsigned char>(w[0])) && w[1] == '.';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::size_t b = i;
    std::size_t e = j;
    const auto lead = std::string_view("(\"'[");
    const auto trail = std::string_view(",?!;:)\"']");
    while (b < e && lead.find(s[b]) != std::string_view::npos) ++b;
    bool brk = false;
    while (e > b && (trail.find(s[e - 1]) != std::string_view::npos || s[e - 1] == '.')) {
      if (s[e - 1] == '.' && is_initial(s.substr(b, e - b))) break;
      if (s[e - 1] != '\'' && s[e - 1] != '"') brk = true;
      --e;
    }
    // Possessive.
    if (e - b > 2 && s.substr(e - 2, 2) == "'s") e -= 2;
    if (b < e) out.push_back(Token{b, e, std::string(s.substr(b, e - b)), brk});
    else if (!out.empty()) out.back().breaks_after = true;
    i = j;
  }
  return out;
}

// Capitalized words that start questions or sentences rather than names.
const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "a", "all", "an", "and", "any", "are", "at", "by", "calculate", "can", "compare", "could",
      "count", "describe", "did", "do", "does", "during", "find", "for", "from", "get", "give",
      "has", "have", "how", "i", "if", "in", "is", "it", "list", "make", "name", "of", "on", "or",
      "please", "provide", "return", "show", "tell", "that", "the", "then", "there", "these",
      "this", "to", "was", "were", "what", "when", "where", "which", "who", "whom", "whose", "why",
      "with", "yes", "no", "me", "my", "we", "you", "your", "against", "between", "versus", "vs",
      "season", "game", "games", "match", "matches", "team", "teams", "league", "leagues", "player",
      "players", "goal", "goals", "card", "cards", "yellow", "red", "first", "second", "half",
      "home", "away", "corner", "corners", "referee", "coach", "coaches", "stadium", "venue",
      "cypher", "query", "database", "dataset"};
  return words;
}

bool is_stopword(const std::string& w) { return stopwords().count(ascii_lower(w)) > 0; }

const std::vector<std::pair<std::string, std::string>>& league_aliases() {
  static const std::vector<std::pair<std::string, std::string>> aliases = {
      {"english premier league", "england_epl"},
      {"premier league", "england_epl"},
      {"epl", "england_epl"},
      {"bundesliga", "germany_bundesliga"},
      {"serie a", "italy_serie-a"},
      {"uefa champions league", "europe_uefa-champions-league"},
      {"champions league", "europe_uefa-champions-league"},
      {"ucl", "europe_uefa-champions-league"},
      {"la liga", "spain_laliga"},
      {"laliga", "spain_laliga"},
      {"ligue 1", "france_ligue-1"},
      {"england_epl", "england_epl"},
      {"germany_bundesliga", "germany_bundesliga"},
      {"italy_serie-a", "italy_serie-a"},
      {"europe_uefa-champions-league", "europe_uefa-champions-league"},
      {"spain_laliga", "spain_laliga"},
      {"france_ligue-1", "france_ligue-1"},
  };
  return aliases;
}

bool word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80 || c == '_';
}

// Occurrences of `needle` in `hay` (both lowercase) on word boundaries.
std::vector<std::size_t> find_words(const std::string& hay, const std::string& needle) {
  std::vector<std::size_t> hits;
  if (needle.empty()) return hits;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) {
    const bool left = p == 0 || !word_char(hay[p - 1]);
    const std::size_t q = p + needle.size();
    const bool right = q >= hay.size() || !word_char(hay[q]);
    if (left && right) hits.push_back(p);
  }
  return hits;
}

struct Span {
  std::size_t begin;
  std::size_t end;
};

// Byte ranges already explained by a league alias or a season.
std::vector<Span> reserved_spans(const std::string& lower) {
  std::vector<Span> spans;
  for (const auto& [alias, id] : league_aliases()) {
    for (auto p : find_words(lower, alias)) spans.push_back({p, p + alias.size()});
  }
  static const std::regex season(R"(\d{2,4}\s*[-/]\s*\d{2,4})");
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), season); it != std::sregex_iterator();
       ++it) {
    const auto p = static_cast<std::size_t>(it->position());
    spans.push_back({p, p + static_cast<std::size_t>(it->length())});
  }
  return spans;
}

bool overlaps(const std::vector<Span>& spans, std::size_t b, std::size_t e) {
  return std::any_of(spans.begin(), spans.end(), [&](const Span& s) { return b < s.end && s.begin < e; });
}

// "E. Hazard" or "Hazard E." against a multi-word name.
bool abbreviation_matches(const std::vector<std::string>& words, const std::string& name) {
  if (words.size() != 2) return false;
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < name.size()) {
    const auto j = name.find(' ', i);
    parts.push_back(ascii_lower(name.substr(i, j == std::string::npos ? std::string::npos : j - i)));
    if (j == std::string::npos) break;
    i = j + 1;
  }
  if (parts.size() < 2) return false;
  const auto initial = [](const std::string& w) { return static_cast<char>(std::tolower(static_cast<unsigned char>(w[0]))); };
  const std::string a = ascii_lower(words[0]);
  const std::string b = ascii_lower(words[1]);
  if (is_initial(words[0])) return initial(words[0]) == parts.front()[0] && b == parts.back();
  if (is_initial(words[1])) return initial(words[1]) == parts.front()[0] && a == parts.back();
  return false;
}

struct Match {
  const kg::EntityDictionary::Entry* entry = nullptr;
  std::size_t distance = 0;
  bool ambiguous = false;
};

Match best_fuzzy(const std::string& candidate, const std::vector<std::string>& words,
                 const std::vector<const kg::EntityDictionary::Entry*>& entries) {
  Match best;
  const bool abbreviated = std::any_of(words.begin(), words.end(), [](const std::string& w) { return is_initial(w); });
  if (abbreviated) {
    for (const auto* e : entries) {
      if (!abbreviation_matches(words, e->name)) continue;
      if (best.entry == nullptr) best = Match{e, 0, false};
      else best.ambiguous = true;  // entries() is sorted, so the first stays
    }
    if (best.entry != nullptr) {
      best.distance = kg::edit_distance(ascii_lower(candidate), ascii_lower(best.entry->name));
    }
    return best;
  }
  const std::string lower = ascii_lower(candidate);
  if (words.size() == 1) {
    // A lone surname naming exactly one person ("Lewandowski").
    for (const auto* e : entries) {
      const auto sp = e->name.rfind(' ');
      if (sp == std::string::npos || e->kinds.count(kg::EntityKind::Team) > 0) continue;
      if (ascii_lower(e->name.substr(sp + 1)) != lower) continue;
      if (best.entry == nullptr) best = Match{e, kg::edit_distance(lower, ascii_lower(e->name)), false};
      else best.ambiguous = true;
    }
    if (best.entry != nullptr) return best;
  }
  const std::size_t limit = repair_threshold(candidate.size());
  std::size_t best_d = limit + 1;
  for (const auto* e : entries) {
    const std::string name = ascii_lower(e->name);
    const std::size_t gap = name.size() > lower.size() ? name.size() - lower.size() : lower.size() - name.size();
    if (gap > limit) continue;
    const std::size_t d = kg::edit_distance(lower, name);
    if (d < best_d) {
      best_d = d;
      best = Match{e, d, false};
    } else if (d == best_d && best.entry != nullptr) {
      best.ambiguous = true;
    }
  }
  return best;
}

}  // namespace

std::size_t repair_threshold(std::size_t length) { return std::max<std::size_t>(1, (length + 7) / 8); }

std::optional<std::string> league_from_alias(std::string_view text) {
  const std::string lower = ascii_lower(text);
  for (const auto& [alias, id] : league_aliases()) {
    if (lower == alias) return id;
  }
  return std::nullopt;
}

RepairResult repair_entities(std::string_view question, const kg::EntityDictionary& dict) {
  RepairResult out;
  const std::string original(question);
  const auto tokens = tokenize(original);
  const auto reserved = reserved_spans(ascii_lower(original));
  const auto entries = dict.entries();

  // Name-like token runs.
  std::vector<std::vector<std::size_t>> runs;
  std::vector<std::size_t> run;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    const bool name_like = is_upper_start(t.text) && !overlaps(reserved, t.begin, t.end);
    if (name_like) run.push_back(i);
    if (!name_like || t.breaks_after) {
      if (!run.empty()) runs.push_back(run);
      run.clear();
    }
  }
  if (!run.empty()) runs.push_back(run);

  std::vector<Repair> repairs;
  for (const auto& r : runs) {
    std::size_t i = 0;
    std::vector<std::string> pending;  // consecutive unmatched words
    const auto flush = [&] {
      if (!pending.empty()) {
        std::string s;
        for (const auto& w : pending) s += (s.empty() ? "" : " ") + w;
        out.unresolved.push_back(s);
      }
      pending.clear();
    };
    while (i < r.size()) {
      if (is_stopword(tokens[r[i]].text)) {
        flush();
        ++i;
        continue;
      }
      const std::size_t max_n = std::min<std::size_t>(4, r.size() - i);
      const auto span_of = [&](std::size_t n) {
        const std::size_t b = tokens[r[i]].begin;
        const std::size_t e = tokens[r[i + n - 1]].end;
        return std::pair{b, e};
      };
      std::size_t taken = 0;
      // Exact first, longest first.
      for (std::size_t n = max_n; n >= 1 && taken == 0; --n) {
        const auto [b, e] = span_of(n);
        if (dict.find(original.substr(b, e - b)) != nullptr) taken = n;
      }
      if (taken == 0) {
        for (std::size_t n = max_n; n >= 1 && taken == 0; --n) {
          const auto [b, e] = span_of(n);
          const std::string cand = original.substr(b, e - b);
          std::vector<std::string> words;
          for (std::size_t k = 0; k < n; ++k) words.push_back(tokens[r[i + k]].text);
          const Match m = best_fuzzy(cand, words, entries);
          if (m.entry == nullptr) continue;
          taken = n;
          repairs.push_back(Repair{b, e - b, cand, m.entry->name, m.distance, m.ambiguous});
        }
      }
      if (taken == 0) {
        pending.push_back(tokens[r[i]].text);
        ++i;
      } else {
        flush();
        i += taken;
      }
    }
    flush();
  }

  // Spans that only differ by case are left alone.
  std::string text;
  std::size_t at = 0;
  for (const auto& rep : repairs) {
    text += original.substr(at, rep.offset - at);
    text += rep.replacement;
    at = rep.offset + rep.length;
  }
  text += original.substr(at);
  out.text = std::move(text);
  for (auto& rep : repairs) {
    if (rep.original != rep.replacement) out.repairs.push_back(std::move(rep));
  }
  return out;
}

Mentions find_mentions(std::string_view question, const kg::EntityDictionary& dict) {
  Mentions m;
  const std::string lower = ascii_lower(question);

  // Dictionary names, longest match wins at each position.
  struct Hit {
    std::size_t begin;
    std::size_t end;
    const kg::EntityDictionary::Entry* entry;
  };
  std::vector<Hit> hits;
  for (const auto* e : dict.entries()) {
    const std::string name = ascii_lower(e->name);
    for (auto p : find_words(lower, name)) hits.push_back({p, p + name.size(), e});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.end > b.end;
  });
  const auto push = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  std::size_t covered = 0;
  std::vector<Span> taken;
  for (const auto& h : hits) {
    if (h.begin < covered) continue;
    covered = h.end;
    taken.push_back({h.begin, h.end});
    for (auto k : h.entry->kinds) {
      switch (k) {
        case kg::EntityKind::Team: push(m.teams, h.entry->name); break;
        case kg::EntityKind::Player: push(m.players, h.entry->name); break;
        case kg::EntityKind::Referee: push(m.referees, h.entry->name); break;
        case kg::EntityKind::Venue: push(m.venues, h.entry->name); break;
        case kg::EntityKind::Coach: push(m.coaches, h.entry->name); break;
        case kg::EntityKind::League: push(m.leagues, h.entry->name); break;
      }
    }
  }

  std::vector<std::pair<std::size_t, std::string>> leagues;
  for (const auto& [alias, id] : league_aliases()) {
    for (auto p : find_words(lower, alias)) {
      if (!overlaps(taken, p, p + alias.size())) leagues.emplace_back(p, id);
    }
  }
  std::sort(leagues.begin(), leagues.end());
  for (const auto& [p, id] : leagues) push(m.leagues, id);

  static const std::regex season(R"((\d{2,4})\s*[-/]\s*(\d{2,4}))");
  std::smatch sm;
  if (std::regex_search(lower, sm, season)) {
    m.season = ingest::canonical_season(sm[1].str() + "-" + sm[2].str());
  }

  // Event vocabulary, in order of first appearance.
  static const std::vector<std::pair<std::regex, std::string>> events = [] {
    std::vector<std::pair<std::regex, std::string>> v;
    const auto add = [&](const char* re, const char* name) { v.emplace_back(std::regex(re), name); };
    add(R"(\bown goals?\b)", "Goal");
    add(R"(\bgoals?\b)", "Goal");
    add(R"(\bcorners?\b)", "Corner");
    add(R"(\bsecond yellow\b|\byellow[- ]?>?[- ]?red\b)", "Yellow->red card");
    add(R"(\byellow\b[^.?]*\bcards?\b)", "Yellow card");
    add(R"(\bred cards?\b)", "Red card");
    add(R"(\bfouls?\b)", "Foul");
    add(R"(\boffsides?\b)", "Offside");
    add(R"(\bsubstitutions?\b)", "Substitution");
    add(R"(\bshots? on target\b)", "Shots on target");
    add(R"(\bshots? off target\b)", "Shots off target");
    add(R"(\bkick[- ]?offs?\b)", "Kick-off");
    add(R"(\bpenalt(y|ies)\b)", "Penalty");
    add(R"(\bclearances?\b)", "Clearance");
    add(R"(\bthrow[- ]ins?\b)", "Throw-in");
    add(R"(\bindirect free[- ]kicks?\b)", "Indirect free-kick");
    add(R"(\b(direct )?free[- ]kicks?\b)", "Direct free-kick");
    add(R"(\bball out of play\b)", "Ball out of play");
    return v;
  }();
  std::vector<std::pair<std::size_t, std::string>> found;
  for (const auto& [re, name] : events) {
    std::smatch em;
    if (std::regex_search(lower, em, re)) found.emplace_back(static_cast<std::size_t>(em.position()), name);
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [p, name] : found) push(m.events, name);

  const auto fact = [&](const char* re, ingest::FactType t) {
    if (std::regex_search(lower, std::regex(re)) &&
        std::find(m.facts.begin(), m.facts.end(), t) == m.facts.end()) {
      m.facts.push_back(t);
    }
  };
  fact(R"(\byellow\b[^.?]*\bcards?\b)", ingest::FactType::YellowCard);
  fact(R"(\bred cards?\b)", ingest::FactType::RedCard);
  if (m.facts.empty() && std::regex_search(lower, std::regex(R"(\bcards?\b|\bbooking)"))) {
    m.facts = {ingest::FactType::YellowCard, ingest::FactType::RedCard};
  }
  fact(R"(\bown goals?\b)", ingest::FactType::OwnGoal);
  fact(R"((^|[^n] )goals?\b|\bscor)", ingest::FactType::Goal);
  fact(R"(\bassist)", ingest::FactType::Assist);

  if (std::regex_search(lower, std::regex(R"(\bfirst half\b|\b1st half\b)"))) m.half = 1;
  else if (std::regex_search(lower, std::regex(R"(\bsecond half\b|\b2nd half\b)"))) m.half = 2;

  m.unresolved = repair_entities(question, dict).unresolved;
  return m;
}

}  // namespace pitchgraph::nl
