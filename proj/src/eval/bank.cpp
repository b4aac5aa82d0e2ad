#include "pitchgraph/eval/bank.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>

#include "pitchgraph/error.hpp"

namespace pitchgraph::eval {
namespace {

using nlohmann::json;

Gold::Kind kind_from(const std::string& s) {
  if (s == "count") return Gold::Kind::Count;
  if (s == "set") return Gold::Kind::Set;
  if (s == "boolean") return Gold::Kind::Boolean;
  if (s == "contains") return Gold::Kind::Contains;
  throw ValueError("unknown gold kind '" + s + "'");
}

const char* kind_name(Gold::Kind k) {
  switch (k) {
    case Gold::Kind::Count: return "count";
    case Gold::Kind::Set: return "set";
    case Gold::Kind::Boolean: return "boolean";
    case Gold::Kind::Contains: return "contains";
  }
  return "count";
}

bool word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

}  // namespace

Gold Gold::from_json(const json& j) {
  Gold g;
  g.kind = kind_from(j.at("kind").get<std::string>());
  const json& v = j.at("value");
  switch (g.kind) {
    case Kind::Count: g.count = v.get<std::int64_t>(); break;
    case Kind::Boolean: g.flag = v.get<bool>(); break;
    case Kind::Set:
    case Kind::Contains:
      g.items = v.is_string() ? std::vector<std::string>{v.get<std::string>()} : v.get<std::vector<std::string>>();
      break;
  }
  return g;
}

json Gold::to_json() const {
  json j{{"kind", kind_name(kind)}};
  switch (kind) {
    case Kind::Count: j["value"] = count; break;
    case Kind::Boolean: j["value"] = flag; break;
    default: j["value"] = items;
  }
  return j;
}

std::vector<BankEntry> parse_bank(std::istream& in, const std::string& origin) {
  std::vector<BankEntry> out;
  std::set<std::string> ids;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = origin + ":" + std::to_string(n);
    try {
      const json j = json::parse(line);
      BankEntry e;
      e.id = j.at("id").get<std::string>();
      const std::string cat = j.at("category").get<std::string>();
      if (cat.size() < 2 || cat[0] != 'Q') throw ValueError("category must look like Q7");
      e.category = std::stoi(cat.substr(1));
      if (e.category < 1 || e.category > 23) throw ValueError("category out of range: " + cat);
      e.question = j.at("question").get<std::string>();
      e.gold = Gold::from_json(j.at("gold"));
      e.note = j.value("note", "");
      e.default_subset = j.value("default", false);
      if (!ids.insert(e.id).second) throw ValueError("duplicate id " + e.id);
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw SchemaError(where, ex.what());
    } catch (const std::invalid_argument& ex) {
      throw SchemaError(where, ex.what());
    } catch (const ValueError& ex) {
      throw SchemaError(where, ex.what());
    }
  }
  return out;
}

std::vector<BankEntry> load_bank(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read question bank " + path.string());
  return parse_bank(in, path.string());
}

std::vector<BankEntry> default_subset(const std::vector<BankEntry>& bank) {
  std::vector<BankEntry> out;
  std::copy_if(bank.begin(), bank.end(), std::back_inserter(out), [](const BankEntry& e) { return e.default_subset; });
  return out;
}

std::vector<std::string> extract_names(const std::string& text, const kg::EntityDictionary& dict) {
  const std::string lower = kg::ascii_lower(text);
  struct Hit {
    std::size_t begin, end;
    std::string name;
  };
  std::vector<Hit> hits;
  for (const auto* e : dict.entries()) {
    if (e->kinds.size() == 1 && e->kinds.count(kg::EntityKind::League)) continue;
    const std::string name = kg::ascii_lower(e->name);
    for (auto p = lower.find(name); p != std::string::npos; p = lower.find(name, p + 1)) {
      const std::size_t q = p + name.size();
      if ((p == 0 || !word_char(lower[p - 1])) && (q >= lower.size() || !word_char(lower[q]))) {
        hits.push_back({p, q, e->name});
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  std::vector<std::string> out;
  std::size_t covered = 0;
  for (const auto& h : hits) {
    if (h.begin < covered) continue;
    covered = h.end;
    if (std::find(out.begin(), out.end(), h.name) == out.end()) out.push_back(h.name);
  }
  return out;
}

bool judge(const Gold& gold, const std::string& question, const std::string& answer,
           const kg::EntityDictionary& dict) {
  switch (gold.kind) {
    case Gold::Kind::Count: {
      static const std::regex free_int(R"((?:^|[\s(])(\d+)(?=$|[\s).,;:]))");
      std::smatch m;
      if (!std::regex_search(answer, m, free_int)) return false;
      return std::stoll(m[1].str()) == gold.count;
    }
    case Gold::Kind::Boolean:
      return answer.rfind(gold.flag ? "Yes" : "No", 0) == 0;
    case Gold::Kind::Contains:
      return std::all_of(gold.items.begin(), gold.items.end(),
                         [&](const std::string& s) { return answer.find(s) != std::string::npos; });
    case Gold::Kind::Set: {
      const auto asked = extract_names(question, dict);
      std::set<std::string> got;
      for (const auto& n : extract_names(answer, dict)) {
        if (std::find(asked.begin(), asked.end(), n) == asked.end()) got.insert(n);
      }
      return got == std::set<std::string>(gold.items.begin(), gold.items.end());
    }
  }
  return false;
}

}  // namespace pitchgraph::eval
