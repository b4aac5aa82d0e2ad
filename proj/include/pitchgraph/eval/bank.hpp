#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pitchgraph/kg/entity_dictionary.hpp"

namespace pitchgraph::eval {

// Expected answer, judged against the synthesized sentence.
struct Gold {
  enum class Kind { Count, Set, Boolean, Contains };
  Kind kind = Kind::Count;
  std::int64_t count = 0;           // Count
  std::vector<std::string> items;   // Set (entity names) or Contains (substrings)
  bool flag = false;                // Boolean

  static Gold from_json(const nlohmann::json& j);
  [[nodiscard]] nlohmann::json to_json() const;
};

struct BankEntry {
  std::string id;
  int category = 0;  // 1..23
  std::string question;
  Gold gold;
  std::string note;  // how the gold value was derived
  bool default_subset = false;
};

// One JSON object per line; blank lines and lines starting with '#' are
// skipped. Throws SchemaError naming the line on malformed input.
std::vector<BankEntry> parse_bank(std::istream& in, const std::string& origin = "<bank>");
std::vector<BankEntry> load_bank(const std::filesystem::path& path);

// The entries flagged as the default ten-question subset, in file order.
std::vector<BankEntry> default_subset(const std::vector<BankEntry>& bank);

// Correctness predicates:
//   Count    - the first free-standing integer in the answer equals the value
//              (integers inside dates, seasons and clock times are skipped);
//   Set      - entity names found in the answer but not in the question equal
//              the expected set (league ids are ignored);
//   Boolean  - the answer opens with "Yes" or "No" accordingly;
//   Contains - every expected substring occurs.
bool judge(const Gold& gold, const std::string& question, const std::string& answer,
           const kg::EntityDictionary& dict);

// Entity names (not leagues) occurring in `text`, longest match first.
std::vector<std::string> extract_names(const std::string& text, const kg::EntityDictionary& dict);

}  // namespace pitchgraph::eval
