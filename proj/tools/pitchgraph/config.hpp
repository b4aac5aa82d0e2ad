#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "pitchgraph/nl/llm.hpp"

namespace pitchgraph::cli {

enum class OutputFormat { Text, Json };

// Settings shared by every verb. Precedence: flags > config file > defaults.
struct Config {
  std::filesystem::path data_dir = "data/fixture";
  std::filesystem::path snapshot_dir = "snapshot";
  std::string backend = "rule";  // rule | llm
  OutputFormat output_format = OutputFormat::Text;
  std::optional<nl::LlmConfig> llm;

  // backend = llm needs llm.base_url and llm.model. Throws ValueError.
  void check() const;
};

// Raw "key = value" pairs, in file order, keyed by name.
using KeyValues = std::map<std::string, std::string>;

// One "key = value" per line; '#' starts a comment; blank lines ignored.
// Throws ValueError on a malformed line, an unknown key or a repeated key.
KeyValues parse_config_text(std::istream& in, const std::string& origin);
KeyValues load_config_file(const std::filesystem::path& path);  // IoError

// Applies `kv` on top of `base`. Throws ValueError on bad values.
void apply(Config& base, const KeyValues& kv);

// Keys accepted in the file, with a one-line description each.
const std::map<std::string, std::string>& known_keys();

}  // namespace pitchgraph::cli
