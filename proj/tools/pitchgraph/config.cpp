#include "config.hpp"

#include <fstream>

#include "pitchgraph/error.hpp"

namespace pitchgraph::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw ValueError(key + ": expected a number, got '" + v + "'");
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != static_cast<int>(d) || d < 0) throw ValueError(key + ": expected a non-negative integer, got '" + v + "'");
  return static_cast<int>(d);
}

}  // namespace

const std::map<std::string, std::string>& known_keys() {
  static const std::map<std::string, std::string> keys = {
      {"data_dir", "dataset root read by build"},
      {"snapshot_dir", "directory holding labels.kgf, captions.kgf and entities.json"},
      {"backend", "rule or llm"},
      {"output_format", "text or json"},
      {"llm.base_url", "chat-completions endpoint root, e.g. https://host/v1"},
      {"llm.model", "model name sent with each request"},
      {"llm.temperature", "sampling temperature (default 0)"},
      {"llm.retry_cap", "re-asks after an unparsable query (default 1)"},
      {"llm.api_key_env", "environment variable holding the API key"},
      {"llm.token_budget", "stop after this many tokens, 0 = unlimited"},
      {"llm.timeout_seconds", "per-request timeout"},
      {"llm.max_in_flight", "concurrent request cap"},
  };
  return keys;
}

KeyValues parse_config_text(std::istream& in, const std::string& origin) {
  KeyValues kv;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string where = origin + ":" + std::to_string(n) + ": ";
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValueError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find("api_key") != std::string::npos && key != "llm.api_key_env")
      throw ValueError(where + "API keys are read from the environment only");
    if (!known_keys().count(key)) throw ValueError(where + "unknown key '" + key + "'");
    if (!kv.emplace(key, value).second) throw ValueError(where + "key '" + key + "' given twice");
  }
  return kv;
}

KeyValues load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  return parse_config_text(in, path.string());
}

void apply(Config& c, const KeyValues& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "data_dir") {
      c.data_dir = v;
    } else if (key == "snapshot_dir") {
      c.snapshot_dir = v;
    } else if (key == "backend") {
      if (v != "rule" && v != "llm") throw ValueError("backend must be rule or llm, got '" + v + "'");
      c.backend = v;
    } else if (key == "output_format") {
      if (v == "text") c.output_format = OutputFormat::Text;
      else if (v == "json") c.output_format = OutputFormat::Json;
      else throw ValueError("output_format must be text or json, got '" + v + "'");
    } else if (key.rfind("llm.", 0) == 0) {
      if (!c.llm) c.llm.emplace();
      auto& l = *c.llm;
      const std::string k = key.substr(4);
      if (k == "base_url") l.base_url = v;
      else if (k == "model") l.model = v;
      else if (k == "temperature") l.temperature = to_double(key, v);
      else if (k == "retry_cap") l.retry_cap = to_int(key, v);
      else if (k == "api_key_env") l.api_key_env = v;
      else if (k == "token_budget") l.token_budget = static_cast<std::size_t>(to_int(key, v));
      else if (k == "timeout_seconds") l.timeout_seconds = to_int(key, v);
      else if (k == "max_in_flight") l.max_in_flight = to_int(key, v);
      else throw ValueError("unknown key '" + key + "'");
    } else {
      throw ValueError("unknown key '" + key + "'");
    }
  }
}

void Config::check() const {
  if (backend != "llm") return;
  if (!llm || llm->base_url.empty() || llm->model.empty())
    throw ValueError("backend llm needs llm.base_url and llm.model");
}

}  // namespace pitchgraph::cli
