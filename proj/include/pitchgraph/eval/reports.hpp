#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pitchgraph/eval/bank.hpp"
#include "pitchgraph/kg/builder.hpp"
#include "pitchgraph/nl/ask.hpp"

namespace pitchgraph::eval {

// (baseline - ours) / baseline * 100.
double improvement_pct(double baseline, double ours);

// correct / total * 100. Throws ValueError when total is 0.
double accuracy_pct(std::size_t correct, std::size_t total);

// Median of `samples` after dropping the first (cold) one. Needs at least
// three samples.
double warm_median(const std::vector<double>& samples);

// Literature timings keyed by category ("Q1"...), in seconds.
struct Baseline {
  std::string note;
  std::map<std::string, double> seconds;
};
// {"note": ..., "unit": "s", "rows": {"Q1": {"baseline": 4.61, ...}, ...}}.
// Throws BaselineFormatError.
Baseline load_baseline(const std::filesystem::path& path);
Baseline parse_baseline(const nlohmann::json& j);

struct BenchEntry {
  std::string id;
  int category = 0;
  std::string question;
  std::vector<double> ours_ms;  // every repetition, the cold one first
  double median_ms = 0;
  std::optional<double> baseline_ms;
  std::optional<double> improvement_pct;
  bool ok = true;  // the ask produced an answer without error
};

struct BenchReport {
  std::vector<BenchEntry> entries;
  int reps = 0;
  std::string environment;
  std::string baseline_note;

  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

// Serial wall-clock timing of each question, `reps` times (>= 3).
BenchReport run_timing(const std::vector<BankEntry>& bank, int reps, const nl::Pipeline& pipeline,
                       const std::optional<Baseline>& baseline = std::nullopt);

// Same protocol over an arbitrary closure; used for the sanity floor.
std::vector<double> time_reps(const std::function<void()>& work, int reps);

struct AccuracyReport {
  std::string system;
  std::vector<std::string> ids;
  std::vector<std::vector<bool>> matrix;         // question x iteration
  std::vector<std::vector<std::string>> answers;  // empty for literature matrices

  [[nodiscard]] std::size_t correct() const;
  [[nodiscard]] std::size_t total() const;
  [[nodiscard]] double accuracy() const { return accuracy_pct(correct(), total()); }
  // Percentage of questions whose answers were identical across iterations.
  [[nodiscard]] double self_consistency() const;

  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

struct AccuracyOptions {
  int iterations = 5;
  int threads = 1;  // only honoured for deterministic backends
};

AccuracyReport run_accuracy(const std::vector<BankEntry>& bank, const nl::Pipeline& pipeline,
                            const AccuracyOptions& options = {});

// Literature correctness matrices: {"systems": {"name": {"Q1": "YYNYY", ...}}}.
// Throws BaselineFormatError.
std::vector<AccuracyReport> load_accuracy_matrices(const std::filesystem::path& path);
std::vector<AccuracyReport> parse_accuracy_matrices(const nlohmann::json& j);

struct DensityEntry {
  std::string graph;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::optional<double> density;  // empty below two nodes
  [[nodiscard]] bool sparse() const { return density && *density < 1e-2; }
};

struct DensityReport {
  std::vector<DensityEntry> entries;
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

DensityReport report_density(const kg::BuildOutput& graphs);

// Three significant figures ("2.85e-06", "0.5", "1").
std::string three_sig(double v);

}  // namespace pitchgraph::eval
