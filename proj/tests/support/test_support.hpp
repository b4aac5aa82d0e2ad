#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "pitchgraph/ingest/records.hpp"
#include "pitchgraph/kg/builder.hpp"
#include "pitchgraph/store/graph.hpp"

namespace pitchgraph::testing {

std::filesystem::path fixture_dir();
std::filesystem::path data_dir();
std::filesystem::path golden_dir();
std::string read_file(const std::filesystem::path& p);

// Loaded and built once per process.
const ingest::Dataset& fixture_dataset();
const kg::BuildOutput& fixture_build();

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct RandomGraphSpec {
  std::size_t nodes = 30;
  std::size_t edges = 60;
  std::vector<std::string> labels{"Game", "Team", "Player"};
  std::vector<std::string> edge_types{"PLAYS_FOR", "PLAYED_IN", "WINNER"};
  std::vector<std::string> keys{"name", "season", "clock"};
  std::size_t distinct_values = 4;  // per key
  bool self_loops = true;
};

// Small random property graph; values are drawn from small pools so
// equality probes and joins hit often. "clock" is numeric (Int, with the
// occasional Float), other keys are Text. Keys are sometimes absent.
store::Graph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec = {});

// Synthetic dataset with a few games (draws included), random annotations
// and lineups carrying random facts. Already consistent.
ingest::Dataset random_dataset(std::mt19937_64& rng);

// Construction-rule violations found in a built pair of graphs, one
// message per violation.
std::vector<std::string> invariant_violations(const kg::BuildOutput& out, const ingest::Dataset& ds);

}  // namespace pitchgraph::testing
