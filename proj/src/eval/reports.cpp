#include "pitchgraph/eval/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "pitchgraph/error.hpp"

namespace pitchgraph::eval {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string environment() {
  std::ostringstream os;
  os << "compiler " << __VERSION__ << "; " << std::thread::hardware_concurrency() << " hardware threads";
#ifdef NDEBUG
  os << "; optimized build";
#else
  os << "; debug build";
#endif
  os << "; serial asks, cold first repetition excluded from the median";
  return os.str();
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw BaselineFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

double improvement_pct(double baseline, double ours) {
  if (!(baseline > 0)) throw ValueError("baseline time must be positive");
  return (baseline - ours) / baseline * 100.0;
}

double accuracy_pct(std::size_t correct, std::size_t total) {
  if (total == 0) throw ValueError("accuracy of an empty matrix");
  if (correct > total) throw ValueError("more correct answers than questions");
  return static_cast<double>(correct) / static_cast<double>(total) * 100.0;
}

double warm_median(const std::vector<double>& samples) {
  if (samples.size() < 3) throw ValueError("a median needs at least 3 repetitions");
  std::vector<double> warm(samples.begin() + 1, samples.end());
  std::sort(warm.begin(), warm.end());
  const std::size_t n = warm.size();
  return n % 2 ? warm[n / 2] : (warm[n / 2 - 1] + warm[n / 2]) / 2.0;
}

Baseline parse_baseline(const json& j) {
  Baseline b;
  try {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_object()) {
      throw BaselineFormatError("baseline needs an object \"rows\"");
    }
    const std::string unit = j.value("unit", "s");
    double scale = 1.0;
    if (unit == "ms") scale = 1e-3;
    else if (unit != "s") throw BaselineFormatError("unknown unit '" + unit + "'");
    b.note = j.value("note", "");
    for (const auto& [id, row] : j["rows"].items()) {
      const json& v = row.is_object() ? row.at("baseline") : row;
      if (!v.is_number() || v.get<double>() <= 0) throw BaselineFormatError("row " + id + ": baseline must be a positive number");
      b.seconds[id] = v.get<double>() * scale;
    }
  } catch (const json::exception& e) {
    throw BaselineFormatError(e.what());
  }
  return b;
}

Baseline load_baseline(const std::filesystem::path& path) { return parse_baseline(read_json(path)); }

std::vector<double> time_reps(const std::function<void()>& work, int reps) {
  if (reps < 3) throw ValueError("timing needs at least 3 repetitions");
  std::vector<double> out;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    work();
    out.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return out;
}

BenchReport run_timing(const std::vector<BankEntry>& bank, int reps, const nl::Pipeline& pipeline,
                       const std::optional<Baseline>& baseline) {
  if (reps < 3) throw ValueError("bench needs --reps of at least 3");
  BenchReport r;
  r.reps = reps;
  r.environment = environment();
  if (baseline) r.baseline_note = baseline->note;
  for (const auto& q : bank) {
    BenchEntry e;
    e.id = q.id;
    e.category = q.category;
    e.question = q.question;
    e.ours_ms = time_reps([&] { e.ok = pipeline.ask(q.question).ok() && e.ok; }, reps);
    e.median_ms = warm_median(e.ours_ms);
    if (baseline) {
      // Literature rows are keyed by category (Q1..Q10).
      if (const auto it = baseline->seconds.find("Q" + std::to_string(q.category)); it != baseline->seconds.end()) {
        e.baseline_ms = it->second * 1000.0;
        e.improvement_pct = improvement_pct(*e.baseline_ms, e.median_ms);
      }
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

std::string BenchReport::to_text() const {
  const bool with_baseline = std::any_of(entries.begin(), entries.end(), [](const BenchEntry& e) { return e.baseline_ms.has_value(); });
  std::ostringstream os;
  os << pad("id", 6) << pad("median ms", 12);
  if (with_baseline) os << pad("baseline ms", 14) << "improvement %";
  os << "\n";
  for (const auto& e : entries) {
    os << pad(e.id, 6) << pad(fixed(e.median_ms, 3), 12);
    if (with_baseline) {
      os << pad(e.baseline_ms ? fixed(*e.baseline_ms, 0) : "-", 14)
         << (e.improvement_pct ? fixed(*e.improvement_pct, 2) : "-");
    }
    if (!e.ok) os << "  (error)";
    os << "\n";
  }
  os << "repetitions: " << reps << "\n" << "environment: " << environment << "\n";
  if (!baseline_note.empty()) os << "baseline: " << baseline_note << "\n";
  return os.str();
}

json BenchReport::to_json() const {
  json j{{"reps", reps}, {"environment", environment}, {"entries", json::array()}};
  if (!baseline_note.empty()) j["baseline_note"] = baseline_note;
  for (const auto& e : entries) {
    json x{{"id", e.id}, {"category", e.category}, {"question", e.question}, {"ours_ms", e.ours_ms}, {"median_ms", e.median_ms}, {"ok", e.ok}};
    if (e.baseline_ms) x["baseline_ms"] = *e.baseline_ms;
    if (e.improvement_pct) x["improvement_pct"] = *e.improvement_pct;
    j["entries"].push_back(std::move(x));
  }
  return j;
}

std::size_t AccuracyReport::correct() const {
  std::size_t n = 0;
  for (const auto& row : matrix) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  return n;
}

std::size_t AccuracyReport::total() const {
  std::size_t n = 0;
  for (const auto& row : matrix) n += row.size();
  return n;
}

double AccuracyReport::self_consistency() const {
  if (answers.empty()) return 0.0;
  std::size_t same = 0;
  for (const auto& row : answers) {
    same += std::all_of(row.begin(), row.end(), [&](const std::string& a) { return a == row.front(); });
  }
  return static_cast<double>(same) / static_cast<double>(answers.size()) * 100.0;
}

std::string AccuracyReport::to_text() const {
  std::ostringstream os;
  os << system << "\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    os << pad(ids[i], 6);
    for (bool ok : matrix[i]) os << (ok ? " Y" : " N");
    os << "\n";
  }
  os << "correct " << correct() << " of " << total() << ": " << fixed(accuracy(), 2) << "%\n";
  if (!answers.empty()) os << "self-consistency: " << fixed(self_consistency(), 2) << "%\n";
  return os.str();
}

json AccuracyReport::to_json() const {
  json j{{"system", system}, {"correct", correct()}, {"total", total()}, {"accuracy_pct", accuracy()}};
  j["matrix"] = json::object();
  for (std::size_t i = 0; i < ids.size(); ++i) j["matrix"][ids[i]] = matrix[i];
  if (!answers.empty()) {
    j["self_consistency_pct"] = self_consistency();
    j["answers"] = json::object();
    for (std::size_t i = 0; i < ids.size(); ++i) j["answers"][ids[i]] = answers[i];
  }
  return j;
}

AccuracyReport run_accuracy(const std::vector<BankEntry>& bank, const nl::Pipeline& pipeline,
                            const AccuracyOptions& options) {
  if (options.iterations < 1) throw ValueError("accuracy needs at least one iteration");
  AccuracyReport r;
  r.system = pipeline.config().backend == nl::BackendKind::Rule ? "rule" : "llm";
  r.ids.reserve(bank.size());
  for (const auto& q : bank) r.ids.push_back(q.id);
  r.matrix.assign(bank.size(), std::vector<bool>(static_cast<std::size_t>(options.iterations), false));
  r.answers.assign(bank.size(), std::vector<std::string>(static_cast<std::size_t>(options.iterations)));

  const auto run_one = [&](std::size_t i) {
    for (int it = 0; it < options.iterations; ++it) {
      const auto o = pipeline.ask(bank[i].question);
      const auto k = static_cast<std::size_t>(it);
      r.answers[i][k] = o.answer;
      r.matrix[i][k] = o.ok() && judge(bank[i].gold, o.repaired_question, o.answer, pipeline.graphs().entity_dict);
    }
  };
  const bool deterministic = pipeline.config().backend == nl::BackendKind::Rule && !pipeline.config().llm_synthesis;
  const std::size_t threads = deterministic ? static_cast<std::size_t>(std::max(1, options.threads)) : 1;
  if (threads == 1) {
    for (std::size_t i = 0; i < bank.size(); ++i) run_one(i);
  } else {
    // Rows are disjoint, so workers write without locking.
    std::vector<std::future<void>> jobs;
    for (std::size_t t = 0; t < threads; ++t) {
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < bank.size(); i += threads) run_one(i);
      }));
    }
    for (auto& j : jobs) j.get();
  }
  return r;
}

std::vector<AccuracyReport> parse_accuracy_matrices(const json& j) {
  std::vector<AccuracyReport> out;
  try {
    if (!j.contains("systems") || !j["systems"].is_object()) throw BaselineFormatError("needs an object \"systems\"");
    for (const auto& [name, rows] : j["systems"].items()) {
      AccuracyReport r;
      r.system = name;
      std::size_t width = 0;
      for (const auto& [id, cells] : rows.items()) {
        const std::string s = cells.get<std::string>();
        if (s.empty() || s.find_first_not_of("YN") != std::string::npos) {
          throw BaselineFormatError(name + "/" + id + ": cells must be Y or N");
        }
        if (width != 0 && s.size() != width) throw BaselineFormatError(name + "/" + id + ": ragged matrix");
        width = s.size();
        r.ids.push_back(id);
        std::vector<bool> row;
        for (char c : s) row.push_back(c == 'Y');
        r.matrix.push_back(std::move(row));
      }
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw BaselineFormatError(e.what());
  }
  return out;
}

std::vector<AccuracyReport> load_accuracy_matrices(const std::filesystem::path& path) {
  return parse_accuracy_matrices(read_json(path));
}

std::string three_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

DensityReport report_density(const kg::BuildOutput& graphs) {
  DensityReport r;
  for (auto kind : {kg::GraphKind::Labels, kg::GraphKind::Captions}) {
    const auto& g = graphs.graph(kind);
    DensityEntry e;
    e.graph = std::string(kg::to_string(kind));
    e.nodes = g.node_count();
    e.edges = g.edge_count();
    try {
      e.density = store::density(g);
    } catch (const DegenerateGraphError&) {
      // Fewer than two nodes: reported as n/a.
    }
    r.entries.push_back(e);
  }
  return r;
}

std::string DensityReport::to_text() const {
  std::ostringstream os;
  os << pad("graph", 10) << pad("nodes", 10) << pad("edges", 10) << pad("density", 12) << "sparse\n";
  for (const auto& e : entries) {
    os << pad(e.graph, 10) << pad(std::to_string(e.nodes), 10) << pad(std::to_string(e.edges), 10)
       << pad(e.density ? three_sig(*e.density) : "n/a", 12) << (e.density ? (e.sparse() ? "yes" : "no") : "n/a")
       << "\n";
  }
  return os.str();
}

json DensityReport::to_json() const {
  json j{{"graphs", json::array()}};
  for (const auto& e : entries) {
    json x{{"graph", e.graph}, {"nodes", e.nodes}, {"edges", e.edges}};
    if (e.density) {
      x["density"] = *e.density;
      x["density_3sf"] = three_sig(*e.density);
      x["sparse"] = e.sparse();
    } else {
      x["density"] = nullptr;
      x["sparse"] = nullptr;
    }
    j["graphs"].push_back(std::move(x));
  }
  return j;
}

}  // namespace pitchgraph::eval
