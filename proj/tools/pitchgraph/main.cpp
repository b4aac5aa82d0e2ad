// pitchgraph: build the two match graphs, query them, and ask questions.
#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "config.hpp"
#include "pitchgraph/error.hpp"
#include "pitchgraph/eval/bank.hpp"
#include "pitchgraph/eval/reports.hpp"
#include "pitchgraph/ingest/parse.hpp"
#include "pitchgraph/ingest/validate.hpp"
#include "pitchgraph/kg/builder.hpp"
#include "pitchgraph/kg/cypher_export.hpp"
#include "pitchgraph/nl/ask.hpp"
#include "pitchgraph/query/executor.hpp"
#include "pitchgraph/store/snapshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pitchgraph;
using cli::OutputFormat;

namespace {

constexpr int kOk = 0;
constexpr int kIo = 1;
constexpr int kValidation = 2;
constexpr int kUsage = 64;
constexpr int kBackend = 70;

int exit_code_for(std::string_view kind) {
  if (kind == "IoError" || kind == "VersionError" || kind == "FormatError") return kIo;
  if (kind == "TransportError" || kind == "BudgetError" || kind == "ExtractionError") return kBackend;
  if (kind == "UsageError") return kUsage;
  return kValidation;
}

struct UsageError : Error {
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "UsageError"; }
};

// Settings gathered from flags; unset optionals defer to the config file.
struct Flags {
  std::string config_path;
  std::optional<std::string> data_dir, snapshot_dir, backend, format;
  std::optional<std::string> llm_url, llm_model;
  std::optional<double> temperature;
  std::optional<int> retry_cap;
  bool trace = false;
};

cli::Config resolve(const Flags& f) {
  cli::Config c;
  if (!f.config_path.empty()) cli::apply(c, cli::load_config_file(f.config_path));
  cli::KeyValues kv;
  if (f.data_dir) kv["data_dir"] = *f.data_dir;
  if (f.snapshot_dir) kv["snapshot_dir"] = *f.snapshot_dir;
  if (f.backend) kv["backend"] = *f.backend;
  if (f.format) kv["output_format"] = *f.format;
  if (f.llm_url) kv["llm.base_url"] = *f.llm_url;
  if (f.llm_model) kv["llm.model"] = *f.llm_model;
  if (f.temperature) kv["llm.temperature"] = std::to_string(*f.temperature);
  if (f.retry_cap) kv["llm.retry_cap"] = std::to_string(*f.retry_cap);
  cli::apply(c, kv);
  try {
    c.check();
  } catch (const ValueError& e) {
    throw UsageError(e.what());
  }
  return c;
}

int report_error(OutputFormat fmt, std::string_view kind, const std::string& message, json extra = json::object()) {
  const int code = exit_code_for(kind);
  if (fmt == OutputFormat::Json) {
    json err{{"kind", kind}, {"message", message}, {"exit_code", code}};
    for (auto& [k, v] : extra.items()) err[k] = v;
    std::cout << json{{"error", err}}.dump(2) << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return code;
}

void emit(OutputFormat fmt, const json& j, const std::string& text) {
  if (fmt == OutputFormat::Json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

kg::BuildOutput load_snapshot(const fs::path& dir) {
  kg::BuildOutput out;
  for (const char* f : {"labels.kgf", "captions.kgf", "entities.json"})
    if (!fs::exists(dir / f)) throw IoError("missing " + (dir / f).string() + " (run build first)");
  out.labels_kg = store::snapshot_load(dir / "labels.kgf");
  out.captions_kg = store::snapshot_load(dir / "captions.kgf");
  std::ifstream in(dir / "entities.json");
  try {
    out.entity_dict = kg::EntityDictionary::from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw FormatError(0, "entities.json: " + std::string(e.what()));
  }
  return out;
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out << bytes;
  if (!out) throw IoError("write failed for " + p.string());
}

nl::AskConfig ask_config(const cli::Config& c, bool trace, bool llm_synthesis,
                         const std::optional<std::string>& graph) {
  nl::AskConfig a;
  a.backend = c.backend == "llm" ? nl::BackendKind::Llm : nl::BackendKind::Rule;
  a.llm = c.llm;
  a.llm_synthesis = llm_synthesis;
  if (graph) a.graph = *graph == "captions" ? kg::GraphKind::Captions : kg::GraphKind::Labels;
  if (trace) {
    a.trace = [](std::string_view what, std::string_view text) {
      std::cerr << "[trace " << what << "]\n" << text << "\n";
    };
  }
  return a;
}

int ask_exit(const nl::AskOutcome& o) { return o.ok() ? kOk : exit_code_for(o.error->kind); }

void print_outcome(OutputFormat fmt, const nl::AskOutcome& o) {
  emit(fmt, o.to_json(), o.to_text());
}

// ---- verbs -----------------------------------------------------------------

int cmd_build(const cli::Config& c) {
  const OutputFormat fmt = c.output_format;
  ingest::Dataset ds;
  try {
    ds = ingest::load_dataset(c.data_dir);
  } catch (const SchemaError& e) {
    return report_error(fmt, e.kind(), e.what(), json{{"path", e.path()}});
  }
  const auto report = ingest::validate_dataset(ds);
  if (!report.accepted()) {
    emit(fmt, json{{"error", {{"kind", "ValidationError"}, {"message", "dataset rejected"}, {"exit_code", kValidation},
                              {"report", report.to_json()}}}},
         report.to_text());
    return kValidation;
  }
  const auto out = kg::build_all(ds);
  fs::create_directories(c.snapshot_dir);
  write_file(c.snapshot_dir / "labels.kgf", store::snapshot_bytes(out.labels_kg));
  write_file(c.snapshot_dir / "captions.kgf", store::snapshot_bytes(out.captions_kg));
  write_file(c.snapshot_dir / "entities.json", out.entity_dict.to_json().dump(2) + "\n");
  const json stats = kg::stats_json(out);
  write_file(c.snapshot_dir / "stats.json", stats.dump(2) + "\n");
  emit(fmt, stats, kg::stats_text(out));
  return kOk;
}

int cmd_stats(const cli::Config& c) {
  const auto out = load_snapshot(c.snapshot_dir);
  const auto density = eval::report_density(out);
  json j = kg::stats_json(out);
  emit(c.output_format, j, kg::stats_text(out) + "\n" + density.to_text());
  return kOk;
}

int cmd_query(const cli::Config& c, std::optional<std::string> text, const std::string& graph) {
  if (!text) text = std::string(std::istreambuf_iterator<char>(std::cin), {});
  const auto out = load_snapshot(c.snapshot_dir);
  const auto& g = out.graph(graph == "captions" ? kg::GraphKind::Captions : kg::GraphKind::Labels);
  const auto table = query::execute(*text, g);
  emit(c.output_format, table.to_json(), table.to_text());
  return kOk;
}

int cmd_ask(const cli::Config& c, const std::string& question, bool trace, bool llm_synthesis,
            const std::optional<std::string>& graph) {
  const auto out = load_snapshot(c.snapshot_dir);
  const nl::Pipeline pipeline(out, ask_config(c, trace, llm_synthesis, graph));
  const auto o = pipeline.ask(question);
  print_outcome(c.output_format, o);
  if (!o.ok() && c.output_format == OutputFormat::Text) std::cerr << "error: " << o.error->message << "\n";
  return ask_exit(o);
}

constexpr const char* kReplHelp = "commands: :quit | :backend rule|llm | :trace on|off";

int cmd_repl(cli::Config c, bool trace) {
  const auto out = load_snapshot(c.snapshot_dir);
  auto pipeline = std::make_unique<nl::Pipeline>(out, ask_config(c, trace, false, std::nullopt));
  const bool tty = isatty(STDIN_FILENO) != 0;
  std::string line;
  for (;;) {
    if (tty) std::cout << "pitchgraph> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    if (line[0] == ':') {
      std::istringstream words(line);
      std::string cmd, arg, extra;
      words >> cmd >> arg >> extra;
      const bool ok_arg = extra.empty();
      if (cmd == ":quit" && arg.empty()) break;
      if (cmd == ":backend" && ok_arg && (arg == "rule" || arg == "llm")) {
        if (arg == "llm" && (!c.llm || c.llm->base_url.empty() || c.llm->model.empty())) {
          std::cout << "backend llm needs llm.base_url and llm.model\n";
          continue;
        }
        c.backend = arg;
        pipeline = std::make_unique<nl::Pipeline>(out, ask_config(c, trace, false, std::nullopt));
        std::cout << "backend: " << arg << "\n";
        continue;
      }
      if (cmd == ":trace" && ok_arg && (arg == "on" || arg == "off")) {
        trace = arg == "on";
        pipeline = std::make_unique<nl::Pipeline>(out, ask_config(c, trace, false, std::nullopt));
        std::cout << "trace: " << arg << "\n";
        continue;
      }
      std::cout << kReplHelp << "\n";
      continue;
    }
    const auto o = pipeline->ask(line);
    print_outcome(c.output_format, o);
    if (!o.ok() && c.output_format == OutputFormat::Text) std::cout << "error: " << o.error->message << "\n";
    if (c.output_format == OutputFormat::Text) std::cout << "\n";
  }
  return kOk;
}

std::vector<eval::BankEntry> bank_for(const std::string& path, bool all) {
  auto bank = eval::load_bank(path);
  return all ? bank : eval::default_subset(bank);
}

int cmd_bench(const cli::Config& c, const std::string& bank_path, bool all, int reps,
              const std::string& baseline_path) {
  if (reps < 3) throw UsageError("--reps must be at least 3");
  const auto out = load_snapshot(c.snapshot_dir);
  const nl::Pipeline pipeline(out, ask_config(c, false, false, std::nullopt));
  std::optional<eval::Baseline> baseline;
  if (!baseline_path.empty()) baseline = eval::load_baseline(baseline_path);
  const auto r = eval::run_timing(bank_for(bank_path, all), reps, pipeline, baseline);
  emit(c.output_format, r.to_json(), r.to_text());
  return kOk;
}

int cmd_accuracy(const cli::Config& c, const std::string& bank_path, bool all, int iterations, int threads,
                 const std::string& baseline_path) {
  if (iterations < 1) throw UsageError("--iterations must be at least 1");
  const auto out = load_snapshot(c.snapshot_dir);
  const nl::Pipeline pipeline(out, ask_config(c, false, false, std::nullopt));
  eval::AccuracyOptions opt;
  opt.iterations = iterations;
  opt.threads = threads;
  std::vector<eval::AccuracyReport> reports{eval::run_accuracy(bank_for(bank_path, all), pipeline, opt)};
  if (!baseline_path.empty()) {
    for (auto& r : eval::load_accuracy_matrices(baseline_path)) {
      r.system = "literature:" + r.system;
      reports.push_back(std::move(r));
    }
  }
  json j{{"systems", json::array()}};
  std::string text;
  for (const auto& r : reports) {
    j["systems"].push_back(r.to_json());
    text += r.to_text() + "\n";
  }
  emit(c.output_format, j, text);
  return kOk;
}

int cmd_export_cypher(const cli::Config& c, const std::string& output) {
  const auto out = load_snapshot(c.snapshot_dir);
  std::ostringstream os;
  kg::export_cypher(out, os);
  const std::string script = os.str();
  const auto lines = static_cast<std::size_t>(std::count(script.begin(), script.end(), '\n'));
  if (!output.empty()) {
    write_file(output, script);
    emit(c.output_format, json{{"path", output}, {"statements", lines}},
         "wrote " + std::to_string(lines) + " statements to " + output + "\n");
  } else if (c.output_format == OutputFormat::Json) {
    json stmts = json::array();
    std::istringstream in(script);
    for (std::string l; std::getline(in, l);) stmts.push_back(l);
    std::cout << json{{"statements", stmts}}.dump(2) << "\n";
  } else {
    std::cout << script;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soccer match knowledge graphs: build, query and ask questions."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every verb");
  Flags f;
  app.add_option("--config", f.config_path, "key = value settings file (flags override it)")->check(CLI::ExistingFile);
  app.add_option("--data-dir", f.data_dir, "dataset root for build");
  app.add_option("--snapshot-dir", f.snapshot_dir, "directory holding the built snapshot");
  app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--backend", f.backend, "question translation backend")->check(CLI::IsMember({"rule", "llm"}));
  app.add_option("--llm-url", f.llm_url, "chat-completions endpoint root");
  app.add_option("--llm-model", f.llm_model, "model name");
  app.add_option("--temperature", f.temperature, "sampling temperature");
  app.add_option("--retry-cap", f.retry_cap, "re-asks after an unparsable query")->check(CLI::NonNegativeNumber);
  app.add_flag("--trace", f.trace, "log prompts and raw model replies to stderr");

  auto* build = app.add_subcommand("build", "Build both graphs and write the snapshot");
  std::optional<std::string> build_dir;
  build->add_option("data_dir", build_dir, "dataset root (overrides --data-dir)");

  app.add_subcommand("stats", "Node and edge counts by label and type, plus density");

  auto* query = app.add_subcommand("query", "Run one query (argument or stdin)");
  std::optional<std::string> query_text;
  std::string graph = "labels";
  query->add_option("query", query_text, "query text; read from stdin when absent");
  query->add_option("--graph", graph, "graph to query")->check(CLI::IsMember({"labels", "captions"}));

  auto* ask = app.add_subcommand("ask", "Answer a natural-language question");
  std::string question;
  std::optional<std::string> ask_graph;
  bool llm_synthesis = false;
  ask->add_option("question", question, "the question")->required();
  ask->add_option("--graph", ask_graph, "skip routing and use this graph")
      ->check(CLI::IsMember({"labels", "captions"}));
  ask->add_flag("--llm-synthesis", llm_synthesis, "let the model write the answer sentence");

  app.add_subcommand("repl", "Interactive questions, one per line")->footer(kReplHelp);

  std::string bank_path = (fs::path(PITCHGRAPH_DEFAULT_DATA) / "questions.jsonl").string();
  bool all = false;
  int reps = 5;
  int iterations = 5;
  int threads = 1;
  std::string baseline_path;
  auto* bench = app.add_subcommand("bench", "Time the question bank");
  bench->add_option("--bank", bank_path, "question bank (JSON lines)")->capture_default_str();
  bench->add_flag("--all", all, "use every bank entry, not only the default subset");
  bench->add_option("--reps", reps, "repetitions per question (>= 3, first is discarded)")->capture_default_str();
  bench->add_option("--baseline", baseline_path, "literature timings to compare against");

  auto* accuracy = app.add_subcommand("accuracy", "Judge answers against the bank's gold values");
  accuracy->add_option("--bank", bank_path, "question bank (JSON lines)")->capture_default_str();
  accuracy->add_flag("--all", all, "use every bank entry, not only the default subset");
  accuracy->add_option("--iterations", iterations, "asks per question")->capture_default_str();
  accuracy->add_option("--threads", threads, "workers (deterministic backend only)")->capture_default_str();
  accuracy->add_option("--baseline", baseline_path, "literature correctness matrices to print alongside");

  auto* exportc = app.add_subcommand("export-cypher", "Write both graphs as CREATE statements");
  std::string output;
  exportc->add_option("-o,--output", output, "file to write instead of stdout");

  OutputFormat fmt = OutputFormat::Text;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (f.format && *f.format == "json") fmt = OutputFormat::Json;

  try {
    if (build_dir) f.data_dir = build_dir;
    cli::Config c;
    try {
      c = resolve(f);
    } catch (const ValueError& e) {
      throw UsageError(e.what());
    }
    fmt = c.output_format;
    if (build->parsed()) return cmd_build(c);
    if (app.got_subcommand("stats")) return cmd_stats(c);
    if (query->parsed()) return cmd_query(c, query_text, graph);
    if (ask->parsed()) return cmd_ask(c, question, f.trace, llm_synthesis, ask_graph);
    if (app.got_subcommand("repl")) return cmd_repl(c, f.trace);
    if (bench->parsed()) return cmd_bench(c, bank_path, all, reps, baseline_path);
    if (accuracy->parsed()) return cmd_accuracy(c, bank_path, all, iterations, threads, baseline_path);
    if (exportc->parsed()) return cmd_export_cypher(c, output);
  } catch (const ParseError& e) {
    return report_error(fmt, e.kind(), e.what(), json{{"offset", e.offset()}, {"expected", e.expected()}});
  } catch (const LexError& e) {
    return report_error(fmt, e.kind(), e.what(), json{{"offset", e.offset()}});
  } catch (const Error& e) {
    return report_error(fmt, e.kind(), e.what());
  } catch (const fs::filesystem_error& e) {
    return report_error(fmt, "IoError", e.what());
  }
  return kUsage;
}
