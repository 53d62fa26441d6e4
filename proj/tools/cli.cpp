#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "texcurve/curation.hpp"
#include "texcurve/elo.hpp"
#include "texcurve/error.hpp"
#include "texcurve/grid.hpp"
#include "texcurve/human_queue.hpp"
#include "texcurve/judge.hpp"
#include "texcurve/render_plan.hpp"

namespace texcurve::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

// Flags that feed the layered Settings store rather than plain variables.
class SettingFlags {
 public:
  CLI::Option* add(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    CLI::Option* opt = app->add_option(name, values_[key], help);
    bound_.emplace_back(opt, key);
    return opt;
  }

  void apply(Settings& settings) const {
    for (const auto& [opt, key] : bound_) {
      if (opt->count() > 0) settings.set_flag(key, values_.at(key));
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<CLI::Option*, std::string>> bound_;
};

struct Context {
  Settings settings;
  std::ostream& out;
  std::ostream& err;
  bool verbose = false;

  void echo_settings() {
    if (!verbose) return;
    for (const auto& e : settings.effective()) {
      const bool secret = e.key.find("api_key") != std::string::npos;
      err << "setting " << e.key << " = "
          << (secret ? (e.value.empty() ? "<unset>" : "<redacted>") : e.value) << " ("
          << to_string(e.source) << ")\n";
    }
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string safe_file_stem(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '-' && c != '_' && c != '.') c = '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

std::string resolve_against(const fs::path& base, const std::string& path) {
  const fs::path p(path);
  return p.is_relative() && !base.empty() ? (base / p).string() : p.string();
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string manifest;
  std::string out;
  std::string failures;
};

int cmd_score(Context& ctx, const ScoreArgs& args) {
  ScoringConfig config;
  try {
    config.lambda = ctx.settings.get_double("lambda", kDefaultLambda);
    config.entropy_base = ctx.settings.get_double("entropy_base", kDefaultEntropyBase);
    config.mask_mode = parse_mask_mode(ctx.settings.get("mask_mode", "auto"));
    config.aggregation = parse_aggregation(ctx.settings.get("aggregation", "mean"));
    config.jobs = static_cast<std::size_t>(std::max<unsigned long long>(1, ctx.settings.get_uint("jobs", 1)));
    (void)total_score(0.0, 0.0, config.lambda);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  ctx.echo_settings();

  CurationManifest manifest;
  try {
    manifest = read_manifest(args.manifest);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  if (manifest.records.empty()) {
    ctx.err << "error: manifest " << args.manifest << " has no records\n";
    return kFatal;
  }
  config.base_dir = fs::path(args.manifest).parent_path();

  const CorpusResult result = score_corpus(manifest, config);
  try {
    ensure_parent(args.out);
    save_manifest(args.out, result.manifest);
    if (!args.failures.empty()) {
      ensure_parent(args.failures);
      std::ofstream f(args.failures, std::ios::trunc);
      for (const RecordFailure& fail : result.failures) {
        f << json{{"object_id", fail.object_id}, {"message", fail.message}, {"paths", fail.paths}}.dump() << "\n";
      }
    }
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }

  for (const RecordFailure& fail : result.failures) {
    ctx.err << "failed " << fail.object_id << ": " << fail.message << "\n";
  }
  const std::size_t scored = result.manifest.records.size() - result.failures.size();
  ctx.err << "scored " << scored << " of " << result.manifest.records.size() << " objects";
  if (!result.failures.empty()) ctx.err << ", " << result.failures.size() << " failed";
  ctx.err << "\n";
  return result.failures.empty() ? kSuccess : kPartial;
}

// ---------------------------------------------------------------------------
// filter

struct FilterArgs {
  std::string manifest;
  std::string out;
};

int cmd_filter(Context& ctx, const FilterArgs& args) {
  unsigned long long k = 0;
  try {
    k = ctx.settings.get_uint("top_k", 100000);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  ctx.echo_settings();
  try {
    const CurationManifest top = select_top_k(read_manifest(args.manifest), static_cast<std::size_t>(k));
    ensure_parent(args.out);
    save_manifest(args.out, top);
    ctx.err << "selected " << top.records.size() << " objects\n";
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// plan

struct PlanArgs {
  std::string objects;
  std::string out_dir;
};

std::vector<std::string> read_object_ids(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read object list " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line[first] == '{') {
      const json j = json::parse(line);
      if (j.contains("manifest_meta")) continue;
      ids.push_back(j.at("object_id").get<std::string>());
    } else {
      ids.push_back(line.substr(first, line.find_last_not_of(" \t\r") - first + 1));
    }
  }
  return ids;
}

int cmd_plan(Context& ctx, const PlanArgs& args) {
  std::uint64_t seed = 0;
  std::size_t refs = 0;
  ReferenceSampling sampling;
  try {
    seed = ctx.settings.get_uint("seed", 0);
    refs = static_cast<std::size_t>(ctx.settings.get_uint("refs", kDefaultReferenceCount));
    sampling.hdri_pool = static_cast<int>(ctx.settings.get_int("hdri_pool", 100));
    if (sampling.hdri_pool < 1) throw std::runtime_error("hdri_pool must be at least 1");
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  ctx.echo_settings();

  try {
    const std::vector<std::string> ids = read_object_ids(args.objects);
    std::set<std::string> files;
    for (const std::string& id : ids) {
      if (!files.insert(safe_file_stem(id)).second) {
        throw std::runtime_error("object id '" + id + "' is duplicated or collides with another after "
                                 "file-name sanitizing");
      }
    }
    fs::create_directories(args.out_dir);
    for (const std::string& id : ids) {
      const std::string text = emit_plan(make_render_plan(id, seed, refs, sampling));
      const fs::path file = fs::path(args.out_dir) / (safe_file_stem(id) + ".json");
      std::ofstream out(file, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) throw std::runtime_error("cannot write " + file.string());
    }
    ctx.err << "wrote " << ids.size() << " plans to " << args.out_dir << "\n";
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string methods;
  std::string reference_dir;
  std::vector<std::string> dimensions;
  std::string out;
  std::string tasks_out;
  std::string grids_dir;
  std::string failures;
};

std::vector<MethodEntry> read_methods(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read methods file " + path.string());
  const json doc = json::parse(in);
  const fs::path base = path.parent_path();
  std::vector<MethodEntry> methods;
  for (const json& m : doc.at("methods")) {
    MethodEntry entry;
    entry.method_id = m.at("method_id").get<std::string>();
    for (const auto& [sample, views] : m.at("samples").items()) {
      std::vector<std::string> paths;
      for (const json& v : views) paths.push_back(resolve_against(base, v.get<std::string>()));
      entry.samples.emplace(sample, std::move(paths));
    }
    methods.push_back(std::move(entry));
  }
  return methods;
}

std::string find_reference(const fs::path& dir, const std::string& sample_id) {
  for (const char* ext : {".png", ".jpg", ".jpeg", ".PNG", ".JPG", ".JPEG"}) {
    const fs::path candidate = dir / (sample_id + ext);
    if (fs::is_regular_file(candidate)) return candidate.string();
  }
  throw std::runtime_error("no reference image for sample '" + sample_id + "' in " + dir.string());
}

std::map<Dimension, std::string> load_prompt_templates(const std::string& dir) {
  std::map<Dimension, std::string> templates;
  if (dir.empty()) return templates;
  for (Dimension d : all_dimensions()) {
    const fs::path file = fs::path(dir) / (std::string(to_string(d)) + ".txt");
    std::ifstream in(file);
    if (!in) continue;
    std::string text, line;
    while (std::getline(in, line)) {
      if (!line.starts_with('#')) text += line + "\n";
    }
    templates[d] = text;
  }
  return templates;
}

void write_failure_report(Context& ctx, const std::string& path, const std::vector<TaskFailure>& failures) {
  for (const TaskFailure& f : failures) {
    ctx.err << "task " << f.task_id << " failed (" << f.kind << "): " << f.message << "\n";
  }
  if (path.empty()) return;
  ensure_parent(path);
  std::ofstream out(path, std::ios::trunc);
  for (const TaskFailure& f : failures) {
    out << json{{"task_id", f.task_id}, {"kind", f.kind}, {"message", f.message}}.dump() << "\n";
  }
}

int cmd_evaluate(Context& ctx, const EvaluateArgs& args) {
  std::string judge_kind, mock_order, prompt_dir;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  GridOptions grid;
  VlmConfig vlm;
  try {
    judge_kind = ctx.settings.get("judge", "mock");
    seed = ctx.settings.get_uint("seed", 0);
    jobs = static_cast<std::size_t>(std::max<unsigned long long>(1, ctx.settings.get_uint("jobs", 1)));
    const auto cell = ctx.settings.get_int("cell_size", 512);
    grid.label_strip = static_cast<int>(ctx.settings.get_int("label_strip", 64));
    if (cell <= 0 || grid.label_strip < 0) throw std::runtime_error("cell_size must be positive");
    grid.cell_width = grid.cell_height = static_cast<int>(cell);
    if (judge_kind == "mock") {
      mock_order = ctx.settings.get("mock_order", "");
    } else if (judge_kind == "vlm") {
      vlm.endpoint = ctx.settings.get("vlm_endpoint", "");
      vlm.model = ctx.settings.get("vlm_model", "");
      vlm.api_key = ctx.settings.get("vlm_api_key", "");
      vlm.max_retries = static_cast<int>(ctx.settings.get_int("vlm_retries", 3));
      vlm.timeout = std::chrono::seconds(ctx.settings.get_int("vlm_timeout", 120));
      prompt_dir = ctx.settings.get("prompt_dir", "");
    } else if (judge_kind != "none") {
      throw std::runtime_error("unknown judge '" + judge_kind + "' (expected mock, vlm or none)");
    }
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  ctx.echo_settings();

  if (judge_kind == "vlm" && vlm.endpoint.empty()) {
    ctx.err << "error: --judge vlm needs an endpoint (--vlm-endpoint, TEXCURVE_VLM_ENDPOINT or vlm_endpoint "
               "in the config file)\n";
    return kFatal;
  }
  if (judge_kind == "none" && args.tasks_out.empty()) {
    ctx.err << "error: --judge none only prepares tasks; pass --tasks-out\n";
    return kFatal;
  }
  if (judge_kind != "none" && args.out.empty()) {
    ctx.err << "error: --out is required\n";
    return kFatal;
  }

  std::vector<ComparisonTask> tasks;
  std::vector<MethodEntry> methods;
  try {
    methods = read_methods(args.methods);
    std::set<std::string> sample_ids;
    for (const MethodEntry& m : methods) {
      for (const auto& [id, views] : m.samples) sample_ids.insert(id);
    }
    std::vector<SampleRef> samples;
    for (const std::string& id : sample_ids) samples.push_back({id, find_reference(args.reference_dir, id)});

    std::vector<Dimension> dimensions;
    for (const std::string& d : args.dimensions) {
      const Dimension dim = parse_dimension(d);
      if (std::find(dimensions.begin(), dimensions.end(), dim) == dimensions.end()) dimensions.push_back(dim);
    }
    if (dimensions.empty()) dimensions = all_dimensions();

    tasks = build_tasks(methods, samples, dimensions, seed);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }

  // Assemble each distinct grid once; tasks share grids across dimensions.
  const fs::path grids_dir = !args.grids_dir.empty() ? fs::path(args.grids_dir)
                             : !args.out.empty()     ? fs::path(args.out).parent_path() / "grids"
                                                     : fs::path(args.tasks_out).parent_path() / "grids";
  std::map<std::string, const ComparisonTask*> unique_grids;
  for (ComparisonTask& t : tasks) {
    t.grid_path = (grids_dir / grid_file_name(t)).string();
    unique_grids.emplace(t.grid_path, &t);
  }
  std::map<std::string, const MethodEntry*> by_id;
  for (const MethodEntry& m : methods) by_id[m.method_id] = &m;

  std::vector<std::pair<std::string, const ComparisonTask*>> grid_jobs(unique_grids.begin(), unique_grids.end());
  std::vector<std::string> grid_errors(grid_jobs.size());
  try {
    fs::create_directories(grids_dir);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < std::min(jobs, std::max<std::size_t>(grid_jobs.size(), 1)); ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < grid_jobs.size(); i = next.fetch_add(1)) {
          const ComparisonTask& t = *grid_jobs[i].second;
          try {
            const RgbaImage img = assemble_grid(t.reference_path, by_id.at(t.top_method())->samples.at(t.sample_id),
                                                by_id.at(t.bottom_method())->samples.at(t.sample_id), grid);
            save_png(img, grid_jobs[i].first);
          } catch (const std::exception& e) {
            grid_errors[i] = e.what();
          }
        }
      });
    }
  }
  std::map<std::string, std::string> failed_grids;
  for (std::size_t i = 0; i < grid_jobs.size(); ++i) {
    if (!grid_errors[i].empty()) failed_grids.emplace(grid_jobs[i].first, grid_errors[i]);
  }

  std::vector<ComparisonTask> ready;
  std::vector<TaskFailure> failures;
  for (const ComparisonTask& t : tasks) {
    if (const auto it = failed_grids.find(t.grid_path); it != failed_grids.end()) {
      failures.push_back({t.task_id, "grid", it->second});
    } else {
      ready.push_back(t);
    }
  }

  try {
    if (!args.tasks_out.empty()) {
      ensure_parent(args.tasks_out);
      save_tasks(args.tasks_out, ready);
    }
    if (judge_kind != "none") {
      std::unique_ptr<Judge> judge;
      if (judge_kind == "mock") {
        std::vector<std::string> order = split_list(mock_order);
        if (order.empty()) {
          for (const MethodEntry& m : methods) order.push_back(m.method_id);
        }
        judge = std::make_unique<MockJudge>(order);
      } else {
        vlm.prompt_templates = load_prompt_templates(prompt_dir);
        judge = std::make_unique<VlmJudge>(vlm);
      }
      JudgingOutcome outcome = run_judging(ready, *judge, jobs);
      failures.insert(failures.end(), outcome.failures.begin(), outcome.failures.end());
      std::sort(failures.begin(), failures.end(),
                [](const TaskFailure& a, const TaskFailure& b) { return a.task_id < b.task_id; });
      ensure_parent(args.out);
      save_records(args.out, outcome.records);
      ctx.err << "judged " << outcome.records.size() << " of " << tasks.size() << " tasks\n";
    } else {
      ctx.err << "prepared " << ready.size() << " tasks\n";
    }
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  write_failure_report(ctx, args.failures, failures);
  return failures.empty() ? kSuccess : kPartial;
}

// ---------------------------------------------------------------------------
// elo

struct EloArgs {
  std::vector<std::string> records;
  std::string out;
};

int cmd_elo(Context& ctx, const EloArgs& args) {
  EloConfig config;
  try {
    config.k_factor = ctx.settings.get_double("k_factor", 32.0);
    config.initial_rating = ctx.settings.get_double("initial_rating", 1000.0);
    config.shuffles = static_cast<std::size_t>(ctx.settings.get_uint("shuffles", 100));
    config.seed = ctx.settings.get_uint("seed", 0);
    config.jobs = static_cast<std::size_t>(std::max<unsigned long long>(1, ctx.settings.get_uint("jobs", 1)));
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  ctx.echo_settings();
  try {
    std::vector<ComparisonRecord> records;
    for (const std::string& path : args.records) {
      auto part = read_records(path);
      records.insert(records.end(), part.begin(), part.end());
    }
    if (records.empty()) throw std::runtime_error("no comparison records to rate");
    const std::string doc = rating_tables_to_json(run_tournaments(records, config), config);
    if (args.out.empty() || args.out == "-") {
      ctx.out << doc;
    } else {
      ensure_parent(args.out);
      std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
      out << doc;
      if (!out) throw std::runtime_error("cannot write " + args.out);
    }
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// serve

struct ServeArgs {
  std::string tasks;
  std::string records_out;
};

int cmd_serve(Context& ctx, const ServeArgs& args) {
  ServeOptions options;
  try {
    options.host = ctx.settings.get("host", "127.0.0.1");
    options.port = static_cast<int>(ctx.settings.get_int("port", 8080));
    options.ui_dir = ctx.settings.get("ui_dir", "");
    options.judge_id = ctx.settings.get("judge_id", "human");
    options.session_name = ctx.settings.get("session", "texcurve");
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
  ctx.echo_settings();
  options.records_out = args.records_out;

  try {
    const std::vector<ComparisonTask> tasks = read_tasks(args.tasks);
    std::vector<ComparisonRecord> judged;
    if (fs::exists(args.records_out)) judged = read_records(args.records_out);
    HumanQueue queue(tasks, judged);
    if (queue.finished()) {
      ctx.err << "all " << tasks.size() << " tasks already judged\n";
      return kSuccess;
    }
    ensure_parent(args.records_out);
    g_interrupted.store(false);
    options.interrupt = &g_interrupted;
    JudgeServer server(queue, options);
    if (!server.bind()) {
      ctx.err << "error: cannot listen on " << options.host << ":" << options.port << "\n";
      return kFatal;
    }
    const QueueProgress p = queue.progress();
    ctx.err << "serving " << p.pending() << " pending of " << p.total << " tasks on http://" << options.host << ":"
            << server.port() << "/\n";

    auto previous_int = std::signal(SIGINT, on_interrupt);
    auto previous_term = std::signal(SIGTERM, on_interrupt);
    const bool finished = server.run();
    std::signal(SIGINT, previous_int);
    std::signal(SIGTERM, previous_term);

    const QueueProgress done = queue.progress();
    ctx.err << "judged " << done.done << " of " << done.total << " tasks\n";
    return finished ? kSuccess : kPartial;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFatal;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, EnvLookup env) {
  CLI::App app{"Dataset curation and pairwise Elo evaluation for 3D texture generation", "texcurve"};
  app.require_subcommand(1);
  std::string config_file;
  bool verbose = false;
  app.add_option("--config", config_file, "Config file with key = value settings")->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", verbose, "Print effective settings");
  SettingFlags flags;

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score every object in a manifest");
  score_cmd->add_option("manifest", score.manifest, "Input manifest (JSON Lines)")->required();
  score_cmd->add_option("--out", score.out, "Scored manifest to write")->required();
  score_cmd->add_option("--failures", score.failures, "Write the failure report here as JSON Lines");
  flags.add(score_cmd, "--lambda", "lambda", "Weight of color entropy in the total score (default 35)");
  flags.add(score_cmd, "--mask-mode", "mask_mode", "auto | foreground | full (default auto)");
  flags.add(score_cmd, "--aggregation", "aggregation", "mean | max over views (default mean)");
  flags.add(score_cmd, "--entropy-base", "entropy_base", "Logarithm base for entropy (default 2)");
  flags.add(score_cmd, "-j,--jobs", "jobs", "Worker threads (default 1)");

  FilterArgs filter;
  auto* filter_cmd = app.add_subcommand("filter", "Keep the top-K scored objects");
  filter_cmd->add_option("manifest", filter.manifest, "Scored manifest")->required();
  filter_cmd->add_option("--out", filter.out, "Filtered manifest to write")->required();
  flags.add(filter_cmd, "-k,--top-k", "top_k", "Number of objects to keep (default 100000)");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Write render plans for a list of objects");
  plan_cmd->add_option("--objects", plan.objects, "Object ids, one per line (or a manifest)")->required();
  plan_cmd->add_option("--out", plan.out_dir, "Output directory")->required();
  flags.add(plan_cmd, "--seed", "seed", "Master seed (default 0)");
  flags.add(plan_cmd, "--refs", "refs", "Reference renders per object (default 15)");
  flags.add(plan_cmd, "--hdri-pool", "hdri_pool", "Number of HDRIs to draw from (default 100)");

  EvaluateArgs evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Build comparison grids and judge every method pair");
  eval_cmd->add_option("--methods", evaluate.methods, "Methods file (JSON)")->required();
  eval_cmd->add_option("--reference", evaluate.reference_dir, "Directory of <sample_id>.png references")->required();
  eval_cmd->add_option("--dimension", evaluate.dimensions, "Dimension(s) to judge (default: all three)");
  eval_cmd->add_option("--out", evaluate.out, "Comparison records to write (JSON Lines)");
  eval_cmd->add_option("--tasks-out", evaluate.tasks_out, "Also write the task list (for serve)");
  eval_cmd->add_option("--grids", evaluate.grids_dir, "Directory for grid images");
  eval_cmd->add_option("--failures", evaluate.failures, "Write the failure report here as JSON Lines");
  flags.add(eval_cmd, "--judge", "judge", "mock | vlm | none (default mock)");
  flags.add(eval_cmd, "--mock-order", "mock_order", "Comma-separated method ranking for the mock judge");
  flags.add(eval_cmd, "--seed", "seed", "Seed for display-order randomization (default 0)");
  flags.add(eval_cmd, "--cell-size", "cell_size", "Grid cell size in pixels (default 512)");
  flags.add(eval_cmd, "--label-strip", "label_strip", "Total label band height in pixels (default 64)");
  flags.add(eval_cmd, "-j,--jobs", "jobs", "Concurrent grid builds and judge calls (default 1)");
  flags.add(eval_cmd, "--vlm-endpoint", "vlm_endpoint", "Chat-completions URL");
  flags.add(eval_cmd, "--vlm-model", "vlm_model", "Model name sent to the endpoint");
  flags.add(eval_cmd, "--vlm-retries", "vlm_retries", "Retries per task (default 3)");
  flags.add(eval_cmd, "--vlm-timeout", "vlm_timeout", "Request timeout in seconds (default 120)");
  flags.add(eval_cmd, "--prompt-dir", "prompt_dir", "Directory with <dimension>.txt prompt templates");

  EloArgs elo;
  auto* elo_cmd = app.add_subcommand("elo", "Shuffle-averaged Elo ratings per dimension");
  elo_cmd->add_option("--records", elo.records, "Comparison records (JSON Lines); repeatable")->required();
  elo_cmd->add_option("--out", elo.out, "Rating table JSON to write (default stdout)");
  flags.add(elo_cmd, "--k-factor", "k_factor", "Elo K factor (default 32)");
  flags.add(elo_cmd, "--initial", "initial_rating", "Initial rating (default 1000)");
  flags.add(elo_cmd, "--shuffles", "shuffles", "Number of shuffled passes (default 100)");
  flags.add(elo_cmd, "--seed", "seed", "Shuffle seed (default 0)");
  flags.add(elo_cmd, "-j,--jobs", "jobs", "Worker threads (default 1)");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the human judging API");
  serve_cmd->add_option("--tasks", serve.tasks, "Task list written by evaluate --tasks-out")->required();
  serve_cmd->add_option("--records-out", serve.records_out, "Append verdicts here; resumes if present")->required();
  flags.add(serve_cmd, "--port", "port", "Port (default 8080)");
  flags.add(serve_cmd, "--host", "host", "Bind address (default 127.0.0.1)");
  flags.add(serve_cmd, "--ui-dir", "ui_dir", "Static UI assets to serve at /");
  flags.add(serve_cmd, "--judge-id", "judge_id", "judge_id stored in records (default human)");

  std::vector<std::string> argv_storage{"texcurve"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kFatal;
  }

  Context ctx{Settings(std::move(env)), out, err, verbose};
  try {
    if (!config_file.empty()) ctx.settings.load_file(config_file);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFatal;
  }
  flags.apply(ctx.settings);

  if (score_cmd->parsed()) return cmd_score(ctx, score);
  if (filter_cmd->parsed()) return cmd_filter(ctx, filter);
  if (plan_cmd->parsed()) return cmd_plan(ctx, plan);
  if (eval_cmd->parsed()) return cmd_evaluate(ctx, evaluate);
  if (elo_cmd->parsed()) return cmd_elo(ctx, elo);
  if (serve_cmd->parsed()) return cmd_serve(ctx, serve);
  return kFatal;
}

}  // namespace texcurve::cli
