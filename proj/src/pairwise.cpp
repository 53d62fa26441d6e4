#include "texcurve/pairwise.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "texcurve/error.hpp"
#include "texcurve/random.hpp"

namespace texcurve {

using nlohmann::json;

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::reference_alignment: return "reference_alignment";
    case Dimension::geometry_consistency: return "geometry_consistency";
    case Dimension::local_quality: return "local_quality";
  }
  return "reference_alignment";
}

Dimension parse_dimension(std::string_view text) {
  for (Dimension d : all_dimensions()) {
    if (to_string(d) == text) return d;
  }
  throw std::invalid_argument("unknown dimension '" + std::string(text) +
                              "' (expected reference_alignment, geometry_consistency or local_quality)");
}

std::vector<Dimension> all_dimensions() {
  return {Dimension::reference_alignment, Dimension::geometry_consistency, Dimension::local_quality};
}

std::string_view to_string(Winner winner) {
  switch (winner) {
    case Winner::a: return "A";
    case Winner::b: return "B";
    case Winner::tie: return "tie";
  }
  return "tie";
}

Winner parse_winner(std::string_view text) {
  const std::string t = lower(text);
  if (t == "a") return Winner::a;
  if (t == "b") return Winner::b;
  if (t == "tie") return Winner::tie;
  throw std::invalid_argument("unknown winner '" + std::string(text) + "'");
}

DisplayChoice parse_display_choice(std::string_view text) {
  const std::string t = lower(text);
  if (t == "option1" || t == "a" || t == "1") return DisplayChoice::option1;
  if (t == "option2" || t == "b" || t == "2") return DisplayChoice::option2;
  if (t == "tie") return DisplayChoice::tie;
  throw std::invalid_argument("unknown choice '" + std::string(text) + "' (expected option1, option2 or tie)");
}

double to_score(Winner winner) noexcept {
  switch (winner) {
    case Winner::a: return 1.0;
    case Winner::b: return 0.0;
    case Winner::tie: return 0.5;
  }
  return 0.5;
}

Winner unswap(DisplayChoice choice, bool position_swapped) noexcept {
  switch (choice) {
    case DisplayChoice::option1: return position_swapped ? Winner::b : Winner::a;
    case DisplayChoice::option2: return position_swapped ? Winner::a : Winner::b;
    case DisplayChoice::tie: return Winner::tie;
  }
  return Winner::tie;
}

ComparisonRecord make_record(const ComparisonTask& task, const JudgeVerdict& verdict) {
  ComparisonRecord r;
  r.task_id = task.task_id;
  r.sample_id = task.sample_id;
  r.reference_path = task.reference_path;
  r.method_a = task.method_a;
  r.method_b = task.method_b;
  r.dimension = task.dimension;
  r.grid_path = task.grid_path;
  r.position_swapped = task.position_swapped;
  r.c_ij = to_score(verdict.winner);
  r.judge_id = verdict.judge_id;
  r.rationale = verdict.rationale;
  return r;
}

void validate_method(const MethodEntry& method) {
  for (const auto& [sample_id, views] : method.samples) {
    if (views.size() != kViewsPerSample) {
      throw MismatchedViewCount("method '" + method.method_id + "' sample '" + sample_id + "' has " +
                                std::to_string(views.size()) + " views, expected " +
                                std::to_string(kViewsPerSample));
    }
  }
}

std::vector<ComparisonTask> build_tasks(const std::vector<MethodEntry>& methods,
                                        const std::vector<SampleRef>& samples,
                                        const std::vector<Dimension>& dimensions, std::uint64_t seed) {
  if (methods.size() < 2) throw std::invalid_argument("pairwise evaluation needs at least two methods");
  std::set<std::string_view> ids;
  for (const MethodEntry& m : methods) {
    if (!ids.insert(m.method_id).second) {
      throw std::invalid_argument("duplicate method id '" + m.method_id + "'");
    }
    validate_method(m);
    for (const SampleRef& s : samples) {
      if (!m.samples.contains(s.sample_id)) throw MissingSample(s.sample_id, m.method_id);
    }
  }

  std::vector<ComparisonTask> tasks;
  tasks.reserve(methods.size() * (methods.size() - 1) / 2 * samples.size() * dimensions.size());
  TaskId next_id = 1;
  for (Dimension dimension : dimensions) {
    for (const SampleRef& sample : samples) {
      for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
          ComparisonTask task;
          task.task_id = next_id++;
          task.sample_id = sample.sample_id;
          task.reference_path = sample.reference_path;
          task.method_a = methods[i].method_id;
          task.method_b = methods[j].method_id;
          task.dimension = dimension;
          task.position_swapped = SeededRng(derive_seed(seed, task.task_id)).coin();
          tasks.push_back(std::move(task));
        }
      }
    }
  }
  return tasks;
}

std::string grid_file_name(const ComparisonTask& task) {
  std::string name = task.sample_id + "__" + task.top_method() + "__" + task.bottom_method();
  for (char& c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return name + ".png";
}

// ---------------------------------------------------------------------------
// JSON Lines

namespace {

json task_fields(const ComparisonTask& t) {
  return {{"task_id", t.task_id},
          {"sample_id", t.sample_id},
          {"reference_path", t.reference_path},
          {"method_a", t.method_a},
          {"method_b", t.method_b},
          {"dimension", std::string(to_string(t.dimension))},
          {"grid_path", t.grid_path},
          {"position_swapped", t.position_swapped}};
}

ComparisonTask task_from_json(const json& j) {
  ComparisonTask t;
  t.task_id = j.at("task_id").get<TaskId>();
  t.sample_id = j.at("sample_id").get<std::string>();
  t.reference_path = j.value("reference_path", std::string());
  t.method_a = j.at("method_a").get<std::string>();
  t.method_b = j.at("method_b").get<std::string>();
  t.dimension = parse_dimension(j.at("dimension").get<std::string>());
  t.grid_path = j.value("grid_path", std::string());
  t.position_swapped = j.value("position_swapped", false);
  if (t.method_a == t.method_b) throw std::invalid_argument("task compares a method with itself");
  return t;
}

json record_to_json(const ComparisonRecord& r) {
  json j{{"task_id", r.task_id},
         {"sample_id", r.sample_id},
         {"reference_path", r.reference_path},
         {"method_a", r.method_a},
         {"method_b", r.method_b},
         {"dimension", std::string(to_string(r.dimension))},
         {"grid_path", r.grid_path},
         {"position_swapped", r.position_swapped},
         {"c_ij", r.c_ij},
         {"judge_id", r.judge_id}};
  if (!r.rationale.empty()) j["rationale"] = r.rationale;
  return j;
}

ComparisonRecord record_from_json(const json& j) {
  const ComparisonTask t = task_from_json(j);
  ComparisonRecord r;
  r.task_id = t.task_id;
  r.sample_id = t.sample_id;
  r.reference_path = t.reference_path;
  r.method_a = t.method_a;
  r.method_b = t.method_b;
  r.dimension = t.dimension;
  r.grid_path = t.grid_path;
  r.position_swapped = t.position_swapped;
  r.c_ij = j.at("c_ij").get<double>();
  if (r.c_ij != 0.0 && r.c_ij != 0.5 && r.c_ij != 1.0) {
    throw InvalidScore("c_ij must be 0, 0.5 or 1, got " + std::to_string(r.c_ij));
  }
  r.judge_id = j.value("judge_id", std::string());
  r.rationale = j.value("rationale", std::string());
  return r;
}

template <typename T, typename FromJson>
std::vector<T> parse_lines(std::istream& in, FromJson from_json, const char* what) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const bool terminated = !in.eof();
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_json(json::parse(line)));
    } catch (const std::exception& e) {
      if (!terminated) break;  // torn final append
      throw std::invalid_argument(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

void write_record(std::ostream& out, const ComparisonRecord& record) {
  out << record_to_json(record).dump() << '\n';
}

std::vector<ComparisonRecord> parse_records(std::istream& in) {
  return parse_lines<ComparisonRecord>(in, record_from_json, "record");
}

std::vector<ComparisonRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open records " + path.string());
  return parse_records(in);
}

void save_records(const std::filesystem::path& path, const std::vector<ComparisonRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write records " + path.string());
  for (const ComparisonRecord& r : records) write_record(out, r);
  if (!out) throw Error("write failed for " + path.string());
}

void write_task(std::ostream& out, const ComparisonTask& task) { out << task_fields(task).dump() << '\n'; }

std::vector<ComparisonTask> parse_tasks(std::istream& in) {
  return parse_lines<ComparisonTask>(in, task_from_json, "task");
}

std::vector<ComparisonTask> read_tasks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tasks " + path.string());
  return parse_tasks(in);
}

void save_tasks(const std::filesystem::path& path, const std::vector<ComparisonTask>& tasks) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write tasks " + path.string());
  for (const ComparisonTask& t : tasks) write_task(out, t);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace texcurve
