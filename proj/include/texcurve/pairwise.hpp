#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace texcurve {

enum class Dimension { reference_alignment, geometry_consistency, local_quality };

std::string_view to_string(Dimension dimension);
Dimension parse_dimension(std::string_view text);
std::vector<Dimension> all_dimensions();

/// Verdict expressed against the task's canonical (method_a, method_b) pair.
enum class Winner { a, b, tie };

/// Verdict expressed against what the judge saw: Option 1 is the top row.
enum class DisplayChoice { option1, option2, tie };

std::string_view to_string(Winner winner);
Winner parse_winner(std::string_view text);

/// Accepts "option1"/"A"/"1", "option2"/"B"/"2" and "tie" (case-insensitive).
DisplayChoice parse_display_choice(std::string_view text);

/// A -> 1, B -> 0, tie -> 0.5.
double to_score(Winner winner) noexcept;

/// Maps a displayed choice back to the canonical pair.
Winner unswap(DisplayChoice choice, bool position_swapped) noexcept;

inline constexpr std::size_t kViewsPerSample = 4;

struct MethodEntry {
  std::string method_id;
  /// sample_id -> exactly four rendered view paths.
  std::map<std::string, std::vector<std::string>> samples;
};

struct SampleRef {
  std::string sample_id;
  std::string reference_path;
};

using TaskId = std::uint64_t;

struct ComparisonTask {
  TaskId task_id = 0;
  std::string sample_id;
  std::string reference_path;
  std::string method_a;
  std::string method_b;
  Dimension dimension = Dimension::reference_alignment;
  std::string grid_path;
  /// When set, method_b is shown as Option 1 (top row).
  bool position_swapped = false;

  const std::string& top_method() const noexcept { return position_swapped ? method_b : method_a; }
  const std::string& bottom_method() const noexcept { return position_swapped ? method_a : method_b; }

  friend bool operator==(const ComparisonTask&, const ComparisonTask&) = default;
};

struct JudgeVerdict {
  Winner winner = Winner::tie;
  std::string rationale;
  std::string judge_id;
  double latency_ms = 0.0;
};

struct ComparisonRecord {
  TaskId task_id = 0;
  std::string sample_id;
  std::string reference_path;
  std::string method_a;
  std::string method_b;
  Dimension dimension = Dimension::reference_alignment;
  std::string grid_path;
  bool position_swapped = false;
  double c_ij = 0.5;
  std::string judge_id;
  std::string rationale;

  friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

ComparisonRecord make_record(const ComparisonTask& task, const JudgeVerdict& verdict);

/// Throws MismatchedViewCount unless every sample has exactly four views.
void validate_method(const MethodEntry& method);

/// One task per unordered method pair x sample x dimension, ids 1..N in
/// (dimension, sample, pair) order. The displayed order of each pair is drawn
/// from `seed`. Throws MissingSample when a method lacks a sample.
std::vector<ComparisonTask> build_tasks(const std::vector<MethodEntry>& methods,
                                        const std::vector<SampleRef>& samples,
                                        const std::vector<Dimension>& dimensions, std::uint64_t seed);

/// File name for the grid a task displays; tasks showing the same sample and
/// row order share it.
std::string grid_file_name(const ComparisonTask& task);

// JSON Lines I/O. Parsers skip a trailing line without a newline that fails
// to parse, which is what an interrupted append leaves behind.
void write_record(std::ostream& out, const ComparisonRecord& record);
std::vector<ComparisonRecord> parse_records(std::istream& in);
std::vector<ComparisonRecord> read_records(const std::filesystem::path& path);
void save_records(const std::filesystem::path& path, const std::vector<ComparisonRecord>& records);

void write_task(std::ostream& out, const ComparisonTask& task);
std::vector<ComparisonTask> parse_tasks(std::istream& in);
std::vector<ComparisonTask> read_tasks(const std::filesystem::path& path);
void save_tasks(const std::filesystem::path& path, const std::vector<ComparisonTask>& tasks);

}  // namespace texcurve
