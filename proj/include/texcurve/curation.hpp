#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "texcurve/quality.hpp"

namespace texcurve {

/// How per-view scores are combined into one object score. Both act on
/// c_color and c_texture independently; c_total is recomputed afterwards.
enum class ViewAggregation { mean, max };

std::string_view to_string(ViewAggregation aggregation);
ViewAggregation parse_aggregation(std::string_view text);

struct ViewRef {
  std::string label;
  std::string path;
  friend bool operator==(const ViewRef&, const ViewRef&) = default;
};

struct ObjectRecord {
  std::string object_id;
  std::vector<ViewRef> views;
  std::optional<QualityScore> score;
  bool failed = false;
  std::string error;  // set alongside `failed`

  friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

struct ManifestMeta {
  double lambda = kDefaultLambda;
  double entropy_base = kDefaultEntropyBase;
  MaskMode mask_mode = MaskMode::automatic;
  ViewAggregation aggregation = ViewAggregation::mean;
  std::string created;  // carried through untouched; empty when unknown
  bool sorted = false;

  friend bool operator==(const ManifestMeta&, const ManifestMeta&) = default;
};

struct CurationManifest {
  ManifestMeta meta;
  std::vector<ObjectRecord> records;

  friend bool operator==(const CurationManifest&, const CurationManifest&) = default;
};

/// Instrumentation for tests and progress reporting. Called from worker
/// threads; callbacks must be thread-safe.
struct CorpusHooks {
  std::function<void(const std::string& path)> on_image_loaded;
  std::function<void(const std::string& path)> on_image_released;
  std::function<void(const std::string& object_id)> on_record_done;
};

struct ScoringConfig {
  double lambda = kDefaultLambda;
  double entropy_base = kDefaultEntropyBase;
  MaskMode mask_mode = MaskMode::automatic;
  ViewAggregation aggregation = ViewAggregation::mean;
  std::size_t jobs = 1;
  /// Relative view paths are resolved against this directory.
  std::filesystem::path base_dir;
  CorpusHooks hooks;
};

struct RecordFailure {
  std::string object_id;
  std::string message;
  std::vector<std::string> paths;
};

struct CorpusResult {
  CurationManifest manifest;
  std::vector<RecordFailure> failures;
};

/// Scores every view (one decoded image alive at a time) and aggregates.
/// Throws ViewLoadError naming every view that failed to load.
QualityScore score_object(const ObjectRecord& record, const ScoringConfig& config);

/// Scores all records on a pool of `config.jobs` workers. Failing records are
/// kept, marked failed and reported; output records are ordered by object_id.
CorpusResult score_corpus(const CurationManifest& manifest, const ScoringConfig& config);

/// The k best scored records by c_total descending, ties by ascending
/// object_id. Failed records are skipped; throws UnscoredRecord if any other
/// record lacks a score.
CurationManifest select_top_k(const CurationManifest& manifest, std::size_t k);

/// Throws ManifestError on duplicate object ids or view labels.
void validate_manifest(const CurationManifest& manifest);

// JSON Lines I/O. The optional first line carries {"manifest_meta": {...}}.
CurationManifest parse_manifest(std::istream& in);
CurationManifest read_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const CurationManifest& manifest);
std::string manifest_to_string(const CurationManifest& manifest);
void save_manifest(const std::filesystem::path& path, const CurationManifest& manifest);

}  // namespace texcurve
