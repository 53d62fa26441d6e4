#include "texcurve/curation.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "parallel.hpp"
#include "texcurve/error.hpp"

namespace texcurve {

using nlohmann::json;

ViewLoadError::ViewLoadError(std::vector<std::string> paths, const std::string& detail)
    : Error([&] {
        std::string msg = "failed to load view(s):";
        for (const auto& p : paths) msg += " " + p;
        if (!detail.empty()) msg += " (" + detail + ")";
        return msg;
      }()),
      paths_(std::move(paths)) {}

std::string_view to_string(ViewAggregation aggregation) {
  return aggregation == ViewAggregation::max ? "max" : "mean";
}

ViewAggregation parse_aggregation(std::string_view text) {
  if (text == "mean") return ViewAggregation::mean;
  if (text == "max") return ViewAggregation::max;
  throw std::invalid_argument("unknown view aggregation '" + std::string(text) +
                              "' (expected mean or max)");
}

QualityScore score_object(const ObjectRecord& record, const ScoringConfig& config) {
  if (record.views.empty()) throw ViewLoadError({}, "object '" + record.object_id + "' has no views");

  std::vector<std::string> failed_paths;
  std::string first_error;
  double color_acc = 0.0;
  double texture_acc = 0.0;
  std::size_t scored = 0;

  for (const ViewRef& view : record.views) {
    std::filesystem::path path = view.path;
    if (path.is_relative() && !config.base_dir.empty()) path = config.base_dir / path;

    std::optional<RgbaImage> img;
    try {
      img = load_image(path);
    } catch (const DecodeError& e) {
      failed_paths.push_back(view.path);
      if (first_error.empty()) first_error = e.what();
      continue;
    }
    if (config.hooks.on_image_loaded) config.hooks.on_image_loaded(view.path);

    QualityScore view_score;
    try {
      view_score = score_image(*img, config.mask_mode, config.lambda, config.entropy_base);
    } catch (...) {
      img.reset();
      if (config.hooks.on_image_released) config.hooks.on_image_released(view.path);
      throw;
    }
    img.reset();
    if (config.hooks.on_image_released) config.hooks.on_image_released(view.path);

    if (config.aggregation == ViewAggregation::mean) {
      color_acc += view_score.c_color;
      texture_acc += view_score.c_texture;
    } else {
      color_acc = scored == 0 ? view_score.c_color : std::max(color_acc, view_score.c_color);
      texture_acc = scored == 0 ? view_score.c_texture : std::max(texture_acc, view_score.c_texture);
    }
    ++scored;
  }

  if (!failed_paths.empty()) throw ViewLoadError(std::move(failed_paths), first_error);

  if (config.aggregation == ViewAggregation::mean) {
    color_acc /= static_cast<double>(scored);
    texture_acc /= static_cast<double>(scored);
  }
  return QualityScore::make(color_acc, texture_acc, config.lambda);
}

void validate_manifest(const CurationManifest& manifest) {
  std::set<std::string_view> ids;
  for (const ObjectRecord& rec : manifest.records) {
    if (rec.object_id.empty()) throw ManifestError("record with empty object_id");
    if (!ids.insert(rec.object_id).second) {
      throw ManifestError("duplicate object_id '" + rec.object_id + "'");
    }
    std::set<std::string_view> labels;
    for (const ViewRef& v : rec.views) {
      if (!labels.insert(v.label).second) {
        throw ManifestError("object '" + rec.object_id + "' repeats view label '" + v.label + "'");
      }
    }
  }
}

CorpusResult score_corpus(const CurationManifest& manifest, const ScoringConfig& config) {
  validate_manifest(manifest);

  std::vector<const ObjectRecord*> order;
  order.reserve(manifest.records.size());
  for (const ObjectRecord& rec : manifest.records) order.push_back(&rec);
  std::sort(order.begin(), order.end(),
            [](const ObjectRecord* a, const ObjectRecord* b) { return a->object_id < b->object_id; });

  using Outcome = std::variant<QualityScore, RecordFailure>;
  std::vector<Outcome> outcomes(order.size());
  detail::parallel_for(order.size(), config.jobs, [&](std::size_t i) {
    const ObjectRecord& rec = *order[i];
    try {
      outcomes[i] = score_object(rec, config);
    } catch (const ViewLoadError& e) {
      outcomes[i] = RecordFailure{rec.object_id, e.what(), e.paths()};
    } catch (const std::exception& e) {
      outcomes[i] = RecordFailure{rec.object_id, e.what(), {}};
    }
    if (config.hooks.on_record_done) config.hooks.on_record_done(rec.object_id);
  });

  CorpusResult result;
  result.manifest.meta = manifest.meta;
  result.manifest.meta.lambda = config.lambda;
  result.manifest.meta.entropy_base = config.entropy_base;
  result.manifest.meta.mask_mode = config.mask_mode;
  result.manifest.meta.aggregation = config.aggregation;
  result.manifest.meta.sorted = false;
  result.manifest.records.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    ObjectRecord rec = *order[i];
    if (auto* score = std::get_if<QualityScore>(&outcomes[i])) {
      rec.score = *score;
      rec.failed = false;
      rec.error.clear();
    } else {
      auto& failure = std::get<RecordFailure>(outcomes[i]);
      rec.score.reset();
      rec.failed = true;
      rec.error = failure.message;
      result.failures.push_back(std::move(failure));
    }
    result.manifest.records.push_back(std::move(rec));
  }
  return result;
}

CurationManifest select_top_k(const CurationManifest& manifest, std::size_t k) {
  std::vector<const ObjectRecord*> ranked;
  ranked.reserve(manifest.records.size());
  for (const ObjectRecord& rec : manifest.records) {
    if (rec.failed) continue;
    if (!rec.score) throw UnscoredRecord(rec.object_id);
    ranked.push_back(&rec);
  }
  const auto better = [](const ObjectRecord* a, const ObjectRecord* b) {
    if (a->score->c_total != b->score->c_total) return a->score->c_total > b->score->c_total;
    return a->object_id < b->object_id;
  };
  k = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), better);

  CurationManifest out;
  out.meta = manifest.meta;
  out.meta.sorted = true;
  out.records.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.records.push_back(*ranked[i]);
  return out;
}

// ---------------------------------------------------------------------------
// JSON Lines

namespace {

json meta_to_json(const ManifestMeta& meta) {
  return json{{"schema", "curation/1"},
              {"lambda", meta.lambda},
              {"entropy_base", meta.entropy_base},
              {"mask_mode", std::string(to_string(meta.mask_mode))},
              {"aggregation", std::string(to_string(meta.aggregation))},
              {"created", meta.created.empty() ? json(nullptr) : json(meta.created)},
              {"sorted", meta.sorted}};
}

ManifestMeta meta_from_json(const json& j) {
  ManifestMeta meta;
  meta.lambda = j.value("lambda", kDefaultLambda);
  meta.entropy_base = j.value("entropy_base", kDefaultEntropyBase);
  if (j.contains("mask_mode")) meta.mask_mode = parse_mask_mode(j.at("mask_mode").get<std::string>());
  if (j.contains("aggregation")) {
    meta.aggregation = parse_aggregation(j.at("aggregation").get<std::string>());
  }
  if (j.contains("created") && j.at("created").is_string()) meta.created = j.at("created").get<std::string>();
  meta.sorted = j.value("sorted", false);
  return meta;
}

json record_to_json(const ObjectRecord& rec) {
  json views = json::array();
  for (const ViewRef& v : rec.views) views.push_back({{"label", v.label}, {"path", v.path}});
  json j{{"object_id", rec.object_id}, {"views", std::move(views)}};
  if (rec.score) {
    j["score"] = {{"c_color", rec.score->c_color},
                  {"c_texture", rec.score->c_texture},
                  {"c_total", rec.score->c_total}};
  } else {
    j["score"] = nullptr;
  }
  if (rec.failed) {
    j["failed"] = true;
    j["error"] = rec.error;
  }
  return j;
}

ObjectRecord record_from_json(const json& j, double lambda) {
  ObjectRecord rec;
  rec.object_id = j.at("object_id").get<std::string>();
  for (const json& v : j.at("views")) {
    rec.views.push_back({v.at("label").get<std::string>(), v.at("path").get<std::string>()});
  }
  if (j.contains("score") && !j.at("score").is_null()) {
    const json& s = j.at("score");
    rec.score = QualityScore{s.at("c_color").get<double>(), s.at("c_texture").get<double>(),
                             s.at("c_total").get<double>(), lambda};
  }
  rec.failed = j.value("failed", false);
  if (j.contains("error") && j.at("error").is_string()) rec.error = j.at("error").get<std::string>();
  return rec;
}

}  // namespace

CurationManifest parse_manifest(std::istream& in) {
  CurationManifest manifest;
  std::vector<json> lines;
  std::string line;
  std::size_t line_no = 0;
  bool saw_meta = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ManifestError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.contains("manifest_meta")) {
      if (saw_meta || !lines.empty()) {
        throw ManifestError("line " + std::to_string(line_no) + ": manifest_meta must be the first line");
      }
      try {
        manifest.meta = meta_from_json(j.at("manifest_meta"));
      } catch (const std::exception& e) {
        throw ManifestError("manifest_meta: " + std::string(e.what()));
      }
      saw_meta = true;
      continue;
    }
    lines.push_back(std::move(j));
  }
  line_no = saw_meta ? 1 : 0;
  for (const json& j : lines) {
    ++line_no;
    try {
      manifest.records.push_back(record_from_json(j, manifest.meta.lambda));
    } catch (const json::exception& e) {
      throw ManifestError("record " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate_manifest(manifest);
  return manifest;
}

CurationManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest " + path.string());
  return parse_manifest(in);
}

void write_manifest(std::ostream& out, const CurationManifest& manifest) {
  out << json{{"manifest_meta", meta_to_json(manifest.meta)}}.dump() << '\n';
  for (const ObjectRecord& rec : manifest.records) out << record_to_json(rec).dump() << '\n';
}

std::string manifest_to_string(const CurationManifest& manifest) {
  std::ostringstream out;
  write_manifest(out, manifest);
  return out.str();
}

void save_manifest(const std::filesystem::path& path, const CurationManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ManifestError("cannot write manifest " + path.string());
  write_manifest(out, manifest);
  if (!out) throw ManifestError("write failed for " + path.string());
}

}  // namespace texcurve
