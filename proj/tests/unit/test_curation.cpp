#include <doctest.h>

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "../support/support.hpp"
#include "texcurve/curation.hpp"
#include "texcurve/error.hpp"
#include "texcurve/random.hpp"

using namespace texcurve;
using testsupport::TempDir;

namespace {

// Writes `objects` objects with two views each under dir; object i has
// noise amplitude growing with i so scores are distinct.
CurationManifest write_corpus(const TempDir& dir, int objects, int size = 12) {
  CurationManifest m;
  SeededRng rng(99);
  for (int i = 0; i < objects; ++i) {
    ObjectRecord rec;
    rec.object_id = "obj" + std::to_string(i);
    for (const char* label : {"front", "side"}) {
      RgbaImage img = testsupport::random_image(rng, size, size);
      for (auto& b : img.bytes()) b = std::uint8_t(b * (i + 1) / (objects + 1));
      for (std::size_t p = 3; p < img.bytes().size(); p += 4) img.bytes()[p] = 255;
      const std::string rel = "views/" + rec.object_id + "_" + label + ".png";
      std::filesystem::create_directories(dir / "views");
      save_png(img, dir / rel);
      rec.views.push_back({label, rel});
    }
    m.records.push_back(rec);
  }
  return m;
}

ObjectRecord scored(const std::string& id, double total) {
  ObjectRecord r;
  r.object_id = id;
  r.views = {{"front", id + ".png"}};
  r.score = QualityScore{0.0, total, total, 0.0};
  return r;
}

}  // namespace

TEST_SUITE("dataset_curation") {

TEST_CASE("score_object aggregates views by mean or max") {
  TempDir dir;
  SeededRng rng(1);
  const RgbaImage a = testsupport::random_image(rng, 10, 10);
  const RgbaImage b(10, 10, Rgba{40, 40, 40, 255});
  save_png(a, dir / "a.png");
  save_png(b, dir / "b.png");
  ObjectRecord rec{"x", {{"front", "a.png"}, {"side", "b.png"}}, std::nullopt, false, {}};
  ScoringConfig cfg;
  cfg.base_dir = dir.path();

  const QualityScore sa = score_image(a), sb = score_image(b);
  const QualityScore mean = score_object(rec, cfg);
  CHECK(mean.c_color == doctest::Approx((sa.c_color + sb.c_color) / 2));
  CHECK(mean.c_texture == doctest::Approx((sa.c_texture + sb.c_texture) / 2));
  CHECK(mean.c_total == 35.0 * mean.c_color + mean.c_texture);

  cfg.aggregation = ViewAggregation::max;
  const QualityScore mx = score_object(rec, cfg);
  CHECK(mx.c_color == std::max(sa.c_color, sb.c_color));
  CHECK(mx.c_texture == std::max(sa.c_texture, sb.c_texture));
  CHECK(mx.c_total == 35.0 * mx.c_color + mx.c_texture);
}

TEST_CASE("score_object names every view that failed to load") {
  TempDir dir;
  save_png(RgbaImage(4, 4), dir / "ok.png");
  testsupport::write_file(dir / "bad.png", "not an image");
  ObjectRecord rec{"x", {{"a", "ok.png"}, {"b", "missing.png"}, {"c", "bad.png"}}, std::nullopt, false, {}};
  ScoringConfig cfg;
  cfg.base_dir = dir.path();
  try {
    score_object(rec, cfg);
    FAIL("expected ViewLoadError");
  } catch (const ViewLoadError& e) {
    CHECK(e.paths() == std::vector<std::string>{"missing.png", "bad.png"});
  }
}

TEST_CASE("score_corpus is independent of input order and worker count") {
  TempDir dir;
  CurationManifest m = write_corpus(dir, 12);
  ScoringConfig cfg;
  cfg.base_dir = dir.path();
  const CorpusResult base = score_corpus(m, cfg);
  CHECK(base.failures.empty());

  SeededRng rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    CurationManifest shuffled = m;
    for (std::size_t i = shuffled.records.size(); i > 1; --i) {
      std::swap(shuffled.records[i - 1], shuffled.records[rng.below(i)]);
    }
    cfg.jobs = 1 + trial * 2;
    const CorpusResult again = score_corpus(shuffled, cfg);
    CHECK(manifest_to_string(again.manifest) == manifest_to_string(base.manifest));
  }
  std::vector<std::string> ids;
  for (const auto& r : base.manifest.records) ids.push_back(r.object_id);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
}

TEST_CASE("failed objects are kept, marked and reported") {
  TempDir dir;
  CurationManifest m = write_corpus(dir, 3);
  m.records.push_back({"broken", {{"front", "views/nope.png"}}, std::nullopt, false, {}});
  ScoringConfig cfg;
  cfg.base_dir = dir.path();
  const CorpusResult r = score_corpus(m, cfg);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].object_id == "broken");
  CHECK(r.failures[0].paths == std::vector<std::string>{"views/nope.png"});
  const auto it = std::find_if(r.manifest.records.begin(), r.manifest.records.end(),
                               [](const ObjectRecord& rec) { return rec.object_id == "broken"; });
  REQUIRE(it != r.manifest.records.end());
  CHECK(it->failed);
  CHECK_FALSE(it->score.has_value());
  CHECK_FALSE(it->error.empty());

  const CurationManifest top = select_top_k(r.manifest, 10);
  CHECK(top.records.size() == 3);
}

TEST_CASE("scoring holds at most one decoded image per worker") {
  TempDir dir;
  const CurationManifest m = write_corpus(dir, 24, 32);
  for (std::size_t jobs : {1u, 2u, 4u}) {
    std::mutex mu;
    int live = 0, peak = 0, loads = 0;
    ScoringConfig cfg;
    cfg.base_dir = dir.path();
    cfg.jobs = jobs;
    cfg.hooks.on_image_loaded = [&](const std::string&) {
      std::lock_guard lock(mu);
      peak = std::max(peak, ++live);
      ++loads;
    };
    cfg.hooks.on_image_released = [&](const std::string&) {
      std::lock_guard lock(mu);
      --live;
    };
    score_corpus(m, cfg);
    CHECK(live == 0);
    CHECK(loads == 48);
    CHECK(peak <= static_cast<int>(jobs));
  }
}

TEST_CASE("select_top_k keeps the best records with id tie-breaks") {
  CurationManifest m;
  m.records = {scored("d", 5), scored("a", 7), scored("c", 7), scored("b", 1), scored("e", 7)};
  const CurationManifest top = select_top_k(m, 3);
  REQUIRE(top.records.size() == 3);
  CHECK(top.records[0].object_id == "a");
  CHECK(top.records[1].object_id == "c");
  CHECK(top.records[2].object_id == "e");
  CHECK(top.meta.sorted);
  CHECK(select_top_k(m, 0).records.empty());
  CHECK(select_top_k(m, 50).records.size() == 5);
}

TEST_CASE("select_top_k output is a subset separated from the rest") {
  SeededRng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    CurationManifest m;
    const std::size_t n = 1 + rng.below(200);
    for (std::size_t i = 0; i < n; ++i) m.records.push_back(scored("o" + std::to_string(i), double(rng.below(20))));
    const std::size_t k = rng.below(n + 5);
    const CurationManifest top = select_top_k(m, k);
    CHECK(top.records.size() == std::min(k, n));
    std::set<std::string> kept;
    double min_kept = 1e300;
    for (const auto& r : top.records) {
      kept.insert(r.object_id);
      min_kept = std::min(min_kept, r.score->c_total);
    }
    CHECK(kept.size() == top.records.size());
    for (std::size_t i = 1; i < top.records.size(); ++i) {
      CHECK(top.records[i - 1].score->c_total >= top.records[i].score->c_total);
    }
    for (const auto& r : m.records) {
      if (!kept.count(r.object_id)) CHECK(r.score->c_total <= min_kept);
    }
  }
}

TEST_CASE("select_top_k refuses unscored records") {
  CurationManifest m;
  m.records = {scored("a", 1), ObjectRecord{"b", {{"front", "b.png"}}, std::nullopt, false, {}}};
  CHECK_THROWS_AS(select_top_k(m, 1), UnscoredRecord);
}

TEST_CASE("manifest validation") {
  CurationManifest m;
  m.records = {scored("a", 1), scored("a", 2)};
  CHECK_THROWS_AS(validate_manifest(m), ManifestError);
  m.records = {ObjectRecord{"a", {{"front", "x.png"}, {"front", "y.png"}}, std::nullopt, false, {}}};
  CHECK_THROWS_AS(validate_manifest(m), ManifestError);
  CHECK_THROWS_AS(score_corpus(m, ScoringConfig{}), ManifestError);
}

TEST_CASE("manifest JSON Lines round trip") {
  CurationManifest m;
  m.meta.lambda = 12.5;
  m.meta.mask_mode = MaskMode::full;
  m.meta.aggregation = ViewAggregation::max;
  m.meta.created = "2025-01-01T00:00:00Z";
  m.meta.sorted = true;
  m.records = {scored("a", 3.25), ObjectRecord{"b", {{"front", "b.png"}}, std::nullopt, true, "cannot open"},
               ObjectRecord{"c", {{"front", "c.png"}, {"back", "c2.png"}}, std::nullopt, false, {}}};
  m.records[0].score->lambda = 12.5;  // scores carry the manifest's lambda
  const std::string text = manifest_to_string(m);
  std::istringstream in(text);
  const CurationManifest back = parse_manifest(in);
  CHECK(back == m);
  CHECK(manifest_to_string(back) == text);
}

TEST_CASE("manifest without a header line gets default metadata") {
  std::istringstream in("{\"object_id\": \"x\", \"views\": [{\"label\": \"front\", \"path\": \"x.png\"}]}\n\n");
  const CurationManifest m = parse_manifest(in);
  REQUIRE(m.records.size() == 1);
  CHECK(m.meta == ManifestMeta{});
  CHECK_FALSE(m.records[0].score.has_value());

  std::istringstream bad("{\"object_id\": 5}\n");
  CHECK_THROWS_AS(parse_manifest(bad), ManifestError);
  CHECK_THROWS_AS(read_manifest("/nonexistent/manifest.jsonl"), ManifestError);
}

TEST_CASE("rescoring gives byte-identical manifests") {
  TempDir dir;
  const CurationManifest m = write_corpus(dir, 6);
  ScoringConfig cfg;
  cfg.base_dir = dir.path();
  save_manifest(dir / "one.jsonl", score_corpus(m, cfg).manifest);
  cfg.jobs = 3;
  save_manifest(dir / "two.jsonl", score_corpus(m, cfg).manifest);
  CHECK(testsupport::slurp(dir / "one.jsonl") == testsupport::slurp(dir / "two.jsonl"));
}

}  // TEST_SUITE
