#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "texcurve/image.hpp"
#include "texcurve/pairwise.hpp"
#include "texcurve/random.hpp"

namespace testsupport {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("texcurve-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline texcurve::RgbaImage random_image(texcurve::SeededRng& rng, int w, int h, bool random_alpha = false) {
  texcurve::RgbaImage img(w, h);
  auto px = img.bytes();
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = static_cast<std::uint8_t>(rng.below(256));
    if (i % 4 == 3 && !random_alpha) px[i] = 255;
  }
  return img;
}

/// Smooth, seed-dependent pattern; useful where random noise would make
/// every image look alike.
inline texcurve::RgbaImage pattern_image(int w, int h, int seed, std::uint8_t alpha = 255) {
  texcurve::RgbaImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.set(x, y,
              {static_cast<std::uint8_t>((x * (seed + 3) * 7) % 256), static_cast<std::uint8_t>((y * 11 + seed * 29) % 256),
               static_cast<std::uint8_t>(((x + y) * (seed % 5 + 1) * 5) % 256), alpha});
    }
  }
  return img;
}

/// Writes a synthetic evaluation corpus: every method renders every sample
/// with four views, plus one reference per sample. Returns the methods file.
inline fs::path write_method_corpus(const fs::path& root, const std::vector<std::string>& methods, int samples,
                                    int size = 16) {
  fs::create_directories(root / "renders");
  fs::create_directories(root / "reference");
  std::string json = "{\"methods\": [";
  for (std::size_t m = 0; m < methods.size(); ++m) {
    json += (m ? "," : "") + std::string("{\"method_id\": \"") + methods[m] + "\", \"samples\": {";
    for (int s = 0; s < samples; ++s) {
      json += (s ? "," : "") + std::string("\"s") + std::to_string(s) + "\": [";
      for (int v = 0; v < 4; ++v) {
        const std::string rel = "renders/" + methods[m] + "_s" + std::to_string(s) + "_v" + std::to_string(v) + ".png";
        texcurve::save_png(pattern_image(size, size, static_cast<int>(m * 100 + s * 4 + v)), root / rel);
        json += (v ? "," : "") + std::string("\"") + rel + "\"";
      }
      json += "]";
    }
    json += "}}";
  }
  json += "]}\n";
  for (int s = 0; s < samples; ++s) {
    texcurve::save_png(pattern_image(size + 4, size, 900 + s), root / "reference" / ("s" + std::to_string(s) + ".png"));
  }
  write_file(root / "methods.json", json);
  return root / "methods.json";
}

/// Records where `order` strictly ranks the methods, `per_pair` samples per
/// pair, for one dimension.
inline std::vector<texcurve::ComparisonRecord> ordered_records(const std::vector<std::string>& order, int samples,
                                                               texcurve::Dimension dim) {
  std::vector<texcurve::ComparisonRecord> out;
  texcurve::TaskId id = 1;
  for (int s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        texcurve::ComparisonRecord r;
        r.task_id = id++;
        r.sample_id = "s" + std::to_string(s);
        const bool flip = (s + i + j) % 2 == 1;
        r.method_a = flip ? order[j] : order[i];
        r.method_b = flip ? order[i] : order[j];
        r.c_ij = flip ? 0.0 : 1.0;
        r.dimension = dim;
        r.judge_id = "test";
        out.push_back(r);
      }
    }
  }
  return out;
}

}  // namespace testsupport
