#pragma once

// Inputs for the stored grid golden images. Everything is generated in code
// so only the expected outputs live on disk.

#include <string>
#include <vector>

#include "support.hpp"
#include "texcurve/grid.hpp"

namespace testsupport {

struct GridFixture {
  std::string name;
  texcurve::RgbaImage reference;
  std::vector<texcurve::RgbaImage> top;
  std::vector<texcurve::RgbaImage> bottom;
  texcurve::GridOptions options;
};

inline std::vector<GridFixture> grid_fixtures() {
  std::vector<GridFixture> out;

  GridFixture opaque{"opaque", pattern_image(40, 30, 1), {}, {}, {}};
  for (int i = 0; i < 4; ++i) {
    opaque.top.push_back(pattern_image(20, 20, 10 + i));
    opaque.bottom.push_back(pattern_image(48, 48, 20 + i));
  }
  opaque.options.cell_width = opaque.options.cell_height = 32;
  opaque.options.label_strip = 20;
  out.push_back(std::move(opaque));

  // Partly transparent renders and a tall reference.
  GridFixture cutout{"cutout", pattern_image(18, 50, 2), {}, {}, {}};
  for (int i = 0; i < 4; ++i) {
    texcurve::RgbaImage v = pattern_image(24, 24, 30 + i);
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x) {
        texcurve::Rgba p = v.at(x, y);
        const int dx = x - 12, dy = y - 12;
        p.a = dx * dx + dy * dy > 100 ? 0 : (x < 12 ? 255 : 128);
        v.set(x, y, p);
      }
    cutout.top.push_back(v);
    cutout.bottom.push_back(pattern_image(16, 24, 40 + i, 200));
  }
  cutout.options.cell_width = 32;
  cutout.options.cell_height = 24;
  cutout.options.label_strip = 24;
  out.push_back(std::move(cutout));

  GridFixture styled{"styled", pattern_image(64, 64, 3), {}, {}, {}};
  for (int i = 0; i < 4; ++i) {
    styled.top.push_back(texcurve::RgbaImage(8, 8, texcurve::Rgba{std::uint8_t(60 * i), 90, 180, 255}));
    styled.bottom.push_back(pattern_image(30, 10, 50 + i));
  }
  styled.options.cell_width = 40;
  styled.options.cell_height = 40;
  styled.options.label_strip = 36;
  styled.options.labels = {"Left: A", "Right: B"};
  styled.options.background = {32, 32, 32, 255};
  styled.options.ink = {250, 220, 0, 255};
  out.push_back(std::move(styled));

  return out;
}

inline texcurve::RgbaImage render_fixture(const GridFixture& f) {
  return texcurve::assemble_grid(f.reference, f.top, f.bottom, f.options);
}

}  // namespace testsupport
