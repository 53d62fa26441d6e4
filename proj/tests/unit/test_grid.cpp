#include <doctest.h>

#include <cstdlib>

#include "../support/grid_fixtures.hpp"
#include "../support/support.hpp"
#include "texcurve/error.hpp"
#include "texcurve/grid.hpp"

using namespace texcurve;

namespace {

std::vector<RgbaImage> solid_views(Rgba c, int n = 4) { return std::vector<RgbaImage>(n, RgbaImage(6, 6, c)); }

bool region_is(const RgbaImage& img, int x0, int y0, int w, int h, Rgba c) {
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x)
      if (!(img.at(x, y) == c)) return false;
  return true;
}

bool region_has(const RgbaImage& img, int x0, int y0, int w, int h, Rgba c) {
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x)
      if (img.at(x, y) == c) return true;
  return false;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("grid dimensions follow the cell size and label strip") {
  for (auto [cw, ch, strip] : {std::tuple{512, 512, 64}, std::tuple{32, 20, 0}, std::tuple{17, 9, 13}}) {
    GridOptions o;
    o.cell_width = cw;
    o.cell_height = ch;
    o.label_strip = strip;
    const RgbaImage g = assemble_grid(RgbaImage(5, 5), solid_views({1, 2, 3, 255}), solid_views({4, 5, 6, 255}), o);
    CHECK(g.width() == 5 * cw);
    CHECK(g.height() == 2 * ch + strip);
  }
}

TEST_CASE("rows hold the top and bottom methods, labels sit in the bands") {
  GridOptions o;
  o.cell_width = o.cell_height = 20;
  o.label_strip = 24;
  const Rgba red{255, 0, 0, 255}, blue{0, 0, 255, 255};
  const RgbaImage g = assemble_grid(RgbaImage(20, 40, Rgba{0, 255, 0, 255}), solid_views(red), solid_views(blue), o);
  REQUIRE(g.width() == 100);
  REQUIRE(g.height() == 64);
  CHECK(region_is(g, 20, 12, 80, 20, red));   // row one below the first band
  CHECK(region_is(g, 20, 44, 80, 20, blue));  // row two below the second band
  CHECK(region_has(g, 20, 0, 80, 12, o.ink));
  CHECK(region_has(g, 20, 32, 80, 12, o.ink));
  // The 20x40 reference keeps its aspect ratio in the 20x64 column.
  CHECK(region_is(g, 0, 0, 20, 12, o.background));
  CHECK(region_is(g, 0, 12, 20, 40, Rgba{0, 255, 0, 255}));
  CHECK(region_is(g, 0, 52, 20, 12, o.background));
}

TEST_CASE("reference is letterboxed inside the left column") {
  GridOptions o;
  o.cell_width = o.cell_height = 20;
  o.label_strip = 0;
  const Rgba green{0, 255, 0, 255};
  const RgbaImage g = assemble_grid(RgbaImage(20, 10, green), solid_views({1, 1, 1, 255}), solid_views({2, 2, 2, 255}), o);
  // 20x10 in a 20x40 column: centered 20x10 band, background above and below.
  CHECK(region_is(g, 0, 0, 20, 15, o.background));
  CHECK(region_is(g, 0, 15, 20, 10, green));
  CHECK(region_is(g, 0, 25, 20, 15, o.background));
}

TEST_CASE("transparent inputs are flattened onto the background") {
  GridOptions o;
  o.cell_width = o.cell_height = 8;
  o.label_strip = 0;
  o.background = {100, 100, 100, 255};
  const RgbaImage g =
      assemble_grid(RgbaImage(8, 16, Rgba{0, 0, 0, 0}), solid_views({200, 0, 0, 0}), solid_views({0, 0, 0, 128}), o);
  CHECK(region_is(g, 8, 0, 32, 8, o.background));
  const Rgba half = g.at(10, 10);
  CHECK(half.a == 255);
  CHECK(half.r == 50);
}

TEST_CASE("rows must have exactly four views") {
  CHECK_THROWS_AS(assemble_grid(RgbaImage(4, 4), solid_views({}, 3), solid_views({}), GridOptions{}), MismatchedViewCount);
  CHECK_THROWS_AS(assemble_grid(RgbaImage(4, 4), solid_views({}), solid_views({}, 5), GridOptions{}), MismatchedViewCount);
  GridOptions bad;
  bad.cell_width = 0;
  CHECK_THROWS_AS(assemble_grid(RgbaImage(4, 4), solid_views({}), solid_views({}), bad), std::invalid_argument);
}

TEST_CASE("file-based assembly surfaces decode errors") {
  testsupport::TempDir dir;
  save_png(RgbaImage(4, 4), dir / "ok.png");
  testsupport::write_file(dir / "bad.png", "garbage");
  const std::string ok = (dir / "ok.png").string(), bad = (dir / "bad.png").string();
  GridOptions o;
  o.cell_width = o.cell_height = 8;
  CHECK_NOTHROW(assemble_grid(ok, {ok, ok, ok, ok}, {ok, ok, ok, ok}, o));
  CHECK_THROWS_AS(assemble_grid(ok, {ok, ok, ok, bad}, {ok, ok, ok, ok}, o), DecodeError);
  CHECK_THROWS_AS(assemble_grid(ok, {ok, ok, ok}, {ok, ok, ok, ok}, o), MismatchedViewCount);
}

TEST_CASE("text rendering") {
  CHECK(text_width("", 2) == 0);
  CHECK(text_width("A", 1) == 5);
  CHECK(text_width("AB", 1) == 11);
  CHECK(text_width("AB", 3) == 33);
  RgbaImage img(20, 10, Rgba{255, 255, 255, 255});
  draw_text(img, 1, 1, "I", 1, Rgba{0, 0, 0, 255});
  // 'I' is a vertical bar in the middle column with serifs.
  CHECK(img.at(3, 4) == Rgba{0, 0, 0, 255});
  CHECK(img.at(1, 4) == Rgba{255, 255, 255, 255});
  // Drawing off the edge clips instead of crashing.
  draw_text(img, 15, 6, "WWW", 2, Rgba{0, 0, 0, 255});
}

TEST_CASE("grid output matches stored golden images") {
  const bool update = std::getenv("TEXCURVE_UPDATE_GOLDEN") != nullptr;
  for (const auto& f : testsupport::grid_fixtures()) {
    CAPTURE(f.name);
    const RgbaImage got = testsupport::render_fixture(f);
    const auto path = std::filesystem::path(TEXCURVE_GOLDEN_DIR) / (f.name + ".png");
    if (update) save_png(got, path);
    REQUIRE(std::filesystem::exists(path));
    CHECK(load_image(path) == got);
  }
}

}  // TEST_SUITE
