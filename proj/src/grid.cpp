#include "texcurve/grid.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "texcurve/error.hpp"

namespace texcurve {

namespace {

// Classic 5x7 LCD font, ASCII 0x20..0x7E. Five column bytes per glyph, bit 0
// is the top row.
constexpr std::uint8_t kFont5x7[95][5] = {
    {0x00, 0x00, 0x00, 0x00, 0x00}, {0x00, 0x00, 0x5F, 0x00, 0x00}, {0x00, 0x07, 0x00, 0x07, 0x00},
    {0x14, 0x7F, 0x14, 0x7F, 0x14}, {0x24, 0x2A, 0x7F, 0x2A, 0x12}, {0x23, 0x13, 0x08, 0x64, 0x62},
    {0x36, 0x49, 0x55, 0x22, 0x50}, {0x00, 0x05, 0x03, 0x00, 0x00}, {0x00, 0x1C, 0x22, 0x41, 0x00},
    {0x00, 0x41, 0x22, 0x1C, 0x00}, {0x08, 0x2A, 0x1C, 0x2A, 0x08}, {0x08, 0x08, 0x3E, 0x08, 0x08},
    {0x00, 0x50, 0x30, 0x00, 0x00}, {0x08, 0x08, 0x08, 0x08, 0x08}, {0x00, 0x60, 0x60, 0x00, 0x00},
    {0x20, 0x10, 0x08, 0x04, 0x02}, {0x3E, 0x51, 0x49, 0x45, 0x3E}, {0x00, 0x42, 0x7F, 0x40, 0x00},
    {0x42, 0x61, 0x51, 0x49, 0x46}, {0x21, 0x41, 0x45, 0x4B, 0x31}, {0x18, 0x14, 0x12, 0x7F, 0x10},
    {0x27, 0x45, 0x45, 0x45, 0x39}, {0x3C, 0x4A, 0x49, 0x49, 0x30}, {0x01, 0x71, 0x09, 0x05, 0x03},
    {0x36, 0x49, 0x49, 0x49, 0x36}, {0x06, 0x49, 0x49, 0x29, 0x1E}, {0x00, 0x36, 0x36, 0x00, 0x00},
    {0x00, 0x56, 0x36, 0x00, 0x00}, {0x08, 0x14, 0x22, 0x41, 0x00}, {0x14, 0x14, 0x14, 0x14, 0x14},
    {0x00, 0x41, 0x22, 0x14, 0x08}, {0x02, 0x01, 0x51, 0x09, 0x06}, {0x32, 0x49, 0x79, 0x41, 0x3E},
    {0x7E, 0x11, 0x11, 0x11, 0x7E}, {0x7F, 0x49, 0x49, 0x49, 0x36}, {0x3E, 0x41, 0x41, 0x41, 0x22},
    {0x7F, 0x41, 0x41, 0x22, 0x1C}, {0x7F, 0x49, 0x49, 0x49, 0x41}, {0x7F, 0x09, 0x09, 0x09, 0x01},
    {0x3E, 0x41, 0x49, 0x49, 0x7A}, {0x7F, 0x08, 0x08, 0x08, 0x7F}, {0x00, 0x41, 0x7F, 0x41, 0x00},
    {0x20, 0x40, 0x41, 0x3F, 0x01}, {0x7F, 0x08, 0x14, 0x22, 0x41}, {0x7F, 0x40, 0x40, 0x40, 0x40},
    {0x7F, 0x02, 0x0C, 0x02, 0x7F}, {0x7F, 0x04, 0x08, 0x10, 0x7F}, {0x3E, 0x41, 0x41, 0x41, 0x3E},
    {0x7F, 0x09, 0x09, 0x09, 0x06}, {0x3E, 0x41, 0x51, 0x21, 0x5E}, {0x7F, 0x09, 0x19, 0x29, 0x46},
    {0x46, 0x49, 0x49, 0x49, 0x31}, {0x01, 0x01, 0x7F, 0x01, 0x01}, {0x3F, 0x40, 0x40, 0x40, 0x3F},
    {0x1F, 0x20, 0x40, 0x20, 0x1F}, {0x3F, 0x40, 0x38, 0x40, 0x3F}, {0x63, 0x14, 0x08, 0x14, 0x63},
    {0x07, 0x08, 0x70, 0x08, 0x07}, {0x61, 0x51, 0x49, 0x45, 0x43}, {0x00, 0x7F, 0x41, 0x41, 0x00},
    {0x02, 0x04, 0x08, 0x10, 0x20}, {0x00, 0x41, 0x41, 0x7F, 0x00}, {0x04, 0x02, 0x01, 0x02, 0x04},
    {0x40, 0x40, 0x40, 0x40, 0x40}, {0x00, 0x01, 0x02, 0x04, 0x00}, {0x20, 0x54, 0x54, 0x54, 0x78},
    {0x7F, 0x48, 0x44, 0x44, 0x38}, {0x38, 0x44, 0x44, 0x44, 0x20}, {0x38, 0x44, 0x44, 0x48, 0x7F},
    {0x38, 0x54, 0x54, 0x54, 0x18}, {0x08, 0x7E, 0x09, 0x01, 0x02}, {0x0C, 0x52, 0x52, 0x52, 0x3E},
    {0x7F, 0x08, 0x04, 0x04, 0x78}, {0x00, 0x44, 0x7D, 0x40, 0x00}, {0x20, 0x40, 0x44, 0x3D, 0x00},
    {0x7F, 0x10, 0x28, 0x44, 0x00}, {0x00, 0x41, 0x7F, 0x40, 0x00}, {0x7C, 0x04, 0x18, 0x04, 0x78},
    {0x7C, 0x08, 0x04, 0x04, 0x78}, {0x38, 0x44, 0x44, 0x44, 0x38}, {0x7C, 0x14, 0x14, 0x14, 0x08},
    {0x08, 0x14, 0x14, 0x18, 0x7C}, {0x7C, 0x08, 0x04, 0x04, 0x08}, {0x48, 0x54, 0x54, 0x54, 0x20},
    {0x04, 0x3F, 0x44, 0x40, 0x20}, {0x3C, 0x40, 0x40, 0x20, 0x7C}, {0x1C, 0x20, 0x40, 0x20, 0x1C},
    {0x3C, 0x40, 0x30, 0x40, 0x3C}, {0x44, 0x28, 0x10, 0x28, 0x44}, {0x0C, 0x50, 0x50, 0x50, 0x3C},
    {0x44, 0x64, 0x54, 0x4C, 0x44}, {0x00, 0x08, 0x36, 0x41, 0x00}, {0x00, 0x00, 0x7F, 0x00, 0x00},
    {0x00, 0x41, 0x36, 0x08, 0x00}, {0x08, 0x04, 0x08, 0x10, 0x08},
};

constexpr int kGlyphAdvance = 6;  // 5 columns + 1 spacing
constexpr int kGlyphHeight = 7;

void fill_rect(RgbaImage& img, int x0, int y0, int w, int h, Rgba c) {
  const int x1 = std::min(x0 + w, img.width());
  const int y1 = std::min(y0 + h, img.height());
  for (int y = std::max(y0, 0); y < y1; ++y) {
    for (int x = std::max(x0, 0); x < x1; ++x) img.set(x, y, c);
  }
}

// Alpha-composites over an opaque background.
RgbaImage flatten(const RgbaImage& img, Rgba bg) {
  RgbaImage out = img;
  auto px = out.bytes();
  for (std::size_t i = 0; i < px.size(); i += 4) {
    const unsigned a = px[i + 3];
    px[i] = static_cast<std::uint8_t>((px[i] * a + bg.r * (255 - a) + 127) / 255);
    px[i + 1] = static_cast<std::uint8_t>((px[i + 1] * a + bg.g * (255 - a) + 127) / 255);
    px[i + 2] = static_cast<std::uint8_t>((px[i + 2] * a + bg.b * (255 - a) + 127) / 255);
    px[i + 3] = 255;
  }
  return out;
}

void blit(RgbaImage& dst, const RgbaImage& src, int x0, int y0) {
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) dst.set(x0 + x, y0 + y, src.at(x, y));
  }
}

// Resizes to fit inside (w, h) keeping aspect ratio; centered.
void blit_letterboxed(RgbaImage& dst, const RgbaImage& src, int x0, int y0, int w, int h) {
  // Compare aspect ratios exactly: src.w / src.h vs w / h.
  const long long lhs = static_cast<long long>(src.width()) * h;
  const long long rhs = static_cast<long long>(w) * src.height();
  int fit_w = w, fit_h = h;
  if (lhs > rhs) {
    fit_h = std::max(1, static_cast<int>((static_cast<long long>(w) * src.height() + src.width() / 2) / src.width()));
  } else if (lhs < rhs) {
    fit_w = std::max(1, static_cast<int>((static_cast<long long>(h) * src.width() + src.height() / 2) / src.height()));
  }
  blit(dst, resize_bilinear(src, fit_w, fit_h), x0 + (w - fit_w) / 2, y0 + (h - fit_h) / 2);
}

void draw_label(RgbaImage& img, int x0, int y0, int width, int band, const std::string& text, Rgba ink) {
  if (band <= 0 || text.empty()) return;
  int scale = std::max(1, (band - 4) / (kGlyphHeight + 1));
  while (scale > 1 && text_width(text, scale) > width - 8) --scale;
  const int y = y0 + (band - kGlyphHeight * scale) / 2;
  draw_text(img, x0 + std::min(8, width / 16), y, text, scale, ink);
}

}  // namespace

int text_width(std::string_view text, int scale) noexcept {
  if (text.empty()) return 0;
  return (static_cast<int>(text.size()) * kGlyphAdvance - 1) * scale;
}

void draw_text(RgbaImage& img, int x, int y, std::string_view text, int scale, Rgba ink) {
  for (char ch : text) {
    int index = static_cast<unsigned char>(ch) - 0x20;
    if (index < 0 || index >= 95) index = '?' - 0x20;
    for (int col = 0; col < 5; ++col) {
      const std::uint8_t bits = kFont5x7[index][col];
      for (int row = 0; row < kGlyphHeight; ++row) {
        if (bits & (1u << row)) fill_rect(img, x + col * scale, y + row * scale, scale, scale, ink);
      }
    }
    x += kGlyphAdvance * scale;
  }
}

RgbaImage assemble_grid(const RgbaImage& reference, std::span<const RgbaImage> top_views,
                        std::span<const RgbaImage> bottom_views, const GridOptions& options) {
  if (top_views.size() != 4 || bottom_views.size() != 4) {
    throw MismatchedViewCount("grid rows need exactly 4 views each, got " + std::to_string(top_views.size()) +
                              " and " + std::to_string(bottom_views.size()));
  }
  if (options.cell_width <= 0 || options.cell_height <= 0 || options.label_strip < 0) {
    throw std::invalid_argument("grid cell size must be positive and label strip non-negative");
  }
  const int cw = options.cell_width;
  const int ch = options.cell_height;
  const int band1 = options.label_strip / 2;
  const int band2 = options.label_strip - band1;
  const int height = 2 * ch + options.label_strip;

  RgbaImage grid(5 * cw, height, options.background);
  blit_letterboxed(grid, flatten(reference, options.background), 0, 0, cw, height);

  const int row_y[2] = {band1, band1 + ch + band2};
  const std::span<const RgbaImage> rows[2] = {top_views, bottom_views};
  for (int r = 0; r < 2; ++r) {
    for (int i = 0; i < 4; ++i) {
      const RgbaImage cell = resize_bilinear(flatten(rows[r][static_cast<std::size_t>(i)], options.background), cw, ch);
      blit(grid, cell, (1 + i) * cw, row_y[r]);
    }
  }
  draw_label(grid, cw, 0, 4 * cw, band1, options.labels[0], options.ink);
  draw_label(grid, cw, band1 + ch, 4 * cw, band2, options.labels[1], options.ink);
  return grid;
}

RgbaImage assemble_grid(const std::string& reference_path, const std::vector<std::string>& top_paths,
                        const std::vector<std::string>& bottom_paths, const GridOptions& options) {
  if (top_paths.size() != 4 || bottom_paths.size() != 4) {
    throw MismatchedViewCount("grid rows need exactly 4 views each, got " + std::to_string(top_paths.size()) +
                              " and " + std::to_string(bottom_paths.size()));
  }
  const RgbaImage reference = load_image(reference_path);
  std::vector<RgbaImage> top, bottom;
  for (const auto& p : top_paths) top.push_back(load_image(p));
  for (const auto& p : bottom_paths) bottom.push_back(load_image(p));
  return assemble_grid(reference, top, bottom, options);
}

}  // namespace texcurve
