#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "texcurve/image.hpp"

namespace texcurve {

struct GridOptions {
  int cell_width = 512;
  int cell_height = 512;
  /// Total height of the two label bands. The first band sits above the top
  /// row, the second between the rows.
  int label_strip = 64;
  std::array<std::string, 2> labels{"Option 1", "Option 2"};
  Rgba background{255, 255, 255, 255};
  Rgba ink{0, 0, 0, 255};
};

/// Comparison sheet: the reference fills a left column spanning the full
/// height (letterboxed), the four top views form row one and the four bottom
/// views row two, each cell resized to the cell size. Output is opaque,
/// (5 * cell_width) x (2 * cell_height + label_strip). Throws
/// MismatchedViewCount unless both rows have exactly four views.
RgbaImage assemble_grid(const RgbaImage& reference, std::span<const RgbaImage> top_views,
                        std::span<const RgbaImage> bottom_views, const GridOptions& options = {});

/// File-based variant; decoding failures surface as DecodeError.
RgbaImage assemble_grid(const std::string& reference_path, const std::vector<std::string>& top_paths,
                        const std::vector<std::string>& bottom_paths, const GridOptions& options = {});

/// Draws `text` with the built-in 5x7 font, `scale` pixels per font dot.
/// Characters outside printable ASCII render as '?'.
void draw_text(RgbaImage& img, int x, int y, std::string_view text, int scale, Rgba ink);

/// Width in pixels of `text` as drawn by draw_text.
int text_width(std::string_view text, int scale) noexcept;

}  // namespace texcurve
