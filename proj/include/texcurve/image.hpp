#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace texcurve {

/// Per-pixel selection; a nonzero entry selects the pixel. An empty mask
/// selects every pixel.
using PixelMask = std::vector<std::uint8_t>;

struct Rgba {
  std::uint8_t r = 0, g = 0, b = 0, a = 255;
  friend bool operator==(const Rgba&, const Rgba&) = default;
};

/// Row-major 8-bit RGBA image, 4 interleaved bytes per pixel.
class RgbaImage {
 public:
  RgbaImage() = default;
  RgbaImage(int width, int height, Rgba fill = {});
  RgbaImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return width_ == 0; }

  Rgba at(int x, int y) const noexcept {
    const std::uint8_t* p = &pixels_[offset(x, y)];
    return {p[0], p[1], p[2], p[3]};
  }
  void set(int x, int y, Rgba c) noexcept {
    std::uint8_t* p = &pixels_[offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
    p[3] = c.a;
  }

  std::span<const std::uint8_t> bytes() const noexcept { return pixels_; }
  std::span<std::uint8_t> bytes() noexcept { return pixels_; }

  friend bool operator==(const RgbaImage&, const RgbaImage&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * 4;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Row-major 8-bit luma image.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  std::uint8_t at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

/// Planar HSV image; every channel is quantized to 0..255 so all three share
/// one 256-bin layout. Hue maps [0, 360) degrees onto 0..255.
struct HsvImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> h;
  std::vector<std::uint8_t> s;
  std::vector<std::uint8_t> v;
};

struct ChannelHistogram {
  std::array<std::uint64_t, 256> bins{};
  std::uint64_t total = 0;
};

/// Sobel response of a grayscale image. gmag[p] == hypot(gx[p], gy[p]).
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> gmag;
};

/// Decodes a PNG or JPEG payload. JPEG images come back fully opaque.
/// Throws DecodeError on anything else or on a malformed stream.
RgbaImage decode_image(std::span<const std::uint8_t> bytes);

/// Reads and decodes an image file. Throws DecodeError (including for
/// unreadable files).
RgbaImage load_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RgbaImage& img);
void save_png(const RgbaImage& img, const std::filesystem::path& path);

/// BT.601 luma, rounded to nearest.
GrayImage to_grayscale(const RgbaImage& img);

HsvImage to_hsv(const RgbaImage& img);

/// Inverse of to_hsv, for diagnostics; output alpha is 255.
RgbaImage hsv_to_rgb(const HsvImage& hsv);

/// Counts `channel` values, restricted to pixels selected by `mask` when the
/// mask is non-empty. Throws EmptySelection when nothing is counted and
/// std::invalid_argument when mask and channel lengths differ.
ChannelHistogram histogram(std::span<const std::uint8_t> channel,
                           std::span<const std::uint8_t> mask = {});

/// 3x3 Sobel with replicate border padding.
GradientField sobel(const GrayImage& gray);

/// Selects pixels with alpha > 0.
PixelMask alpha_mask(const RgbaImage& img);

/// True when any pixel has alpha below 255.
bool has_transparency(const RgbaImage& img);

/// Bilinear resample to the requested size, computed in fixed point so output
/// is bit-identical across platforms.
RgbaImage resize_bilinear(const RgbaImage& img, int width, int height);

}  // namespace texcurve
