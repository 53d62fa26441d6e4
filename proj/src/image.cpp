#include "texcurve/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "texcurve/error.hpp"

namespace texcurve {

namespace {

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

RgbaImage::RgbaImage(int width, int height, Rgba fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.resize(pixel_count() * 4);
  for (std::size_t i = 0; i < pixels_.size(); i += 4) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
    pixels_[i + 3] = fill.a;
  }
}

RgbaImage::RgbaImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != pixel_count() * 4) {
    throw std::invalid_argument("pixel buffer holds " + std::to_string(pixels_.size()) +
                                " bytes, expected " + std::to_string(pixel_count() * 4));
  }
}

GrayImage to_grayscale(const RgbaImage& img) {
  GrayImage out{img.width(), img.height(), {}};
  out.values.resize(img.pixel_count());
  const auto px = img.bytes();
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const unsigned r = px[i * 4], g = px[i * 4 + 1], b = px[i * 4 + 2];
    // Integer form of round(0.299 R + 0.587 G + 0.114 B); ties round up.
    out.values[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return out;
}

HsvImage to_hsv(const RgbaImage& img) {
  const std::size_t n = img.pixel_count();
  HsvImage out{img.width(), img.height(), std::vector<std::uint8_t>(n),
               std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n)};
  const auto px = img.bytes();
  for (std::size_t i = 0; i < n; ++i) {
    const int r = px[i * 4], g = px[i * 4 + 1], b = px[i * 4 + 2];
    const int hi = std::max({r, g, b});
    const int lo = std::min({r, g, b});
    const int delta = hi - lo;

    out.v[i] = static_cast<std::uint8_t>(hi);
    out.s[i] = hi == 0 ? 0 : static_cast<std::uint8_t>((2 * 255 * delta + hi) / (2 * hi));

    if (delta == 0) {
      out.h[i] = 0;
      continue;
    }
    // Hue in sixths of a turn, scaled by delta: numerator in [0, 6 * delta).
    int sixths;
    if (hi == r) {
      sixths = g - b;
    } else if (hi == g) {
      sixths = b - r + 2 * delta;
    } else {
      sixths = r - g + 4 * delta;
    }
    if (sixths < 0) sixths += 6 * delta;
    // round(sixths / (6 delta) * 255)
    out.h[i] = static_cast<std::uint8_t>((2 * 255 * sixths + 6 * delta) / (12 * delta));
  }
  return out;
}

RgbaImage hsv_to_rgb(const HsvImage& hsv) {
  RgbaImage out(hsv.width, hsv.height);
  auto px = out.bytes();
  for (std::size_t i = 0; i < hsv.h.size(); ++i) {
    const double v = hsv.v[i];
    const double chroma = v * (hsv.s[i] / 255.0);
    const double sector = hsv.h[i] * 6.0 / 255.0;
    const double x = chroma * (1.0 - std::abs(std::fmod(sector, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (std::min(static_cast<int>(sector), 5)) {
      case 0: r = chroma, g = x; break;
      case 1: r = x, g = chroma; break;
      case 2: g = chroma, b = x; break;
      case 3: g = x, b = chroma; break;
      case 4: r = x, b = chroma; break;
      default: r = chroma, b = x; break;
    }
    const double m = v - chroma;
    px[i * 4] = static_cast<std::uint8_t>(std::lround(r + m));
    px[i * 4 + 1] = static_cast<std::uint8_t>(std::lround(g + m));
    px[i * 4 + 2] = static_cast<std::uint8_t>(std::lround(b + m));
  }
  return out;
}

ChannelHistogram histogram(std::span<const std::uint8_t> channel,
                           std::span<const std::uint8_t> mask) {
  ChannelHistogram hist;
  if (mask.empty()) {
    for (std::uint8_t value : channel) ++hist.bins[value];
    hist.total = channel.size();
  } else {
    if (mask.size() != channel.size()) {
      throw std::invalid_argument("mask length " + std::to_string(mask.size()) +
                                  " does not match channel length " +
                                  std::to_string(channel.size()));
    }
    for (std::size_t i = 0; i < channel.size(); ++i) {
      if (mask[i]) {
        ++hist.bins[channel[i]];
        ++hist.total;
      }
    }
  }
  if (hist.total == 0) throw EmptySelection();
  return hist;
}

GradientField sobel(const GrayImage& gray) {
  check_dimensions(gray.width, gray.height);
  const int w = gray.width;
  const int h = gray.height;
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);

  // Horizontal pass: central difference and [1 2 1] smoothing along each row.
  std::vector<int> diff(n), smooth(n);
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const int left = gray.values[row + std::max(x - 1, 0)];
      const int mid = gray.values[row + x];
      const int right = gray.values[row + std::min(x + 1, w - 1)];
      diff[row + x] = right - left;
      smooth[row + x] = left + 2 * mid + right;
    }
  }

  // Vertical pass: [1 2 1] over the differences, central difference over the
  // smoothed rows. Clamping rows here is equivalent to replicate padding.
  GradientField field{w, h, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (int y = 0; y < h; ++y) {
    const std::size_t up = static_cast<std::size_t>(std::max(y - 1, 0)) * w;
    const std::size_t row = static_cast<std::size_t>(y) * w;
    const std::size_t down = static_cast<std::size_t>(std::min(y + 1, h - 1)) * w;
    for (int x = 0; x < w; ++x) {
      const int gx = diff[up + x] + 2 * diff[row + x] + diff[down + x];
      const int gy = smooth[down + x] - smooth[up + x];
      field.gx[row + x] = gx;
      field.gy[row + x] = gy;
      field.gmag[row + x] = std::sqrt(static_cast<double>(gx) * gx + static_cast<double>(gy) * gy);
    }
  }
  return field;
}

PixelMask alpha_mask(const RgbaImage& img) {
  PixelMask mask(img.pixel_count());
  const auto px = img.bytes();
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = px[i * 4 + 3] > 0 ? 1 : 0;
  return mask;
}

bool has_transparency(const RgbaImage& img) {
  const auto px = img.bytes();
  for (std::size_t i = 3; i < px.size(); i += 4) {
    if (px[i] != 255) return true;
  }
  return false;
}

RgbaImage resize_bilinear(const RgbaImage& img, int width, int height) {
  check_dimensions(width, height);
  if (width == img.width() && height == img.height()) return img;

  struct Tap {
    int lo, hi, frac;  // frac in 1/256 units toward hi
  };
  // Pixel-center alignment: src = (dst + 0.5) * src_len / dst_len - 0.5.
  const auto taps = [](int src_len, int dst_len) {
    std::vector<Tap> out(static_cast<std::size_t>(dst_len));
    for (int d = 0; d < dst_len; ++d) {
      std::int64_t pos = (static_cast<std::int64_t>(2 * d + 1) * src_len * 256) / (2 * dst_len) - 128;
      pos = std::clamp<std::int64_t>(pos, 0, static_cast<std::int64_t>(src_len - 1) * 256);
      const int lo = static_cast<int>(pos >> 8);
      out[static_cast<std::size_t>(d)] = {lo, std::min(lo + 1, src_len - 1), static_cast<int>(pos & 255)};
    }
    return out;
  };
  const auto xs = taps(img.width(), width);
  const auto ys = taps(img.height(), height);

  RgbaImage out(width, height);
  const auto src = img.bytes();
  auto dst = out.bytes();
  const std::size_t stride = static_cast<std::size_t>(img.width()) * 4;
  for (int y = 0; y < height; ++y) {
    const Tap ty = ys[static_cast<std::size_t>(y)];
    const std::uint8_t* row0 = &src[static_cast<std::size_t>(ty.lo) * stride];
    const std::uint8_t* row1 = &src[static_cast<std::size_t>(ty.hi) * stride];
    for (int x = 0; x < width; ++x) {
      const Tap tx = xs[static_cast<std::size_t>(x)];
      const int w00 = (256 - tx.frac) * (256 - ty.frac);
      const int w10 = tx.frac * (256 - ty.frac);
      const int w01 = (256 - tx.frac) * ty.frac;
      const int w11 = tx.frac * ty.frac;
      std::uint8_t* o = &dst[(static_cast<std::size_t>(y) * width + x) * 4];
      for (int c = 0; c < 4; ++c) {
        const int sum = row0[tx.lo * 4 + c] * w00 + row0[tx.hi * 4 + c] * w10 +
                        row1[tx.lo * 4 + c] * w01 + row1[tx.hi * 4 + c] * w11;
        o[c] = static_cast<std::uint8_t>((sum + 32768) >> 16);
      }
    }
  }
  return out;
}

}  // namespace texcurve
