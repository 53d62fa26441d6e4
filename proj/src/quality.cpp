#include "texcurve/quality.hpp"

#include <cmath>
#include <stdexcept>

#include "texcurve/error.hpp"

namespace texcurve {

QualityScore QualityScore::make(double c_color, double c_texture, double lambda) {
  return {c_color, c_texture, total_score(c_color, c_texture, lambda), lambda};
}

std::string_view to_string(MaskMode mode) {
  switch (mode) {
    case MaskMode::automatic: return "auto";
    case MaskMode::foreground: return "foreground";
    case MaskMode::full: return "full";
  }
  return "auto";
}

MaskMode parse_mask_mode(std::string_view text) {
  if (text == "auto") return MaskMode::automatic;
  if (text == "foreground") return MaskMode::foreground;
  if (text == "full") return MaskMode::full;
  throw std::invalid_argument("unknown mask mode '" + std::string(text) +
                              "' (expected auto, foreground or full)");
}

PixelMask select_pixels(const RgbaImage& img, MaskMode mode) {
  switch (mode) {
    case MaskMode::full: return {};
    case MaskMode::foreground: return alpha_mask(img);
    case MaskMode::automatic: return has_transparency(img) ? alpha_mask(img) : PixelMask{};
  }
  return {};
}

double channel_entropy(const ChannelHistogram& hist, double base) {
  if (hist.total == 0) throw EmptyHistogram();
  if (!(base > 1.0)) throw std::invalid_argument("entropy base must be greater than 1");
  const double total = static_cast<double>(hist.total);
  double entropy = 0.0;
  for (std::uint64_t count : hist.bins) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    entropy -= p * std::log2(p);
  }
  // -0.0 for a single occupied bin.
  entropy = entropy == 0.0 ? 0.0 : entropy;
  return base == 2.0 ? entropy : entropy / std::log2(base);
}

double color_entropy(const RgbaImage& img, std::span<const std::uint8_t> mask, double base) {
  const HsvImage hsv = to_hsv(img);
  const double h = channel_entropy(histogram(hsv.h, mask), base);
  const double s = channel_entropy(histogram(hsv.s, mask), base);
  const double v = channel_entropy(histogram(hsv.v, mask), base);
  return (h + s + v) / 3.0;
}

double mean_gradient(const GradientField& field, std::span<const std::uint8_t> mask) {
  double sum = 0.0;
  std::size_t count = 0;
  if (mask.empty()) {
    for (double g : field.gmag) sum += g;
    count = field.gmag.size();
  } else {
    if (mask.size() != field.gmag.size()) {
      throw std::invalid_argument("mask length does not match gradient field");
    }
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) {
        sum += field.gmag[i];
        ++count;
      }
    }
  }
  if (count == 0) throw EmptySelection();
  return sum / static_cast<double>(count);
}

double texture_complexity(const RgbaImage& img, std::span<const std::uint8_t> mask) {
  return mean_gradient(sobel(to_grayscale(img)), mask);
}

double total_score(double c_color, double c_texture, double lambda) {
  if (!std::isfinite(c_color) || !std::isfinite(c_texture) || !std::isfinite(lambda)) {
    throw std::invalid_argument("total_score inputs must be finite");
  }
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  return lambda * c_color + c_texture;
}

QualityScore score_image(const RgbaImage& img, MaskMode mode, double lambda, double entropy_base) {
  const PixelMask mask = select_pixels(img, mode);
  return QualityScore::make(color_entropy(img, mask, entropy_base), texture_complexity(img, mask),
                            lambda);
}

}  // namespace texcurve
