#pragma once

#include <span>
#include <string>
#include <string_view>

#include "texcurve/image.hpp"

namespace texcurve {

inline constexpr double kDefaultLambda = 35.0;
inline constexpr double kDefaultEntropyBase = 2.0;

/// Object- or image-level quality. c_total is always lambda * c_color + c_texture.
struct QualityScore {
  double c_color = 0.0;
  double c_texture = 0.0;
  double c_total = 0.0;
  double lambda = kDefaultLambda;

  static QualityScore make(double c_color, double c_texture, double lambda = kDefaultLambda);

  friend bool operator==(const QualityScore&, const QualityScore&) = default;
};

/// Which pixels a score is measured over.
///   automatic:  foreground (alpha > 0) when the image has any transparency, else all
///   foreground: always alpha > 0
///   full:       every pixel
enum class MaskMode { automatic, foreground, full };

std::string_view to_string(MaskMode mode);
MaskMode parse_mask_mode(std::string_view text);

/// Resolves the mask for `mode`; an empty result selects every pixel.
PixelMask select_pixels(const RgbaImage& img, MaskMode mode);

/// Shannon entropy of a 256-bin histogram in units of log base `base`
/// (bits by default). Empty bins contribute nothing.
double channel_entropy(const ChannelHistogram& hist, double base = kDefaultEntropyBase);

/// Mean entropy of the H, S and V channel histograms.
double color_entropy(const RgbaImage& img, std::span<const std::uint8_t> mask = {},
                     double base = kDefaultEntropyBase);

/// Mean of gmag over the selected pixels.
double mean_gradient(const GradientField& field, std::span<const std::uint8_t> mask = {});

/// Mean Sobel gradient magnitude of the grayscale image over the selected pixels.
double texture_complexity(const RgbaImage& img, std::span<const std::uint8_t> mask = {});

/// lambda * c_color + c_texture. Throws std::invalid_argument on non-finite
/// inputs or negative lambda.
double total_score(double c_color, double c_texture, double lambda = kDefaultLambda);

/// Scores a single image using the pixel selection given by `mode`.
QualityScore score_image(const RgbaImage& img, MaskMode mode = MaskMode::automatic,
                         double lambda = kDefaultLambda, double entropy_base = kDefaultEntropyBase);

}  // namespace texcurve
