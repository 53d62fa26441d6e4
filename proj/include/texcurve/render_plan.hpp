#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace texcurve {

/// Whether CameraPose::polar_deg is measured as zenith (target views) or
/// elevation (reference perturbations). The two are never converted silently.
enum class AngleConvention { zenith, elevation };

struct CameraPose {
  std::string label;
  double azimuth_deg = 0.0;
  double polar_deg = 0.0;
  AngleConvention convention = AngleConvention::zenith;
  // Left unset by the generator; renderers use their defaults.
  std::optional<double> distance;
  std::optional<double> fov_deg;

  friend bool operator==(const CameraPose&, const CameraPose&) = default;
};

/// Light placement on a sphere around the object; distance in object radii.
struct LightPosition {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double distance = 0.0;
  friend bool operator==(const LightPosition&, const LightPosition&) = default;
};

struct PointLight {
  LightPosition position;
  double intensity = 1.0;
  friend bool operator==(const PointLight&, const PointLight&) = default;
};

struct AreaLight {
  LightPosition position;
  double extent = 1.0;  // edge length in object radii
  double intensity = 1.0;
  friend bool operator==(const AreaLight&, const AreaLight&) = default;
};

struct HdriLight {
  int hdri_id = 0;
  double rotation_deg = 0.0;
  friend bool operator==(const HdriLight&, const HdriLight&) = default;
};

enum class LightKind { point, area, hdri };

std::string_view to_string(LightKind kind);

struct LightingConfig {
  std::variant<PointLight, AreaLight, HdriLight> params;
  std::uint64_t seed = 0;  // RNG seed the parameters were drawn with

  LightKind kind() const noexcept { return static_cast<LightKind>(params.index()); }
  friend bool operator==(const LightingConfig&, const LightingConfig&) = default;
};

struct ReferenceView {
  CameraPose pose;
  LightingConfig lighting;
  friend bool operator==(const ReferenceView&, const ReferenceView&) = default;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sampling ranges for reference renders. Angles are drawn from the open
/// intervals; light parameters from half-open [lo, hi).
struct ReferenceSampling {
  Range azimuth_deg{-30.0, 30.0};
  Range elevation_deg{-10.0, 30.0};
  Range light_distance{1.5, 4.0};
  Range light_intensity{0.5, 2.0};
  Range light_elevation_deg{0.0, 90.0};
  Range area_extent{0.5, 2.0};
  int hdri_pool = 100;
};

inline constexpr std::size_t kDefaultReferenceCount = 15;
inline constexpr std::string_view kRenderPlanSchema = "renderplan/1";

struct RenderPlan {
  std::string object_id;
  std::vector<CameraPose> target_views;
  std::vector<ReferenceView> reference_views;
  std::uint64_t seed = 0;

  friend bool operator==(const RenderPlan&, const RenderPlan&) = default;
};

/// The six fixed target cameras: front, right, back, left, bottom, top.
std::vector<CameraPose> generate_target_views();

/// Reference cameras with randomized lighting; a pure function of its inputs.
std::vector<ReferenceView> generate_reference_views(std::uint64_t seed,
                                                    std::size_t count = kDefaultReferenceCount,
                                                    const ReferenceSampling& sampling = {});

/// Plan for one object. The reference-view seed is derived from
/// (seed, object_id), so the pair fully determines the plan.
RenderPlan make_render_plan(std::string object_id, std::uint64_t seed,
                            std::size_t reference_count = kDefaultReferenceCount,
                            const ReferenceSampling& sampling = {});

/// Canonical JSON: sorted keys, shortest round-trip float formatting.
std::string emit_plan(const RenderPlan& plan);

/// Inverse of emit_plan. Throws std::invalid_argument on schema violations.
RenderPlan parse_plan(std::string_view text);

}  // namespace texcurve
