#include "texcurve/render_plan.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "texcurve/random.hpp"

namespace texcurve {

using nlohmann::json;

std::string_view to_string(LightKind kind) {
  switch (kind) {
    case LightKind::point: return "point";
    case LightKind::area: return "area";
    case LightKind::hdri: return "hdri";
  }
  return "point";
}

std::vector<CameraPose> generate_target_views() {
  constexpr struct {
    const char* label;
    double azimuth;
    double zenith;
  } kViews[] = {
      {"front", 0, 0}, {"right", 90, 0}, {"back", 180, 0},
      {"left", 270, 0}, {"bottom", 0, -90}, {"top", 0, 90},
  };
  std::vector<CameraPose> poses;
  poses.reserve(std::size(kViews));
  for (const auto& v : kViews) poses.push_back({v.label, v.azimuth, v.zenith, AngleConvention::zenith, {}, {}});
  return poses;
}

namespace {

void check_range(const Range& r, const char* name) {
  if (!(r.lo < r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument(std::string("invalid sampling range for ") + name);
  }
}

LightPosition draw_position(SeededRng& rng, const ReferenceSampling& s) {
  LightPosition p;
  p.azimuth_deg = rng.uniform(0.0, 360.0);
  p.elevation_deg = rng.uniform(s.light_elevation_deg.lo, s.light_elevation_deg.hi);
  p.distance = rng.uniform(s.light_distance.lo, s.light_distance.hi);
  return p;
}

std::string reference_label(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "ref_%02zu", i);
  return buf;
}

}  // namespace

std::vector<ReferenceView> generate_reference_views(std::uint64_t seed, std::size_t count,
                                                    const ReferenceSampling& sampling) {
  if (sampling.hdri_pool < 1) throw std::invalid_argument("hdri_pool must be at least 1");
  check_range(sampling.azimuth_deg, "azimuth");
  check_range(sampling.elevation_deg, "elevation");
  check_range(sampling.light_distance, "light distance");
  check_range(sampling.light_intensity, "light intensity");
  check_range(sampling.light_elevation_deg, "light elevation");
  check_range(sampling.area_extent, "area extent");

  std::vector<ReferenceView> views;
  views.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t view_seed = derive_seed(seed, i);
    SeededRng rng(view_seed);

    ReferenceView view;
    view.pose.label = reference_label(i);
    view.pose.convention = AngleConvention::elevation;
    view.pose.azimuth_deg = rng.uniform_open(sampling.azimuth_deg.lo, sampling.azimuth_deg.hi);
    view.pose.polar_deg = rng.uniform_open(sampling.elevation_deg.lo, sampling.elevation_deg.hi);

    view.lighting.seed = view_seed;
    switch (static_cast<LightKind>(rng.below(3))) {
      case LightKind::point: {
        PointLight light;
        light.position = draw_position(rng, sampling);
        light.intensity = rng.uniform(sampling.light_intensity.lo, sampling.light_intensity.hi);
        view.lighting.params = light;
        break;
      }
      case LightKind::area: {
        AreaLight light;
        light.position = draw_position(rng, sampling);
        light.extent = rng.uniform(sampling.area_extent.lo, sampling.area_extent.hi);
        light.intensity = rng.uniform(sampling.light_intensity.lo, sampling.light_intensity.hi);
        view.lighting.params = light;
        break;
      }
      case LightKind::hdri: {
        HdriLight light;
        light.hdri_id = static_cast<int>(rng.below(static_cast<std::uint64_t>(sampling.hdri_pool)));
        light.rotation_deg = rng.uniform(0.0, 360.0);
        view.lighting.params = light;
        break;
      }
    }
    views.push_back(std::move(view));
  }
  return views;
}

RenderPlan make_render_plan(std::string object_id, std::uint64_t seed, std::size_t reference_count,
                            const ReferenceSampling& sampling) {
  RenderPlan plan;
  plan.reference_views =
      generate_reference_views(derive_seed(seed, stable_hash(object_id)), reference_count, sampling);
  plan.object_id = std::move(object_id);
  plan.target_views = generate_target_views();
  plan.seed = seed;
  return plan;
}

// ---------------------------------------------------------------------------
// Plan files

namespace {

json pose_to_json(const CameraPose& pose) {
  json j{{"label", pose.label}, {"azimuth_deg", pose.azimuth_deg}};
  if (pose.convention == AngleConvention::zenith) {
    j["convention"] = "zenith";
    j["zenith_deg"] = pose.polar_deg;
  } else {
    j["convention"] = "elevation";
    j["elevation_deg"] = pose.polar_deg;
  }
  if (pose.distance) j["distance"] = *pose.distance;
  if (pose.fov_deg) j["fov_deg"] = *pose.fov_deg;
  return j;
}

CameraPose pose_from_json(const json& j) {
  CameraPose pose;
  pose.label = j.at("label").get<std::string>();
  pose.azimuth_deg = j.at("azimuth_deg").get<double>();
  const std::string convention = j.at("convention").get<std::string>();
  if (convention == "zenith") {
    pose.convention = AngleConvention::zenith;
    pose.polar_deg = j.at("zenith_deg").get<double>();
  } else if (convention == "elevation") {
    pose.convention = AngleConvention::elevation;
    pose.polar_deg = j.at("elevation_deg").get<double>();
  } else {
    throw std::invalid_argument("unknown angle convention '" + convention + "'");
  }
  if (j.contains("distance")) pose.distance = j.at("distance").get<double>();
  if (j.contains("fov_deg")) pose.fov_deg = j.at("fov_deg").get<double>();
  return pose;
}

json position_to_json(const LightPosition& p) {
  return {{"azimuth_deg", p.azimuth_deg}, {"elevation_deg", p.elevation_deg}, {"distance", p.distance}};
}

LightPosition position_from_json(const json& j) {
  return {j.at("azimuth_deg").get<double>(), j.at("elevation_deg").get<double>(),
          j.at("distance").get<double>()};
}

json lighting_to_json(const LightingConfig& lighting) {
  json j{{"kind", std::string(to_string(lighting.kind()))}, {"seed", lighting.seed}};
  if (const auto* p = std::get_if<PointLight>(&lighting.params)) {
    j["position"] = position_to_json(p->position);
    j["intensity"] = p->intensity;
  } else if (const auto* a = std::get_if<AreaLight>(&lighting.params)) {
    j["position"] = position_to_json(a->position);
    j["extent"] = a->extent;
    j["intensity"] = a->intensity;
  } else {
    const auto& h = std::get<HdriLight>(lighting.params);
    j["hdri_id"] = h.hdri_id;
    j["rotation_deg"] = h.rotation_deg;
  }
  return j;
}

LightingConfig lighting_from_json(const json& j) {
  LightingConfig lighting;
  lighting.seed = j.at("seed").get<std::uint64_t>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "point") {
    lighting.params = PointLight{position_from_json(j.at("position")), j.at("intensity").get<double>()};
  } else if (kind == "area") {
    lighting.params = AreaLight{position_from_json(j.at("position")), j.at("extent").get<double>(),
                                j.at("intensity").get<double>()};
  } else if (kind == "hdri") {
    lighting.params = HdriLight{j.at("hdri_id").get<int>(), j.at("rotation_deg").get<double>()};
  } else {
    throw std::invalid_argument("unknown lighting kind '" + kind + "'");
  }
  return lighting;
}

}  // namespace

std::string emit_plan(const RenderPlan& plan) {
  json targets = json::array();
  for (const CameraPose& pose : plan.target_views) {
    json t = pose_to_json(pose);
    t["lighting"] = {{"kind", "uniform"}};
    targets.push_back(std::move(t));
  }
  json refs = json::array();
  for (const ReferenceView& ref : plan.reference_views) {
    refs.push_back({{"pose", pose_to_json(ref.pose)}, {"lighting", lighting_to_json(ref.lighting)}});
  }
  const json doc{{"schema", std::string(kRenderPlanSchema)},
                 {"object_id", plan.object_id},
                 {"seed", plan.seed},
                 {"target_views", std::move(targets)},
                 {"reference_views", std::move(refs)}};
  return doc.dump(2) + "\n";
}

RenderPlan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("render plan is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("schema").get<std::string>() != kRenderPlanSchema) {
      throw std::invalid_argument("unsupported render plan schema " + doc.at("schema").dump());
    }
    RenderPlan plan;
    plan.object_id = doc.at("object_id").get<std::string>();
    plan.seed = doc.at("seed").get<std::uint64_t>();
    for (const json& t : doc.at("target_views")) plan.target_views.push_back(pose_from_json(t));
    for (const json& r : doc.at("reference_views")) {
      plan.reference_views.push_back({pose_from_json(r.at("pose")), lighting_from_json(r.at("lighting"))});
    }
    return plan;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed render plan: ") + e.what());
  }
}

}  // namespace texcurve
