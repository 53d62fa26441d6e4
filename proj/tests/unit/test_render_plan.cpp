#include <doctest.h>

#include <array>
#include <json.hpp>

#include "texcurve/render_plan.hpp"

using namespace texcurve;

TEST_SUITE("render_plan") {

TEST_CASE("target views are the fixed six-camera layout") {
  const auto views = generate_target_views();
  REQUIRE(views.size() == 6);
  const std::array<double, 6> azimuth{0, 90, 180, 270, 0, 0};
  const std::array<double, 6> zenith{0, 0, 0, 0, -90, 90};
  const std::array<const char*, 6> labels{"front", "right", "back", "left", "bottom", "top"};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(views[i].azimuth_deg == azimuth[i]);
    CHECK(views[i].polar_deg == zenith[i]);
    CHECK(views[i].label == labels[i]);
    CHECK(views[i].convention == AngleConvention::zenith);
  }
}

TEST_CASE("target views do not depend on object or seed") {
  const RenderPlan a = make_render_plan("chair", 1);
  const RenderPlan b = make_render_plan("table", 987654321);
  CHECK(a.target_views == b.target_views);
  CHECK(a.target_views == generate_target_views());
}

TEST_CASE("reference views stay strictly inside their ranges") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (const ReferenceView& v : generate_reference_views(seed, 15)) {
      CHECK(v.pose.convention == AngleConvention::elevation);
      CHECK(v.pose.azimuth_deg > -30.0);
      CHECK(v.pose.azimuth_deg < 30.0);
      CHECK(v.pose.polar_deg > -10.0);
      CHECK(v.pose.polar_deg < 30.0);
      switch (v.lighting.kind()) {
        case LightKind::point: {
          const auto& p = std::get<PointLight>(v.lighting.params);
          CHECK(p.position.distance >= 1.5);
          CHECK(p.position.distance < 4.0);
          CHECK(p.intensity >= 0.5);
          CHECK(p.intensity < 2.0);
          break;
        }
        case LightKind::area: {
          const auto& a = std::get<AreaLight>(v.lighting.params);
          CHECK(a.extent >= 0.5);
          CHECK(a.extent < 2.0);
          CHECK(a.position.elevation_deg >= 0.0);
          CHECK(a.position.elevation_deg < 90.0);
          break;
        }
        case LightKind::hdri: {
          const auto& h = std::get<HdriLight>(v.lighting.params);
          CHECK(h.hdri_id >= 0);
          CHECK(h.hdri_id < 100);
          CHECK(h.rotation_deg >= 0.0);
          CHECK(h.rotation_deg < 360.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("plans default to fifteen reference views and honor the pool size") {
  CHECK(make_render_plan("x", 3).reference_views.size() == 15);
  ReferenceSampling s;
  s.hdri_pool = 2;
  for (const auto& v : generate_reference_views(4, 300, s)) {
    if (v.lighting.kind() == LightKind::hdri) CHECK(std::get<HdriLight>(v.lighting.params).hdri_id < 2);
  }
}

TEST_CASE("object id and seed fully determine the plan") {
  CHECK(make_render_plan("lamp", 42) == make_render_plan("lamp", 42));
  CHECK(emit_plan(make_render_plan("lamp", 42)) == emit_plan(make_render_plan("lamp", 42)));
  CHECK_FALSE(make_render_plan("lamp", 42).reference_views == make_render_plan("lamp", 43).reference_views);
  CHECK_FALSE(make_render_plan("lamp", 42).reference_views == make_render_plan("lamp2", 42).reference_views);
  // Prefix of a longer plan is stable: view i depends only on (seed, i).
  const auto five = generate_reference_views(9, 5);
  const auto ten = generate_reference_views(9, 10);
  for (std::size_t i = 0; i < 5; ++i) CHECK(five[i] == ten[i]);
}

TEST_CASE("all three lighting kinds are drawn about equally") {
  std::array<int, 3> counts{};
  const auto views = generate_reference_views(2024, 9000);
  for (const auto& v : views) ++counts[static_cast<int>(v.lighting.kind())];
  for (int c : counts) CHECK(std::abs(c / 9000.0 - 1.0 / 3.0) < 0.02);
}

TEST_CASE("plan JSON round trip and schema") {
  const RenderPlan plan = make_render_plan("obj/with spaces", 77, 4);
  const std::string text = emit_plan(plan);
  CHECK(parse_plan(text) == plan);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.at("schema") == "renderplan/1");
  CHECK(doc.at("target_views").size() == 6);
  CHECK(doc.at("target_views")[4].at("zenith_deg") == -90.0);
  CHECK(doc.at("reference_views")[0].at("pose").contains("elevation_deg"));
  CHECK_FALSE(doc.at("reference_views")[0].at("pose").contains("zenith_deg"));

  auto wrong = doc;
  wrong["schema"] = "renderplan/2";
  CHECK_THROWS_AS(parse_plan(wrong.dump()), std::invalid_argument);
  CHECK_THROWS_AS(parse_plan("{"), std::invalid_argument);
}

}  // TEST_SUITE
