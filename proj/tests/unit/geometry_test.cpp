#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "subrayleigh/geometry.hpp"
#include "support.hpp"

namespace subrayleigh {
namespace {

using testing::default_geometry;
using testing::default_rect;
using testing::uniform;

constexpr double kPi = std::numbers::pi;

TEST(Geometry, WavenumberFromWavelength) {
  EXPECT_DOUBLE_EQ(wavenumber(Geometry(2 * kPi, 1, 1, 1)), 1.0);
  EXPECT_DOUBLE_EQ(wavenumber(Geometry(kPi, 1, 1, 1)), 2.0);
  EXPECT_NEAR(wavenumber(Geometry(500e-9, 1, 1, 1)), 1.2566370614e7, 1e-3);
  EXPECT_DOUBLE_EQ(default_geometry().wavenumber(),
                   wavenumber(default_geometry()));
}

TEST(Geometry, RejectsNonPositiveOrNonFiniteFields) {
  EXPECT_THROW(Geometry(0, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(Geometry(1, -1, 1, 1), std::invalid_argument);
  EXPECT_THROW(Geometry(1, 1, 0, 1), std::invalid_argument);
  EXPECT_THROW(Geometry(1, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(Geometry(INFINITY, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(Geometry(NAN, 1, 1, 1), std::invalid_argument);
}

TEST(Aperture, RectAndGratingInvariants) {
  const auto rect = Aperture::rect(1e-5, 2e-5);
  EXPECT_EQ(rect.kind(), ApertureKind::Rect);
  EXPECT_EQ(rect.slit_count(), 1);
  EXPECT_THROW(Aperture::rect(0, 1), std::invalid_argument);
  EXPECT_THROW(Aperture::rect(1, -1), std::invalid_argument);

  const auto grating = Aperture::grating(1e-5, 1e-5, 3e-5, 3);
  EXPECT_EQ(grating.kind(), ApertureKind::Grating);
  EXPECT_EQ(grating.slit_count(), 3);
  // Overlapping or touching slits.
  EXPECT_THROW(Aperture::grating(1e-5, 1e-5, 1e-5, 3), std::invalid_argument);
  EXPECT_THROW(Aperture::grating(1e-5, 1e-5, 3e-5, 0), std::invalid_argument);
}

TEST(Layouts, RejectEmptyAndNonFinite) {
  EXPECT_THROW(EmitterArray({}), std::invalid_argument);
  EXPECT_THROW(DetectorLayout({}), std::invalid_argument);
  EXPECT_THROW(EmitterArray({{NAN, 0}}), std::invalid_argument);
  // Coincident emitters are a valid degenerate input.
  EXPECT_NO_THROW(EmitterArray({{1, 0}, {1, 0}}));
}

TEST(EmitterPair, OffsetIsPiRzOverKa) {
  const Geometry g(1.0, 2.0, 1.0, 1.0);
  const auto a = Aperture::rect(1.0, 1.0);
  const auto pair = emitter_pair(g, a, 0.0);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_DOUBLE_EQ(pair[0].x, 0.0);
  EXPECT_NEAR(pair[1].x, 1.0, 1e-15);
  EXPECT_EQ(pair[0].y, 0.0);
  EXPECT_EQ(pair[1].y, 0.0);

  const auto shifted = emitter_pair(g, a, 0.37);
  EXPECT_NEAR(shifted[1].x - shifted[0].x, pair[1].x - pair[0].x, 1e-15);
}

TEST(EmitterPair, SineArgumentsDifferByQuarterTurn) {
  const auto g = default_geometry();
  const auto a = default_rect();
  const auto pair = emitter_pair(g, a, 0.0);
  const double dx = pair[1].x - pair[0].x;
  EXPECT_NEAR(g.wavenumber() * a.height() * dx / (2.0 * g.source_distance()),
              kPi / 2, 1e-14);
}

TEST(EmitterQuad, PositionsAndOrder) {
  const Geometry g(1.0, 2.0, 1.0, 1.0);
  const auto quad = emitter_quad(g, Aperture::rect(1.0, 1.0));
  ASSERT_EQ(quad.size(), 4u);
  const double expected[] = {-1.0, 0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(quad[i].x, expected[i], 1e-15) << i;
    EXPECT_EQ(quad[i].y, 0.0);
  }
}

TEST(EmitterQuad, ScalesAsRzOverA) {
  const Geometry g(1.0, 2.0, 1.0, 1.0);
  const Geometry g2(1.0, 4.0, 1.0, 1.0);
  const auto q1 = emitter_quad(g, Aperture::rect(1.0, 1.0));
  const auto q2 = emitter_quad(g2, Aperture::rect(2.0, 1.0));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(q1[i].x, q2[i].x, 1e-15);
  }
}

TEST(ResolveLayout, Placements) {
  const Geometry g(1.0, 1.0, 2.0, 1.0);
  const auto a = Aperture::rect(1.0, 1.0);
  const auto mirror = resolve_layout(Placement::MirrorPair, 0.3, g, a);
  EXPECT_DOUBLE_EQ(mirror[0].x, 0.3);
  EXPECT_DOUBLE_EQ(mirror[1].x, -0.3);
  const auto coincident = resolve_layout(Placement::CoincidentPair, 0.3, g, a);
  EXPECT_DOUBLE_EQ(coincident[0].x, 0.3);
  EXPECT_DOUBLE_EQ(coincident[1].x, 0.3);
  const auto quad = resolve_layout(Placement::StaggeredQuad, 0.0, g, a);
  const double expected[] = {0.0, 0.0, 1.0, 0.5};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(quad[i].x, expected[i], 1e-15) << i;
  }
}

TEST(ResolveLayoutProperty, MirrorPairIsEvenInR) {
  const auto g = default_geometry();
  const auto a = default_rect();
  for (int trial = 0; trial < 200; ++trial) {
    const double r = uniform(-0.1, 0.1);
    auto p = resolve_layout(Placement::MirrorPair, r, g, a).positions();
    auto q = resolve_layout(Placement::MirrorPair, -r, g, a).positions();
    auto by_x = [](Vec2 u, Vec2 v) { return u.x < v.x; };
    std::sort(p.begin(), p.end(), by_x);
    std::sort(q.begin(), q.end(), by_x);
    EXPECT_EQ(p[0].x, q[0].x);
    EXPECT_EQ(p[1].x, q[1].x);
  }
}

TEST(ResolveLayoutProperty, AllLayoutsInXZPlane) {
  const auto g = default_geometry();
  const auto a = default_rect();
  for (auto placement : {Placement::MirrorPair, Placement::CoincidentPair,
                         Placement::StaggeredQuad}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto layout = resolve_layout(placement, uniform(-0.05, 0.05), g, a);
      for (const auto& p : layout.positions()) {
        EXPECT_EQ(p.y, 0.0);
      }
    }
  }
  const auto quad = emitter_quad(g, a);
  for (const auto& p : quad.positions()) {
    EXPECT_EQ(p.y, 0.0);
  }
}

TEST(OffsetsProperty, RatioIsPlaneDistanceRatio) {
  for (int trial = 0; trial < 100; ++trial) {
    const Geometry g(uniform(1e-7, 1e-6), uniform(0.01, 1), uniform(0.1, 10),
                     1.0);
    const auto a = Aperture::rect(uniform(1e-6, 1e-4), 1e-5);
    const double source = emitter_pair(g, a, 0.0)[1].x;
    const auto quad = resolve_layout(Placement::StaggeredQuad, 0.0, g, a);
    const double detector = quad[2].x;
    EXPECT_NEAR(detector / source,
                g.detector_distance() / g.source_distance(),
                1e-12 * g.detector_distance() / g.source_distance());
  }
}

}  // namespace
}  // namespace subrayleigh
