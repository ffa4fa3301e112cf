#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "profilekit/generators.hpp"
#include "profilekit/profile.hpp"

using namespace profilekit;

TEST(StandardSurface, EulerCharacteristic)
{
    for (int g = 0; g <= 3; ++g) EXPECT_EQ(standard_surface(g).euler_characteristic(), 2 - 2 * g) << g;
}

TEST(StandardSurface, ProfileComponentCounts)
{
    EXPECT_EQ(extract_profile(standard_surface(1)).size(), 2u);
    EXPECT_EQ(extract_profile(standard_surface(3)).size(), 4u);
}

TEST(StandardSurface, Deterministic)
{
    const TriMesh a = standard_surface(2);
    const TriMesh b = standard_surface(2);
    ASSERT_EQ(a.vertices().size(), b.vertices().size());
    for (std::size_t i = 0; i < a.vertices().size(); ++i) EXPECT_EQ(a.vertices()[i], b.vertices()[i]);
    ASSERT_EQ(a.faces().size(), b.faces().size());
    for (std::size_t i = 0; i < a.faces().size(); ++i) EXPECT_EQ(a.faces()[i], b.faces()[i]);
}

TEST(StandardSurface, BadParamsRejected)
{
    EXPECT_THROW(standard_surface(-1), Error);
    GeneratorParams p;
    p.minor_radius = 3.0;  // a > R
    EXPECT_THROW(standard_surface(1, p), Error);
}

TEST(TorusCurve, AnchorsExact)
{
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {0, 1}, {3, -2}}) {
        const CurveOnSurface c = torus_with_curve(p, q);
        const double tol = 1e-12 * c.host->diameter();
        for (std::size_t i = 0; i < c.curve.size(); ++i) {
            const auto t = c.host->triangle(c.anchors[i]);
            EXPECT_LE(point_triangle_distance(c.curve[i], t[0], t[1], t[2]), tol);
        }
    }
}

TEST(TorusCurve, WindsAsRequested)
{
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, 3}, {1, -1}, {3, -2}}) {
        const CurveOnSurface c = torus_with_curve(p, q);
        double dtheta = 0.0;
        double dphi = 0.0;
        const std::size_t n = c.curve.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point3& a = c.curve[i];
            const Point3& b = c.curve[(i + 1) % n];
            dtheta += std::remainder(std::atan2(b.y, b.x) - std::atan2(a.y, a.x), 2 * std::numbers::pi);
            const double pa = std::atan2(a.z, std::hypot(a.x, a.y) - 2.0);
            const double pb = std::atan2(b.z, std::hypot(b.x, b.y) - 2.0);
            dphi += std::remainder(pb - pa, 2 * std::numbers::pi);
        }
        EXPECT_NEAR(dtheta / (2 * std::numbers::pi), p, 1e-9);
        EXPECT_NEAR(dphi / (2 * std::numbers::pi), -q, 1e-9);
    }
}

TEST(TorusCurve, NonCoprimeRejected)
{
    EXPECT_THROW(torus_with_curve(2, 4), Error);
    EXPECT_THROW(torus_with_curve(0, 0), Error);
}

TEST(Tube, CircleCoreIsATorus)
{
    // Coarse core: the radius must stay under half the polygon's feature size.
    const TriMesh t = tube_around_knot(fixtures::circle(12, 2.0), 0.45);
    EXPECT_EQ(t.euler_characteristic(), 0);
    const auto profiles = extract_profile(t);
    EXPECT_EQ(profiles.size(), 2u);
    // vertices sit at distance 0.45 from the core circle, up to chord error
    for (const Point3& v : t.vertices()) {
        EXPECT_NEAR(std::hypot(std::hypot(v.x, v.y) - 2.0, v.z), 0.45, 0.1);
    }
}

TEST(Tube, TooFatRejected)
{
    const PLCurve3 core = preset_curve("trefoil_standard");
    try {
        tube_around_knot(core, min_feature_size(core));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TubeTooFat);
    }
}

TEST(Tube, TrefoilTwoComponents)
{
    EXPECT_EQ(extract_profile(tube_around_knot(preset_curve("trefoil_standard"), 0.0)).size(), 2u);
}

TEST(Presets, AllNamesResolve)
{
    for (const auto& name : preset_names()) EXPECT_NO_THROW(preset(name)) << name;
    try {
        preset("nope");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownPreset);
    }
}

TEST(Presets, ModelCuspIsTheSemicubical)
{
    // Near the marked sample the curve follows (t^2, t^3, t): x ~ z^2, y ~ z^3.
    const PLCurve3 c = preset_curve("model_cusp");
    const std::size_t k = c.cusp_marks().front();
    const Point3 o = c[k];
    for (const int d : {-2, -1, 1, 2}) {
        const Point3 p = c.at_wrapped(static_cast<std::ptrdiff_t>(k) + d) - o;
        EXPECT_GT(p.x, 0.0);            // both branches on the same side
        EXPECT_GT(p.y * p.z, 0.0);      // y has the sign of t, as does z
    }
}

TEST(Presets, FigureEightOneCrossingWritheOne)
{
    const PLCurve3 c = preset_curve("figeight_w1");
    EXPECT_EQ(oracle::crossings({fixtures::points(c)}).size(), 1u);
    EXPECT_EQ(oracle::writhe(fixtures::points(c)), 1);
}
