#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "profilekit/diagram.hpp"
#include "profilekit/framing.hpp"
#include "profilekit/generators.hpp"
#include "profilekit/obstruction.hpp"
#include "profilekit/profile.hpp"

using namespace profilekit;
using fixtures::points;

namespace {

bool excludes(const std::vector<Exclusion>& ex, const std::string& cls)
{
    return std::any_of(ex.begin(), ex.end(), [&](const Exclusion& e) { return e.surface_class == cls; });
}

/// Circle with `count` evenly spaced samples marked as cusps. Only the marks and their
/// chirality labels matter to check_contour; `mixed` relabels the last one.
PlanarDiagram contour_with_cusps(std::size_t count, bool mixed)
{
    std::vector<Point3> pts;
    std::vector<std::size_t> marks;
    const std::size_t per = 12;
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < per; ++j) {
            const double t = 2 * std::numbers::pi * (k * per + j) / double(count * per);
            pts.push_back({std::cos(t), std::sin(t), 0.0});
        }
        marks.push_back(pts.size() - 1);
    }
    PlanarDiagram d = project_strands({pts}, {marks});
    if (mixed && !d.cusps.empty()) {
        d.cusps.back().chirality = d.cusps.front().chirality == Chirality::Right ? Chirality::Left : Chirality::Right;
    }
    return d;
}

}  // namespace

TEST(Realizable, OneOneCurveIsObstructed)
{
    const ObstructionReport r = check_realizable(torus_with_curve(1, 1));
    EXPECT_EQ(r.writhe, 0);
    EXPECT_EQ(r.surface_linking, 1);
    EXPECT_EQ(r.deficit, 1);
    EXPECT_FALSE(r.realizable);
    EXPECT_FALSE(r.cusp_failure.has_value());
}

TEST(Realizable, SphereEquator)
{
    const auto profiles = extract_profile(sphere_mesh(3));
    const ObstructionReport r = check_realizable(profiles[0].curve);
    EXPECT_EQ(r.writhe, 0);
    EXPECT_EQ(r.surface_linking, 0);
    EXPECT_TRUE(r.realizable);
}

TEST(Realizable, TwoThreeAgainstOracle)
{
    const CurveOnSurface c = torus_with_curve(2, 3);
    const ObstructionReport r = check_realizable(c);
    EXPECT_EQ(r.writhe, oracle::writhe(points(c.curve)));
    EXPECT_EQ(r.surface_linking, 6);
    EXPECT_EQ(r.realizable, r.writhe == 6);
}

TEST(Realizable, MeridianFallsBackToCrossingSum)
{
    const ObstructionReport r = check_realizable(torus_with_curve(0, 1));
    EXPECT_EQ(r.writhe, 0);
    EXPECT_EQ(r.surface_linking, 0);
    EXPECT_TRUE(r.realizable);
}

TEST(Realizable, DeficitMatchesDefinition)
{
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 3}, {1, -1}, {3, 2}}) {
        const ObstructionReport r = check_realizable(torus_with_curve(p, q));
        EXPECT_EQ(r.deficit, r.surface_linking - r.writhe);
        EXPECT_EQ(r.realizable, r.deficit == 0 && !r.cusp_failure);
        EXPECT_EQ(excludes(r.exclusions, "sphere"), r.writhe != 0);
    }
}

TEST(Realizable, ProfilesOfTiltedTorusPass)
{
    const TriMesh m = transform(torus_mesh(), rotation_about({1, 0, 0}, std::numbers::pi / 3, {0, 0, 0}));
    for (const auto& p : extract_profile(m)) {
        const ObstructionReport r = check_realizable(p.curve);
        EXPECT_TRUE(r.realizable) << "w=" << r.writhe << " lambda=" << r.surface_linking;
        EXPECT_TRUE(r.cusps.even);
        EXPECT_TRUE(r.cusps.uniform_chirality);
    }
}

TEST(RiCorrect, OneOneBecomesRealizable)
{
    const CurveOnSurface c = torus_with_curve(1, 1);
    const CurveOnSurface fixed = ri_correct(c);
    const ObstructionReport r = check_realizable(fixed);
    EXPECT_EQ(r.writhe, 1);
    EXPECT_EQ(r.surface_linking, 1);
    EXPECT_TRUE(r.realizable);
    EXPECT_EQ(fixed.host, c.host);
    // still a curve on the same surface: samples on anchor faces, anchors edge-connected
    EXPECT_NO_THROW(build_curve_on_surface(fixed.curve, fixed.anchors, fixed.host));
}

TEST(RiCorrect, RealizableInputUnchanged)
{
    const CurveOnSurface c = torus_with_curve(1, 0);
    const CurveOnSurface same = ri_correct(c);
    ASSERT_EQ(same.curve.size(), c.curve.size());
    for (std::size_t i = 0; i < c.curve.size(); ++i) EXPECT_EQ(same.curve[i], c.curve[i]);
    EXPECT_EQ(same.anchors, c.anchors);
}

TEST(RiCorrect, CrossingCountGrowsByDeficit)
{
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {1, -1}, {1, 2}, {3, -2}}) {
        const CurveOnSurface c = torus_with_curve(p, q);
        const ObstructionReport before = check_realizable(c);
        const CurveOnSurface fixed = ri_correct(c);
        const std::size_t c0 = oracle::crossings({points(c.curve)}).size();
        const std::size_t c1 = oracle::crossings({points(fixed.curve)}).size();
        EXPECT_EQ(c1 - c0, static_cast<std::size_t>(std::abs(before.deficit))) << p << "," << q;
        const ObstructionReport after = check_realizable(fixed);
        EXPECT_TRUE(after.realizable) << p << "," << q;
        EXPECT_EQ(after.surface_linking, before.surface_linking);
        // idempotent
        EXPECT_EQ(ri_correct(fixed).curve.size(), fixed.curve.size());
    }
}

TEST(RiCorrect, CuspedProfilesNeedNoKinks)
{
    const TriMesh m = transform(torus_mesh(), rotation_about({1, 0, 0}, std::numbers::pi / 3, {0, 0, 0}));
    for (const auto& p : extract_profile(m)) {
        if (p.curve.curve.cusp_marks().empty()) continue;
        EXPECT_EQ(ri_correct(p.curve).curve.size(), p.curve.curve.size());
    }
}

TEST(Contour, NoCuspsPass)
{
    EXPECT_TRUE(check_contour(project(fixtures::circle())).pass);
}

TEST(Contour, MixedChiralityFails)
{
    const auto d = std::get<PlanarDiagram>(preset("mixed_chirality_contour"));
    const ContourVerdict v = check_contour(d);
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.cusp_count, 2u);
    EXPECT_FALSE(v.violations.empty());
    EXPECT_FALSE(check_contour(contour_with_cusps(4, true)).pass);
}

TEST(Contour, ParityDependsOnNeighbourhood)
{
    const PlanarDiagram three = contour_with_cusps(3, false);
    ASSERT_EQ(three.cusps.size(), 3u);
    EXPECT_TRUE(check_contour(three, false).pass);
    EXPECT_FALSE(check_contour(three, true).pass);
    const PlanarDiagram two = contour_with_cusps(2, false);
    EXPECT_TRUE(check_contour(two, true).pass);
    EXPECT_FALSE(check_contour(two, false).pass);
}

TEST(Contour, InvariantUnderRotationAndRelabel)
{
    const auto d = std::get<PlanarDiagram>(preset("mixed_chirality_contour"));
    const ContourVerdict base = check_contour(d);
    // rotate in the plane
    for (const double a : {0.4, 2.0}) {
        std::vector<Point3> pts;
        for (const Point3& p : d.strands[0]) {
            pts.push_back({std::cos(a) * p.x - std::sin(a) * p.y, std::sin(a) * p.x + std::cos(a) * p.y, p.z});
        }
        std::vector<std::size_t> marks;
        for (const auto& c : d.cusps) marks.push_back(c.vertex);
        const ContourVerdict v = check_contour(project_strands({pts}, {marks}));
        EXPECT_EQ(v.pass, base.pass);
        EXPECT_EQ(v.cusp_count, base.cusp_count);
    }
    // cyclic relabel of the start point
    const auto& s = d.strands[0];
    const std::size_t shift = 7;
    std::vector<Point3> pts(s.begin() + shift, s.end());
    pts.insert(pts.end(), s.begin(), s.begin() + shift);
    std::vector<std::size_t> marks;
    for (const auto& c : d.cusps) marks.push_back((c.vertex + s.size() - shift) % s.size());
    const ContourVerdict v = check_contour(project_strands({pts}, {marks}));
    EXPECT_EQ(v.pass, base.pass);
    EXPECT_EQ(v.chiralities.size(), base.chiralities.size());
}

TEST(Exclude, FigureEightRulesOutSphereAndKnottedTorus)
{
    DiagramFacts f;
    f.knot_type = "unknot";
    f.crossings = 1;
    const auto ex = exclude_surfaces(writhe(preset_curve("figeight_w1")), f);
    EXPECT_TRUE(excludes(ex, "sphere"));
    EXPECT_TRUE(excludes(ex, "knotted torus"));
    EXPECT_FALSE(excludes(ex, "unknotted torus"));
}

TEST(Exclude, ZeroWritheNoDeclarations)
{
    EXPECT_TRUE(exclude_surfaces(0, DiagramFacts{}).empty());
}

TEST(Exclude, SmallTrefoilDiagramRulesOutUnknottedTorus)
{
    DiagramFacts f;
    f.knot_type = "trefoil";
    f.crossings = 3;
    f.cusps = 0;
    const auto ex = exclude_surfaces(3, f);
    EXPECT_TRUE(excludes(ex, "unknotted torus"));
    EXPECT_FALSE(excludes(ex, "knotted torus"));
    // six or more crossings and cusps: the crossing rule is silent
    f.crossings = 4;
    f.cusps = 2;
    EXPECT_FALSE(excludes(exclude_surfaces(3, f), "unknotted torus"));
}

TEST(Exclude, TrefoilWithoutCrossingCountIsInsufficient)
{
    DiagramFacts f;
    f.knot_type = "trefoil";
    try {
        exclude_surfaces(3, f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientFacts);
    }
}

TEST(Exclude, SphereIffNonzeroWrithe)
{
    for (int w = -3; w <= 3; ++w) EXPECT_EQ(excludes(exclude_surfaces(w, DiagramFacts{}), "sphere"), w != 0) << w;
}
