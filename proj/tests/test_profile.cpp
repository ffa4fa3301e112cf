#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "profilekit/framing.hpp"
#include "profilekit/generators.hpp"
#include "profilekit/obstruction.hpp"
#include "profilekit/profile.hpp"

using namespace profilekit;

namespace {

TriMesh tilted_torus(double degrees)
{
    return transform(torus_mesh(), rotation_about({1, 0, 0}, degrees * std::numbers::pi / 180.0, {0, 0, 0}));
}

void expect_samples_on_fold_edges(const std::vector<ProfileCurve>& profiles)
{
    for (const ProfileCurve& p : profiles) {
        const TriMesh& m = *p.curve.host;
        ASSERT_EQ(p.fold_edges.size(), p.curve.curve.size());
        for (std::size_t i = 0; i < p.fold_edges.size(); ++i) {
            const Edge& e = m.edges()[p.fold_edges[i]];
            const double z0 = m.face_normals()[e.faces[0]].z;
            const double z1 = m.face_normals()[e.faces[1]].z;
            EXPECT_LT(z0 * z1, 0.0);
            const Point3 mid = (m.vertices()[e.v0] + m.vertices()[e.v1]) * 0.5;
            EXPECT_EQ(mid, p.curve.curve[i]);
        }
    }
}

}  // namespace

TEST(Extract, SphereHasOneComponent)
{
    const auto profiles = extract_profile(sphere_mesh(3));
    ASSERT_EQ(profiles.size(), 1u);
    expect_samples_on_fold_edges(profiles);
    EXPECT_TRUE(detect_cusps(profiles[0]).empty());
}

TEST(Extract, TorusHasTwo)
{
    const auto profiles = extract_profile(torus_mesh());
    ASSERT_EQ(profiles.size(), 2u);
    expect_samples_on_fold_edges(profiles);
    for (const auto& p : profiles) EXPECT_TRUE(detect_cusps(p).empty());
}

TEST(Extract, TrefoilTubeHasTwo)
{
    const TriMesh tube = tube_around_knot(preset_curve("trefoil_standard"), 0.0);
    const auto profiles = extract_profile(tube);
    ASSERT_EQ(profiles.size(), 2u);
    expect_samples_on_fold_edges(profiles);
}

TEST(Extract, ComponentsAreEdgeDisjointCycles)
{
    const auto profiles = extract_profile(standard_surface(3));
    ASSERT_EQ(profiles.size(), 4u);
    std::vector<bool> seen(profiles[0].curve.host->edges().size(), false);
    for (const auto& p : profiles) {
        for (const std::size_t e : p.fold_edges) {
            EXPECT_FALSE(seen[e]);
            seen[e] = true;
        }
        // consecutive fold edges share a vertex, closing up
        const auto& edges = p.curve.host->edges();
        for (std::size_t i = 0; i < p.fold_edges.size(); ++i) {
            const Edge& a = edges[p.fold_edges[i]];
            const Edge& b = edges[p.fold_edges[(i + 1) % p.fold_edges.size()]];
            EXPECT_TRUE(a.v0 == b.v0 || a.v0 == b.v1 || a.v1 == b.v0 || a.v1 == b.v1);
        }
    }
}

TEST(Extract, AnchorsFaceUp)
{
    for (const auto& p : extract_profile(tube_around_knot(preset_curve("trefoil_standard"), 0.0))) {
        for (const std::size_t f : p.curve.anchors) EXPECT_GT(p.curve.host->face_normals()[f].z, 0.0);
    }
}

TEST(Extract, DeterministicForSeed)
{
    const TriMesh m = tilted_torus(60);
    const auto a = extract_profile(m, 5);
    const auto b = extract_profile(m, 5);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        ASSERT_EQ(a[k].curve.curve.size(), b[k].curve.curve.size());
        for (std::size_t i = 0; i < a[k].curve.curve.size(); ++i) EXPECT_EQ(a[k].curve.curve[i], b[k].curve.curve[i]);
    }
}

TEST(Extract, VerticalFacesTriggerPerturbation)
{
    // A cube has vertical faces; extraction must rotate it slightly and report the new host.
    std::vector<Point3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    std::vector<Face> f{{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                        {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
    const auto cube = std::make_shared<const TriMesh>(build_mesh(v, f));
    const auto profiles = extract_profile(cube);
    ASSERT_FALSE(profiles.empty());
    EXPECT_NE(profiles[0].curve.host, cube);
    for (const auto& p : profiles) {
        for (const std::size_t e : p.fold_edges) EXPECT_TRUE(is_fold_edge(*p.curve.host, e));
    }
}

TEST(Cusps, TiltedTorusEvenAndUniform)
{
    const auto profiles = extract_profile(tilted_torus(60));
    ASSERT_EQ(profiles.size(), 2u);
    std::size_t most = 0;
    for (const auto& p : profiles) {
        const auto cusps = detect_cusps(p);
        most = std::max(most, cusps.size());
        EXPECT_EQ(cusps.size() % 2, 0u);
        for (const auto& c : cusps) EXPECT_EQ(c.second, cusps.front().second);
        // marks on the curve are the detected cusps
        EXPECT_EQ(p.curve.curve.cusp_marks().size(), cusps.size());
    }
    EXPECT_GE(most, 2u);
}

TEST(Cusps, ChiralityFollowsOrientation)
{
    const auto profiles = extract_profile(tilted_torus(60));
    for (const auto& p : profiles) {
        const auto fwd = detect_cusps(p);
        if (fwd.empty()) continue;
        const PLCurve3 r = p.curve.curve.reversed();
        const auto marks = find_projected_reversals(r.samples());
        ASSERT_EQ(marks.size(), fwd.size());
        const Chirality back = cusp_chirality(r.samples(), marks.front());
        EXPECT_NE(back, fwd.front().second);
    }
}

TEST(Cusps, CoarseVerticalRunIsAmbiguous)
{
    // A zig-zag whose middle climbs almost straight up over 5 segments.
    std::vector<Point3> pts{{0, 0, 0}, {1, 0, 0}, {1.001, 0, 1}, {1.002, 0, 2}, {1.003, 0, 3},
                            {1.004, 0, 4}, {1.005, 0, 5}, {0, 1, 5}, {-1, 0.5, 2}};
    EXPECT_THROW(find_projected_reversals(pts), Error);
}

TEST(Summary, StandardSurfacesAreUnlinks)
{
    for (int g = 0; g <= 3; ++g) {
        const ProfileLinkSummary s = profile_link_summary(extract_profile(standard_surface(g)));
        EXPECT_EQ(s.components, static_cast<std::size_t>(g + 1));
        for (std::size_t i = 0; i < s.components; ++i) {
            EXPECT_EQ(s.writhes[i], 0);
            for (std::size_t j = 0; j < s.components; ++j) EXPECT_EQ(s.linking[i][j], 0);
        }
    }
}

TEST(Summary, TrefoilTubeLinkedByCoreWrithe)
{
    const PLCurve3 core = preset_curve("trefoil_standard");
    const int w_core = writhe(core);
    const ProfileLinkSummary s = profile_link_summary(extract_profile(tube_around_knot(core, 0.0)));
    ASSERT_EQ(s.components, 2u);
    EXPECT_EQ(s.linking[0][1], s.linking[1][0]);
    EXPECT_EQ(std::abs(s.linking[0][1]), std::abs(w_core));
    for (const int w : s.writhes) EXPECT_EQ(w, w_core);
}

TEST(Summary, ProfilesSatisfyFramingCoincidence)
{
    for (int g = 0; g <= 3; ++g) {
        for (const auto& p : extract_profile(standard_surface(g))) {
            EXPECT_EQ(writhe_definitional(p.curve.curve), surface_linking(p.curve)) << "genus " << g;
        }
    }
}
