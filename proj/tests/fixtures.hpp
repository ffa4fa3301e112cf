#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "profilekit/generators.hpp"
#include "profilekit/geom.hpp"
#include "profilekit/profile.hpp"

namespace fixtures {

using namespace profilekit;

inline std::vector<Point3> circle_points(std::size_t n, double r = 1.0, double z = 0.0, double cx = 0.0)
{
    return oracle::sample(n, [=](double t) { return Point3{cx + r * std::cos(t), r * std::sin(t), z}; });
}

inline PLCurve3 circle(std::size_t n = 64, double r = 1.0, double z = 0.0, double cx = 0.0)
{
    return build_curve(circle_points(n, r, z, cx));
}

/// Unit circle in the xy-plane and a tilted circle threading it once.
inline std::pair<PLCurve3, PLCurve3> hopf(std::size_t n = 64)
{
    PLCurve3 a = circle(n);
    PLCurve3 b = build_curve(oracle::sample(n, [](double t) {
        return Point3{1.0 + std::cos(t), 0.2 * std::sin(t), std::sin(t)};
    }));
    return {std::move(a), std::move(b)};
}

inline std::vector<Point3> points(const PLCurve3& c)
{
    return {c.samples().begin(), c.samples().end()};
}

struct NamedCurve {
    std::string name;
    PLCurve3 curve;
};

/// Cusp-free curves with non-degenerate vertical projections.
inline std::vector<NamedCurve> corpus_curves()
{
    std::vector<NamedCurve> out;
    out.push_back({"figeight_w1", preset_curve("figeight_w1")});
    out.push_back({"trefoil_standard", preset_curve("trefoil_standard")});
    out.push_back({"circle", circle()});
    out.push_back({"tilted_ellipse", build_curve(oracle::sample(48, [](double t) {
                       return Point3{2.0 * std::cos(t), std::sin(t), 0.5 * std::sin(t)};
                   }))});
    for (const auto& [p, q] : std::vector<std::pair<int, int>>{
             {1, 0}, {1, 1}, {2, 3}, {3, 2}, {2, 5}, {1, -1}, {1, 2}, {3, -2}, {2, 1}, {3, 1}, {1, 3}}) {
        out.push_back({"torus(" + std::to_string(p) + "," + std::to_string(q) + ")", torus_with_curve(p, q).curve});
    }
    for (int g = 0; g <= 3; ++g) {
        const auto profiles = extract_profile(standard_surface(g));
        for (const auto& pc : profiles) {
            out.push_back({"genus" + std::to_string(g) + "/profile" + std::to_string(pc.component_id), pc.curve.curve});
        }
    }
    return out;
}

}  // namespace fixtures
