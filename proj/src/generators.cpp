#include "profilekit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace profilekit {

namespace {

constexpr double kPi = std::numbers::pi;

TriMesh checked_mesh(std::vector<Point3> verts, std::vector<Face> faces, const char* what)
{
    try {
        return build_mesh(std::move(verts), std::move(faces));
    } catch (const Error& e) {
        throw Error(ErrorCode::ResolutionTooLow, std::string(what) + ": " + e.what());
    }
}

}  // namespace

TriMesh sphere_mesh(int subdivisions, double radius)
{
    if (subdivisions < 0 || subdivisions > 7) throw Error(ErrorCode::InvalidInput, "sphere subdivisions out of range");
    std::vector<Point3> verts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<Face> faces{{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoints;
        const auto midpoint = [&](std::size_t a, std::size_t b) {
            const auto key = std::minmax(a, b);
            const auto it = midpoints.find(key);
            if (it != midpoints.end()) return it->second;
            verts.push_back(normalized((verts[a] + verts[b]) * 0.5));
            midpoints.emplace(key, verts.size() - 1);
            return verts.size() - 1;
        };
        std::vector<Face> next;
        next.reserve(faces.size() * 4);
        for (const Face& f : faces) {
            const std::size_t ab = midpoint(f[0], f[1]);
            const std::size_t bc = midpoint(f[1], f[2]);
            const std::size_t ca = midpoint(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({ab, f[1], bc});
            next.push_back({ca, bc, f[2]});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    for (Point3& p : verts) p *= radius;
    return checked_mesh(std::move(verts), std::move(faces), "sphere");
}

namespace {

Point3 torus_point(double R, double a, double theta, double phi)
{
    const double rho = R + a * std::cos(phi);
    return {rho * std::cos(theta), rho * std::sin(theta), a * std::sin(phi)};
}

void check_torus_params(const GeneratorParams& p)
{
    if (!(p.minor_radius > 0.0) || !(p.minor_radius < p.major_radius)) {
        throw Error(ErrorCode::InvalidInput, "torus needs 0 < minor radius < major radius");
    }
    if (p.core_samples < 3 || p.tube_samples < 3) throw Error(ErrorCode::ResolutionTooLow, "torus grid too coarse");
}

}  // namespace

TriMesh torus_mesh(const GeneratorParams& params)
{
    check_torus_params(params);
    const std::size_t nt = params.core_samples;
    const std::size_t np = params.tube_samples;
    std::vector<Point3> verts;
    verts.reserve(nt * np);
    // Vertex rings sit on phi = 0 and phi = pi (when np is even), so the equators are edge cycles.
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            verts.push_back(torus_point(params.major_radius, params.minor_radius, 2.0 * kPi * i / nt,
                                        2.0 * kPi * j / np));
        }
    }
    const auto id = [&](std::size_t i, std::size_t j) { return (i % nt) * np + (j % np); };
    std::vector<Face> faces;
    faces.reserve(2 * nt * np);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return checked_mesh(std::move(verts), std::move(faces), "torus");
}

namespace {

/// Boundary of a thickened planar slab: g square cells in a row, each pierced by a round hole.
/// The top and bottom sheets are graphs z = +-h(x,y) over the planar cells, meeting at z = 0
/// along the outer rectangle and the hole circles.
TriMesh slab_surface(int genus, const GeneratorParams& params)
{
    constexpr double kHalfWidth = 1.25;
    constexpr double kPitch = 2.5;
    constexpr double kHoleRadius = 0.6;
    constexpr double kThickness = 0.35;
    constexpr double kRamp = 0.3;

    std::size_t around = std::max<std::size_t>(16, 2 * params.tube_samples);
    around = (around + 7) / 8 * 8;  // corners of the square must be ring vertices
    const std::size_t rings = 6;

    const double x_min = -kHalfWidth;
    const double x_max = kPitch * (genus - 1) + kHalfWidth;
    const auto boundary_distance = [&](double x, double y) {
        double d = std::min({x - x_min, x_max - x, kHalfWidth - y, y + kHalfWidth});
        for (int k = 0; k < genus; ++k) {
            d = std::min(d, std::hypot(x - kPitch * k, y) - kHoleRadius);
        }
        return std::max(0.0, d);
    };

    // Planar vertices, deduplicated along shared cell sides.
    std::vector<Vec2> planar;
    std::map<std::pair<long long, long long>, std::size_t> lookup;
    const auto planar_id = [&](Vec2 p) {
        const auto key = std::make_pair(std::llround(p.x * 1e9), std::llround(p.y * 1e9));
        const auto it = lookup.find(key);
        if (it != lookup.end()) return it->second;
        planar.push_back(p);
        lookup.emplace(key, planar.size() - 1);
        return planar.size() - 1;
    };

    std::vector<std::array<std::size_t, 3>> planar_tris;
    for (int k = 0; k < genus; ++k) {
        const double cx = kPitch * k;
        std::vector<std::vector<std::size_t>> grid(rings + 1, std::vector<std::size_t>(around));
        for (std::size_t j = 0; j < around; ++j) {
            const double phi = 2.0 * kPi * j / around;
            const double c = std::cos(phi);
            const double s = std::sin(phi);
            const double reach = kHalfWidth / std::max(std::abs(c), std::abs(s));
            for (std::size_t i = 0; i <= rings; ++i) {
                const double u = static_cast<double>(i) / rings;
                const double rho = (1.0 - u) * kHoleRadius + u * reach;
                Vec2 p{cx + rho * c, rho * s};
                if (i == rings) {
                    // Snap the square exactly so neighbouring cells share their side vertices.
                    if (std::abs(c) >= std::abs(s)) {
                        p.x = cx + (c > 0 ? kHalfWidth : -kHalfWidth);
                    } else {
                        p.y = s > 0 ? kHalfWidth : -kHalfWidth;
                    }
                    if (std::abs(std::abs(c) - std::abs(s)) < 1e-12) {
                        p = {cx + (c > 0 ? kHalfWidth : -kHalfWidth), s > 0 ? kHalfWidth : -kHalfWidth};
                    }
                }
                grid[i][j] = planar_id(p);
            }
        }
        for (std::size_t i = 0; i < rings; ++i) {
            for (std::size_t j = 0; j < around; ++j) {
                const std::size_t jn = (j + 1) % around;
                planar_tris.push_back({grid[i][j], grid[i + 1][j], grid[i + 1][jn]});
                planar_tris.push_back({grid[i][j], grid[i + 1][jn], grid[i][jn]});
            }
        }
    }

    // Lift: boundary vertices once at z = 0, interior vertices on both sheets.
    std::vector<Point3> verts;
    std::vector<std::size_t> top(planar.size());
    std::vector<std::size_t> bottom(planar.size());
    for (std::size_t v = 0; v < planar.size(); ++v) {
        const double d = boundary_distance(planar[v].x, planar[v].y);
        if (d < 1e-9) {
            top[v] = bottom[v] = verts.size();
            verts.push_back({planar[v].x, planar[v].y, 0.0});
        } else {
            const double h = kThickness * std::sqrt(std::min(d, kRamp) / kRamp);
            top[v] = verts.size();
            verts.push_back({planar[v].x, planar[v].y, h});
            bottom[v] = verts.size();
            verts.push_back({planar[v].x, planar[v].y, -h});
        }
    }
    std::vector<Face> faces;
    faces.reserve(2 * planar_tris.size());
    for (const auto& t : planar_tris) {
        faces.push_back({top[t[0]], top[t[1]], top[t[2]]});
        faces.push_back({bottom[t[0]], bottom[t[2]], bottom[t[1]]});
    }
    return checked_mesh(std::move(verts), std::move(faces), "genus surface");
}

}  // namespace

TriMesh standard_surface(int genus, const GeneratorParams& params)
{
    if (genus < 0) throw Error(ErrorCode::InvalidInput, "genus must be >= 0");
    TriMesh mesh = [&] {
        if (genus == 0) return sphere_mesh(params.sphere_subdivisions);
        if (genus == 1) return torus_mesh(params);
        return slab_surface(genus, params);
    }();
    if (mesh.euler_characteristic() != 2 - 2 * genus) {
        std::ostringstream msg;
        msg << "generated surface has Euler characteristic " << mesh.euler_characteristic();
        throw Error(ErrorCode::Internal, msg.str());
    }
    return mesh;
}

CurveOnSurface torus_with_curve(int p, int q, const GeneratorParams& params)
{
    if (!((p == 1 && q == 0) || (p == 0 && q == 1) || std::gcd(p, q) == 1)) {
        throw Error(ErrorCode::InvalidInput, "(p,q) must be coprime, or (1,0) / (0,1)");
    }
    auto host = std::make_shared<const TriMesh>(torus_mesh(params));
    const std::size_t nt = params.core_samples;
    const std::size_t np = params.tube_samples;

    // Work in grid units: U = theta / dtheta, V = phi / dphi. The line starts off every grid
    // line and diagonal so each event is a transverse edge crossing.
    const double u0 = 0.3137;
    const double v0 = 0.4219;
    const double du = static_cast<double>(p) * nt;
    // phi runs backwards in grid units: with phi measured upward from the outer equator and the
    // outward normal, this is what makes the (1,1) curve have surface linking +1.
    const double dv = -static_cast<double>(q) * np;

    std::vector<double> events;
    const auto add_events = [&](double start, double rate) {
        if (rate == 0.0) return;
        const double lo = std::min(start, start + rate);
        const double hi = std::max(start, start + rate);
        for (long long k = static_cast<long long>(std::ceil(lo)); k <= static_cast<long long>(std::floor(hi)); ++k) {
            const double t = (static_cast<double>(k) - start) / rate;
            if (t >= 0.0 && t < 1.0) events.push_back(t);
        }
    };
    add_events(u0, du);
    add_events(v0, dv);
    add_events(u0 - v0, du - dv);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                 events.end());
    if (events.size() < 4) throw Error(ErrorCode::ResolutionTooLow, "curve crosses too few faces");

    const auto vertex = [&](long long i, long long j) {
        const auto wrap = [](long long x, std::size_t n) {
            const auto m = static_cast<long long>(n);
            return static_cast<std::size_t>(((x % m) + m) % m);
        };
        return host->vertices()[wrap(i, nt) * np + wrap(j, np)];
    };

    std::vector<Point3> samples;
    std::vector<std::size_t> anchors;
    for (std::size_t e = 0; e < events.size(); ++e) {
        const double t0 = events[e];
        const double t1 = e + 1 < events.size() ? events[e + 1] : events[0] + 1.0;
        const double t = 0.5 * (t0 + t1);
        const double U = u0 + du * t;
        const double V = v0 + dv * t;
        const auto i = static_cast<long long>(std::floor(U));
        const auto j = static_cast<long long>(std::floor(V));
        const double u = U - static_cast<double>(i);
        const double v = V - static_cast<double>(j);
        const std::size_t cell = (static_cast<std::size_t>(((i % static_cast<long long>(nt)) + nt) % nt)) * np +
                                 static_cast<std::size_t>(((j % static_cast<long long>(np)) + np) % np);
        if (u >= v) {
            samples.push_back(vertex(i, j) * (1.0 - u) + vertex(i + 1, j) * (u - v) + vertex(i + 1, j + 1) * v);
            anchors.push_back(2 * cell);
        } else {
            samples.push_back(vertex(i, j) * (1.0 - v) + vertex(i, j + 1) * (v - u) + vertex(i + 1, j + 1) * u);
            anchors.push_back(2 * cell + 1);
        }
    }
    try {
        return build_curve_on_surface(build_curve(std::move(samples)), std::move(anchors), std::move(host));
    } catch (const Error& e) {
        throw Error(ErrorCode::ResolutionTooLow, e.what());
    }
}

TriMesh tube_around_knot(const PLCurve3& core, double r, const GeneratorParams& params)
{
    const double mfs = min_feature_size(core);
    const double limit = 0.5 * mfs;
    if (r == 0.0) r = params.tube_radius > 0.0 ? params.tube_radius : 0.4 * mfs;
    if (!(r > 0.0) || r >= limit) {
        std::ostringstream msg;
        msg << "tube radius " << r << " must lie in (0, " << limit << ")";
        throw Error(ErrorCode::TubeTooFat, msg.str());
    }
    const std::size_t n = core.size();
    const std::size_t m = std::max<std::size_t>(3, params.tube_samples);

    std::vector<Vec3> tangents(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ip = static_cast<std::ptrdiff_t>(i);
        tangents[i] = normalized(core.at_wrapped(ip + 1) - core.at_wrapped(ip - 1));
    }

    // Double-reflection rotation-minimising frame (Wang, Juttler, Zheng, Liu 2008).
    std::vector<Vec3> ref(n + 1);
    {
        const Vec3 t0 = tangents[0];
        const Vec3 helper = std::abs(t0.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        ref[0] = normalized(cross(cross(t0, helper), t0));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ni = (i + 1) % n;
        const Vec3 v1 = core[ni] - core[i];
        const double c1 = dot(v1, v1);
        const Vec3 r_l = ref[i] - v1 * (2.0 / c1 * dot(v1, ref[i]));
        const Vec3 t_l = tangents[i] - v1 * (2.0 / c1 * dot(v1, tangents[i]));
        const Vec3 v2 = tangents[ni] - t_l;
        const double c2 = dot(v2, v2);
        ref[i + 1] = c2 > 0.0 ? r_l - v2 * (2.0 / c2 * dot(v2, r_l)) : r_l;
        ref[i + 1] = normalized(ref[i + 1] - tangents[ni] * dot(ref[i + 1], tangents[ni]));
    }
    // Spread the holonomy so the frame closes up.
    const double holonomy = std::atan2(dot(cross(ref[0], ref[n]), tangents[0]), dot(ref[0], ref[n]));
    std::vector<Vec3> u(n);
    std::vector<Vec3> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = -holonomy * static_cast<double>(i) / static_cast<double>(n);
        const RigidMotion spin = rotation_about(tangents[i], angle, Point3{});
        u[i] = spin.rotate(ref[i]);
        w[i] = cross(tangents[i], u[i]);
    }

    std::vector<Point3> verts;
    verts.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double a = 2.0 * kPi * j / m;
            verts.push_back(core[i] + (u[i] * std::cos(a) + w[i] * std::sin(a)) * r);
        }
    }
    const auto id = [&](std::size_t i, std::size_t j) { return (i % n) * m + (j % m); };
    std::vector<Face> faces;
    faces.reserve(2 * n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            faces.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
            faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    }
    // Outward orientation check on the first face.
    {
        const Face& f = faces[0];
        const Vec3 nrm = cross(verts[f[1]] - verts[f[0]], verts[f[2]] - verts[f[0]]);
        const Point3 centroid = (verts[f[0]] + verts[f[1]] + verts[f[2]]) / 3.0;
        if (dot(nrm, centroid - core[0]) < 0.0) {
            for (Face& g : faces) std::swap(g[1], g[2]);
        }
    }
    return checked_mesh(std::move(verts), std::move(faces), "tube");
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

template <typename F>
std::vector<Point3> sample_closed(std::size_t n, double phase, F&& f)
{
    std::vector<Point3> pts;
    pts.reserve(n);
    for (std::size_t k = 0; k < n; ++k) pts.push_back(f(2.0 * kPi * (static_cast<double>(k) + phase) / n));
    return pts;
}

// Figure-eight shadow with one crossing at the origin, where s = pi/2 (z = +1) passes over
// s = 3pi/2 (z = -1). The over direction there is (-1, -1) and the under direction (1, -1):
// cross2((-1,-1), (1,-1)) = 2 > 0, a positive crossing.
PLCurve3 figeight_w1()
{
    return build_curve(sample_closed(64, 0.5, [](double s) {
        return Point3{std::cos(s), 0.5 * std::sin(2.0 * s), std::sin(s)};
    }));
}

// Standard three-crossing trefoil; every crossing has the same sign.
PLCurve3 trefoil_standard()
{
    return build_curve(sample_closed(96, 0.0, [](double t) {
        return Point3{std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t),
                      -std::sin(3.0 * t)};
    }));
}

// Lips curve (-2cos s, sin^3 s, sin s): near s = 0 it is (t^2, t^3, t) up to a shift and
// scaling of x, and near s = pi the same model rotated by pi. Both cusps turn right.
PLCurve3 model_cusp()
{
    constexpr std::size_t n = 64;
    return build_curve(sample_closed(n, 0.0,
                                     [](double s) {
                                         const double sn = std::sin(s);
                                         return Point3{-2.0 * std::cos(s), sn * sn * sn, sn};
                                     }),
                       {0, n / 2});
}

// Like model_cusp, but y = sin^3 s cos s: the cusp at s = pi is mirrored, so it turns left.
// The shadow has one crossing at the origin (s = pi/2 over s = 3pi/2).
PLCurve3 mixed_chirality_curve()
{
    constexpr std::size_t n = 66;
    return build_curve(sample_closed(n, 0.0,
                                     [](double s) {
                                         const double sn = std::sin(s);
                                         return Point3{-2.0 * std::cos(s), sn * sn * sn * std::cos(s), sn};
                                     }),
                       {0, n / 2});
}

}  // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"figeight_w1", "trefoil_standard", "mixed_chirality_contour",
                                                "model_cusp"};
    return names;
}

PLCurve3 preset_curve(std::string_view name)
{
    if (name == "figeight_w1") return figeight_w1();
    if (name == "trefoil_standard") return trefoil_standard();
    if (name == "model_cusp") return model_cusp();
    if (name == "mixed_chirality_contour") return mixed_chirality_curve();
    throw Error(ErrorCode::UnknownPreset, std::string(name));
}

Preset preset(std::string_view name)
{
    if (name == "mixed_chirality_contour") return project(mixed_chirality_curve());
    return preset_curve(name);
}

std::optional<std::string> preset_knot_type(std::string_view name)
{
    if (name == "trefoil_standard") return "trefoil";
    if (name == "figeight_w1" || name == "model_cusp" || name == "mixed_chirality_contour") return "unknot";
    return std::nullopt;
}

}  // namespace profilekit
