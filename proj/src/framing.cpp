#include "profilekit/framing.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace profilekit {

std::string_view to_string(FramingKind k) { return k == FramingKind::Blackboard ? "blackboard" : "surface"; }

namespace {

/// Horizontal part of a unit tangent below this is treated as vertical.
constexpr double kVerticalTolerance = 1e-6;

Vec3 lift(const Vec2& v) { return {v.x, v.y, 0.0}; }

}  // namespace

FramedCurve blackboard_framing(const PLCurve3& curve)
{
    const std::size_t n = curve.size();
    std::vector<Vec3> side_normal(n);  // left normal of the projected tangent
    for (std::size_t i = 0; i < n; ++i) {
        const auto ip = static_cast<std::ptrdiff_t>(i);
        const Vec3 in = curve[i] - curve.at_wrapped(ip - 1);
        const Vec3 out = curve.at_wrapped(ip + 1) - curve[i];
        Vec2 h;
        if (curve.is_cusp(i)) {
            h = xy(in);
            if (norm(h) <= kVerticalTolerance * norm(in)) h = -xy(out);
        } else {
            const Vec3 t = normalized(in) + normalized(out);
            h = xy(t);
            if (norm(h) <= kVerticalTolerance * norm(t)) {
                std::ostringstream msg;
                msg << "vertical tangent at unmarked sample " << i;
                throw Error(ErrorCode::VerticalTangent, msg.str());
            }
        }
        const double len = norm(h);
        side_normal[i] = lift(left_perp(Vec2{h.x / len, h.y / len}));
    }

    std::size_t start = 0;
    while (start < n && curve.is_cusp(start)) ++start;
    if (start == n) throw Error(ErrorCode::InvalidInput, "every sample is marked as a cusp");

    std::vector<Vec3> normals(n);
    normals[start] = side_normal[start];
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t i = (start + k) % n;
        const std::size_t prev = (i + n - 1) % n;
        normals[i] = dot(side_normal[i], normals[prev]) >= 0.0 ? side_normal[i] : -side_normal[i];
    }

    // The field may only switch sides of the projection next to a cusp mark.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        if (next == start) break;
        const bool side_here = dot(normals[i], side_normal[i]) > 0.0;
        const bool side_next = dot(normals[next], side_normal[next]) > 0.0;
        if (side_here != side_next && !curve.is_cusp(i) && !curve.is_cusp(next)) {
            std::ostringstream msg;
            msg << "projected tangent reverses between unmarked samples " << i << " and " << next;
            throw Error(ErrorCode::VerticalTangent, msg.str());
        }
    }
    const std::size_t last = (start + n - 1) % n;
    if (dot(normals[last], normals[start]) <= 0.0) {
        throw Error(ErrorCode::FramingNotClosed, "blackboard framing does not close up (odd number of cusps)");
    }
    return FramedCurve{curve, std::move(normals), FramingKind::Blackboard};
}

FramedCurve surface_framing(const CurveOnSurface& c)
{
    const TriMesh& mesh = *c.host;
    const double tol = kEmbedTolerance * mesh.diameter();
    std::vector<Vec3> normals;
    normals.reserve(c.curve.size());
    for (std::size_t i = 0; i < c.curve.size(); ++i) {
        const std::size_t f = c.anchors.at(i);
        const auto t = mesh.triangle(f);
        if (point_triangle_distance(c.curve[i], t[0], t[1], t[2]) > tol) {
            std::ostringstream msg;
            msg << "sample " << i << " is off its anchor face";
            throw Error(ErrorCode::AnchorMismatch, msg.str());
        }
        normals.push_back(mesh.face_normals()[f]);
    }
    return FramedCurve{c.curve, std::move(normals), FramingKind::Surface};
}

PLCurve3 push_off(const FramedCurve& f, double epsilon)
{
    const double limit = 0.5 * min_feature_size(f.curve);
    if (!(epsilon > 0.0) || epsilon >= limit) {
        std::ostringstream msg;
        msg << "push-off distance " << epsilon << " outside (0, " << limit << ")";
        throw Error(ErrorCode::InvalidInput, msg.str());
    }
    std::vector<Point3> pts;
    pts.reserve(f.curve.size());
    for (std::size_t i = 0; i < f.curve.size(); ++i) pts.push_back(f.curve[i] + f.normals[i] * epsilon);
    PLCurve3 pushed = [&] {
        try {
            return build_curve(std::move(pts), f.curve.cusp_marks());
        } catch (const Error& e) {
            throw Error(ErrorCode::PushOffCollision, e.what());
        }
    }();
    if (curve_distance(pushed, f.curve) <= kEmbedTolerance * f.curve.diameter()) {
        throw Error(ErrorCode::PushOffCollision, "push-off meets the original curve");
    }
    return pushed;
}

double surface_clearance(const CurveOnSurface& c)
{
    const TriMesh& mesh = *c.host;
    const auto faces = mesh.faces();
    std::vector<std::array<Point3, 3>> tris(faces.size());
    std::vector<std::pair<Point3, Point3>> boxes(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        tris[f] = mesh.triangle(f);
        Point3 lo = tris[f][0];
        Point3 hi = tris[f][0];
        for (const Point3& p : tris[f]) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
        boxes[f] = {lo, hi};
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.curve.size(); ++i) {
        const Point3& p = c.curve[i];
        const std::size_t anchor = c.anchors[i];
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const auto& [lo, hi] = boxes[f];
            const double dx = std::max({0.0, lo.x - p.x, p.x - hi.x});
            const double dy = std::max({0.0, lo.y - p.y, p.y - hi.y});
            const double dz = std::max({0.0, lo.z - p.z, p.z - hi.z});
            if (dx * dx + dy * dy + dz * dz >= best * best) continue;
            if (mesh.faces_share_vertex(anchor, f)) continue;
            best = std::min(best, point_triangle_distance(p, tris[f][0], tris[f][1], tris[f][2]));
        }
    }
    return best;
}

namespace {

PushOffLinking gated_linking(const FramedCurve& framed, double epsilon, const RetryPolicy& retry)
{
    const int coarse = linking_number(push_off(framed, epsilon), framed.curve, retry);
    const int fine = linking_number(push_off(framed, 0.5 * epsilon), framed.curve, retry);
    if (coarse != fine) {
        std::ostringstream msg;
        msg << "linking with push-off changes from " << coarse << " to " << fine << " when epsilon is halved";
        throw Error(ErrorCode::UnstableEpsilon, msg.str());
    }
    return {coarse, epsilon};
}

}  // namespace

PushOffLinking surface_linking_details(const CurveOnSurface& c, const LinkingOptions& options)
{
    const double epsilon =
        options.epsilon.value_or(0.25 * std::min(surface_clearance(c), min_feature_size(c.curve)));
    return gated_linking(surface_framing(c), epsilon, options.retry);
}

int surface_linking(const CurveOnSurface& c, const LinkingOptions& options)
{
    return surface_linking_details(c, options).value;
}

PushOffLinking writhe_definitional_details(const PLCurve3& curve, const LinkingOptions& options)
{
    const double epsilon = options.epsilon.value_or(0.25 * min_feature_size(curve));
    return gated_linking(blackboard_framing(curve), epsilon, options.retry);
}

int writhe_definitional(const PLCurve3& curve, const LinkingOptions& options)
{
    return writhe_definitional_details(curve, options).value;
}

}  // namespace profilekit
