#include "profilekit/geom.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace profilekit {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotEmbedded: return "NotEmbedded";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::UnmarkedReversal: return "UnmarkedReversal";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorCode::AnchorMismatch: return "AnchorMismatch";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::PersistentDegeneracy: return "PersistentDegeneracy";
    case ErrorCode::CurvesIntersect: return "CurvesIntersect";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::VerticalTangent: return "VerticalTangent";
    case ErrorCode::FramingNotClosed: return "FramingNotClosed";
    case ErrorCode::PushOffCollision: return "PushOffCollision";
    case ErrorCode::UnstableEpsilon: return "UnstableEpsilon";
    case ErrorCode::AmbiguousCusp: return "AmbiguousCusp";
    case ErrorCode::NoRoomForKink: return "NoRoomForKink";
    case ErrorCode::InsufficientFacts: return "InsufficientFacts";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::TubeTooFat: return "TubeTooFat";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

double segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1)
{
    // Closest points between segments, after Ericson, Real-Time Collision Detection 5.1.9.
    const Vec3 d1 = p1 - p0;
    const Vec3 d2 = q1 - q0;
    const Vec3 r = p0 - q0;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    constexpr double tiny = 1e-300;
    double s = 0.0;
    double t = 0.0;
    if (a <= tiny && e <= tiny) return norm(r);
    if (a <= tiny) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= tiny) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p0 + d1 * s, q0 + d2 * t);
}

double point_triangle_distance(const Point3& p, const Point3& a, const Point3& b, const Point3& c)
{
    // Voronoi-region closest point, Ericson 5.1.5.
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = dot(ab, ap);
    const double d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return distance(p, a);

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp);
    const double d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return distance(p, b);

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return distance(p, a + ab * v);
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp);
    const double d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return distance(p, c);

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return distance(p, a + ac * w);
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return distance(p, b + (c - b) * w);
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return distance(p, a + ab * v + ac * w);
}

bool segment_hits_triangle(const Point3& p0, const Point3& p1, const Point3& a, const Point3& b, const Point3& c)
{
    const Vec3 dir = p1 - p0;
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 h = cross(dir, e2);
    const double det = dot(e1, h);
    const double scale = norm(dir) * norm(e1) * norm(e2);
    if (std::abs(det) <= 1e-14 * scale) return false;  // parallel; covered by distance tests
    const double inv = 1.0 / det;
    const Vec3 s = p0 - a;
    const double u = inv * dot(s, h);
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 q = cross(s, e1);
    const double v = inv * dot(dir, q);
    if (v < 0.0 || u + v > 1.0) return false;
    const double t = inv * dot(e2, q);
    return t >= 0.0 && t <= 1.0;
}

bool triangles_touch(const std::array<Point3, 3>& t, const std::array<Point3, 3>& u, double tol)
{
    for (int i = 0; i < 3; ++i) {
        const Point3& a = t[i];
        const Point3& b = t[(i + 1) % 3];
        if (segment_hits_triangle(a, b, u[0], u[1], u[2])) return true;
        const Point3& c = u[i];
        const Point3& d = u[(i + 1) % 3];
        if (segment_hits_triangle(c, d, t[0], t[1], t[2])) return true;
    }
    for (int i = 0; i < 3; ++i) {
        if (point_triangle_distance(t[i], u[0], u[1], u[2]) < tol) return true;
        if (point_triangle_distance(u[i], t[0], t[1], t[2]) < tol) return true;
        for (int j = 0; j < 3; ++j) {
            if (segment_distance(t[i], t[(i + 1) % 3], u[j], u[(j + 1) % 3]) < tol) return true;
        }
    }
    return false;
}

namespace {

double triangle_distance(const std::array<Point3, 3>& t, const std::array<Point3, 3>& u)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        best = std::min(best, point_triangle_distance(t[i], u[0], u[1], u[2]));
        best = std::min(best, point_triangle_distance(u[i], t[0], t[1], t[2]));
        for (int j = 0; j < 3; ++j) {
            best = std::min(best, segment_distance(t[i], t[(i + 1) % 3], u[j], u[(j + 1) % 3]));
        }
    }
    return best;
}

struct Box {
    Point3 lo;
    Point3 hi;
};

Box box_of(std::span<const Point3> pts)
{
    Box b{pts[0], pts[0]};
    for (const Point3& p : pts) {
        b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
        b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
    }
    return b;
}

double box_gap(const Box& a, const Box& b)
{
    const double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
    const double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
    const double dz = std::max({0.0, a.lo.z - b.hi.z, b.lo.z - a.hi.z});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Visits every pair (i < j) whose boxes are within `reach()` of each other.
/// `reach` is re-read on every step so callers can shrink it while searching.
template <typename Reach, typename Visit>
void sweep_pairs(const std::vector<Box>& boxes, Reach&& reach, Visit&& visit)
{
    std::vector<std::size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes[a].lo.x < boxes[b].lo.x || (boxes[a].lo.x == boxes[b].lo.x && a < b);
    });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const Box& bi = boxes[order[oi]];
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const Box& bj = boxes[order[oj]];
            const double r = reach();
            if (bj.lo.x - bi.hi.x > r) break;
            if (box_gap(bi, bj) > r) continue;
            const std::size_t a = std::min(order[oi], order[oj]);
            const std::size_t b = std::max(order[oi], order[oj]);
            visit(a, b);
        }
    }
}

bool segments_adjacent(std::size_t i, std::size_t j, std::size_t n)
{
    return i == j || (i + 1) % n == j || (j + 1) % n == i;
}

std::uint64_t edge_key(std::size_t a, std::size_t b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

double max_pairwise_distance(std::span<const Point3> points)
{
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const Vec3 d = points[i] - points[j];
            best = std::max(best, dot(d, d));
        }
    }
    return std::sqrt(best);
}

double curve_distance(const PLCurve3& a, const PLCurve3& b)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [p0, p1] = a.segment(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const auto [q0, q1] = b.segment(j);
            best = std::min(best, segment_distance(p0, p1, q0, q1));
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// PLCurve3
// ---------------------------------------------------------------------------

const Point3& PLCurve3::at_wrapped(std::ptrdiff_t i) const
{
    const auto n = static_cast<std::ptrdiff_t>(samples_.size());
    return samples_[static_cast<std::size_t>(((i % n) + n) % n)];
}

bool PLCurve3::is_cusp(std::size_t i) const
{
    return std::binary_search(cusps_.begin(), cusps_.end(), i);
}

std::pair<Point3, Point3> PLCurve3::segment(std::size_t i) const
{
    return {samples_[i], samples_[(i + 1) % samples_.size()]};
}

PLCurve3 PLCurve3::reversed() const
{
    const std::size_t n = samples_.size();
    std::vector<Point3> pts(samples_.rbegin(), samples_.rend());
    std::vector<std::size_t> marks;
    marks.reserve(cusps_.size());
    for (std::size_t c : cusps_) marks.push_back(n - 1 - c);
    return build_curve(std::move(pts), std::move(marks));
}

PLCurve3 build_curve(std::vector<Point3> points, std::vector<std::size_t> cusp_marks)
{
    const std::size_t n = points.size();
    if (n < 4) throw Error(ErrorCode::InvalidInput, "a closed curve needs at least 4 samples");
    for (const Point3& p : points) {
        if (!is_finite(p)) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
    }
    std::sort(cusp_marks.begin(), cusp_marks.end());
    cusp_marks.erase(std::unique(cusp_marks.begin(), cusp_marks.end()), cusp_marks.end());
    if (!cusp_marks.empty() && cusp_marks.back() >= n) {
        throw Error(ErrorCode::InvalidInput, "cusp mark out of range");
    }

    const double diam = max_pairwise_distance(points);
    const double tol = kEmbedTolerance * diam;

    for (std::size_t i = 0; i < n; ++i) {
        if (distance(points[i], points[(i + 1) % n]) <= tol) {
            std::ostringstream msg;
            msg << "zero-length segment " << i;
            throw Error(ErrorCode::DegenerateSegment, msg.str());
        }
    }

    const double reversal_cos = -std::cos(kReversalAngle);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::binary_search(cusp_marks.begin(), cusp_marks.end(), i)) continue;
        const Vec3 in = normalized(points[i] - points[(i + n - 1) % n]);
        const Vec3 out = normalized(points[(i + 1) % n] - points[i]);
        if (dot(in, out) < reversal_cos) {
            std::ostringstream msg;
            msg << "segment direction reverses at unmarked sample " << i;
            throw Error(ErrorCode::UnmarkedReversal, msg.str());
        }
    }

    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::array<Point3, 2> seg{points[i], points[(i + 1) % n]};
        boxes[i] = box_of(seg);
    }
    sweep_pairs(boxes, [&] { return tol; }, [&](std::size_t i, std::size_t j) {
        if (segments_adjacent(i, j, n)) return;
        if (segment_distance(points[i], points[(i + 1) % n], points[j], points[(j + 1) % n]) < tol) {
            std::ostringstream msg;
            msg << "segments " << i << " and " << j << " intersect";
            throw Error(ErrorCode::NotEmbedded, msg.str());
        }
    });

    PLCurve3 curve;
    curve.samples_ = std::move(points);
    curve.cusps_ = std::move(cusp_marks);
    curve.diameter_ = diam;
    return curve;
}

// ---------------------------------------------------------------------------
// TriMesh
// ---------------------------------------------------------------------------

std::size_t TriMesh::edge_index(std::size_t a, std::size_t b) const
{
    const auto it = edge_lookup_.find(edge_key(a, b));
    if (it == edge_lookup_.end()) throw Error(ErrorCode::InvalidInput, "no such edge");
    return it->second;
}

std::array<Point3, 3> TriMesh::triangle(std::size_t f) const
{
    const Face& t = faces_[f];
    return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
}

double TriMesh::face_area(std::size_t f) const
{
    const auto t = triangle(f);
    return 0.5 * norm(cross(t[1] - t[0], t[2] - t[0]));
}

double TriMesh::face_inradius(std::size_t f) const
{
    const auto t = triangle(f);
    const double perimeter = distance(t[0], t[1]) + distance(t[1], t[2]) + distance(t[2], t[0]);
    return 2.0 * face_area(f) / perimeter;
}

bool TriMesh::faces_share_edge(std::size_t f, std::size_t g) const
{
    if (f == g) return false;
    for (std::size_t e : face_edges_[f]) {
        const Edge& edge = edges_[e];
        if (edge.faces[0] == g || edge.faces[1] == g) return true;
    }
    return false;
}

bool TriMesh::faces_share_vertex(std::size_t f, std::size_t g) const
{
    for (std::size_t a : faces_[f]) {
        for (std::size_t b : faces_[g]) {
            if (a == b) return true;
        }
    }
    return false;
}

long TriMesh::euler_characteristic() const
{
    return static_cast<long>(vertices_.size()) - static_cast<long>(edges_.size()) +
           static_cast<long>(faces_.size());
}

TriMesh build_mesh(std::vector<Point3> vertices, std::vector<Face> faces, const MeshBuildOptions& options)
{
    const std::size_t nv = vertices.size();
    if (nv < 4 || faces.size() < 4) throw Error(ErrorCode::InvalidInput, "mesh too small to be closed");
    for (const Point3& p : vertices) {
        if (!is_finite(p)) throw Error(ErrorCode::InvalidInput, "non-finite vertex");
    }
    for (const Face& f : faces) {
        for (std::size_t v : f) {
            if (v >= nv) throw Error(ErrorCode::InvalidInput, "face index out of range");
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
            throw Error(ErrorCode::DegenerateFace, "face repeats a vertex");
        }
    }

    TriMesh mesh;
    mesh.diameter_ = max_pairwise_distance(vertices);
    mesh.vertices_ = std::move(vertices);
    mesh.faces_ = std::move(faces);

    const double diam = mesh.diameter_;
    const double area_tol = 1e-14 * diam * diam;
    mesh.normals_.resize(mesh.faces_.size());
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
        const auto t = mesh.triangle(f);
        const Vec3 n = cross(t[1] - t[0], t[2] - t[0]);
        const double len = norm(n);
        if (0.5 * len <= area_tol) {
            std::ostringstream msg;
            msg << "face " << f << " has (near) zero area";
            throw Error(ErrorCode::DegenerateFace, msg.str());
        }
        mesh.normals_[f] = n / len;
    }

    // Directed half-edge occurrences: each undirected edge must appear once in each direction.
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::unordered_map<std::uint64_t, std::array<std::size_t, 2>> directed;  // [a<b direction, b>a direction]
    directed.reserve(mesh.faces_.size() * 3);
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const std::size_t a = mesh.faces_[f][k];
            const std::size_t b = mesh.faces_[f][(k + 1) % 3];
            auto [it, fresh] = directed.try_emplace(edge_key(a, b), std::array<std::size_t, 2>{kNone, kNone});
            std::size_t& slot = it->second[a < b ? 0 : 1];
            if (slot != kNone) {
                const std::size_t other = it->second[a < b ? 1 : 0];
                if (other == kNone) {
                    throw Error(ErrorCode::InconsistentOrientation, "edge traversed twice in the same direction");
                }
                throw Error(ErrorCode::NonManifold, "edge shared by more than two faces");
            }
            slot = f;
        }
    }

    mesh.face_edges_.resize(mesh.faces_.size());
    std::vector<std::pair<std::uint64_t, std::array<std::size_t, 2>>> sorted(directed.begin(), directed.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    mesh.edges_.reserve(sorted.size());
    for (const auto& [key, fs] : sorted) {
        if (fs[0] == kNone || fs[1] == kNone) {
            throw Error(ErrorCode::NonManifold, "boundary edge (edge with a single face)");
        }
        Edge e;
        e.v0 = static_cast<std::size_t>(key >> 32);
        e.v1 = static_cast<std::size_t>(key & 0xffffffffu);
        e.faces = fs;
        mesh.edge_lookup_[key] = mesh.edges_.size();
        mesh.edges_.push_back(e);
    }
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            mesh.face_edges_[f][k] = mesh.edge_lookup_.at(edge_key(mesh.faces_[f][k], mesh.faces_[f][(k + 1) % 3]));
        }
    }

    // Vertex manifoldness: the faces around each vertex form a single fan.
    std::vector<std::vector<std::size_t>> vertex_faces(nv);
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
        for (std::size_t v : mesh.faces_[f]) vertex_faces[v].push_back(f);
    }
    for (std::size_t v = 0; v < nv; ++v) {
        const auto& fan = vertex_faces[v];
        if (fan.empty()) throw Error(ErrorCode::NonManifold, "isolated vertex");
        std::size_t visited = 1;
        std::size_t face = fan.front();
        std::size_t prev_edge = kNone;
        while (true) {
            std::size_t next_edge = kNone;
            for (std::size_t e : mesh.face_edges_[face]) {
                const Edge& ed = mesh.edges_[e];
                if ((ed.v0 == v || ed.v1 == v) && e != prev_edge) {
                    next_edge = e;
                    break;
                }
            }
            const Edge& ed = mesh.edges_[next_edge];
            const std::size_t next_face = ed.faces[0] == face ? ed.faces[1] : ed.faces[0];
            if (next_face == fan.front()) break;
            face = next_face;
            prev_edge = next_edge;
            if (++visited > fan.size()) break;
        }
        if (visited != fan.size()) throw Error(ErrorCode::NonManifold, "pinched vertex");
    }

    if (options.check_self_intersection) {
        const double tol = kEmbedTolerance * diam;
        std::vector<Box> boxes(mesh.faces_.size());
        for (std::size_t f = 0; f < boxes.size(); ++f) {
            const auto t = mesh.triangle(f);
            boxes[f] = box_of(t);
        }
        sweep_pairs(boxes, [&] { return tol; }, [&](std::size_t f, std::size_t g) {
            if (mesh.faces_share_vertex(f, g)) return;
            if (triangles_touch(mesh.triangle(f), mesh.triangle(g), tol)) {
                std::ostringstream msg;
                msg << "faces " << f << " and " << g << " intersect";
                throw Error(ErrorCode::SelfIntersecting, msg.str());
            }
        });
    }
    return mesh;
}

TriMesh flip_orientation(const TriMesh& mesh, const MeshBuildOptions& options)
{
    std::vector<Point3> verts(mesh.vertices().begin(), mesh.vertices().end());
    std::vector<Face> faces;
    faces.reserve(mesh.faces().size());
    for (const Face& f : mesh.faces()) faces.push_back({f[0], f[2], f[1]});
    return build_mesh(std::move(verts), std::move(faces), options);
}

// ---------------------------------------------------------------------------
// CurveOnSurface
// ---------------------------------------------------------------------------

CurveOnSurface build_curve_on_surface(PLCurve3 curve, std::vector<std::size_t> anchors,
                                      std::shared_ptr<const TriMesh> host)
{
    if (!host) throw Error(ErrorCode::InvalidInput, "curve on surface needs a host mesh");
    if (anchors.size() != curve.size()) throw Error(ErrorCode::InvalidInput, "one anchor per sample required");
    const double tol = kEmbedTolerance * host->diameter();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        if (anchors[i] >= host->faces().size()) throw Error(ErrorCode::InvalidInput, "anchor face out of range");
        const auto t = host->triangle(anchors[i]);
        if (point_triangle_distance(curve[i], t[0], t[1], t[2]) > tol) {
            std::ostringstream msg;
            msg << "sample " << i << " is off its anchor face " << anchors[i];
            throw Error(ErrorCode::AnchorMismatch, msg.str());
        }
    }
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const std::size_t f = anchors[i];
        const std::size_t g = anchors[(i + 1) % anchors.size()];
        if (f != g && !host->faces_share_vertex(f, g)) {
            std::ostringstream msg;
            msg << "anchors of samples " << i << " and " << (i + 1) % anchors.size() << " are not adjacent";
            throw Error(ErrorCode::AnchorMismatch, msg.str());
        }
    }
    return CurveOnSurface{std::move(curve), std::move(anchors), std::move(host)};
}

// ---------------------------------------------------------------------------
// Rigid motions
// ---------------------------------------------------------------------------

Vec3 RigidMotion::rotate(const Vec3& v) const
{
    const auto& r = rotation;
    return {r[0] * v.x + r[1] * v.y + r[2] * v.z, r[3] * v.x + r[4] * v.y + r[5] * v.z,
            r[6] * v.x + r[7] * v.y + r[8] * v.z};
}

Point3 RigidMotion::apply(const Point3& p) const { return center + rotate(p - center); }

RigidMotion rotation_about(const Vec3& axis, double angle, const Point3& center)
{
    // Rodrigues.
    const Vec3 k = normalized(axis);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double t = 1.0 - c;
    RigidMotion m;
    m.center = center;
    m.rotation = {t * k.x * k.x + c,       t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
                  t * k.x * k.y + s * k.z, t * k.y * k.y + c,       t * k.y * k.z - s * k.x,
                  t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c};
    return m;
}

RigidMotion perturbation_motion(std::span<const Point3> points, std::uint64_t seed, double magnitude)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double z = 2.0 * unit(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 axis{rho * std::cos(phi), rho * std::sin(phi), z};

    Point3 centroid{};
    for (const Point3& p : points) centroid += p;
    centroid = centroid / static_cast<double>(points.size());
    return rotation_about(axis, magnitude, centroid);
}

PLCurve3 transform(const PLCurve3& curve, const RigidMotion& motion)
{
    std::vector<Point3> pts;
    pts.reserve(curve.size());
    for (const Point3& p : curve.samples()) pts.push_back(motion.apply(p));
    return build_curve(std::move(pts), curve.cusp_marks());
}

TriMesh transform(const TriMesh& mesh, const RigidMotion& motion, const MeshBuildOptions& options)
{
    std::vector<Point3> verts;
    verts.reserve(mesh.vertices().size());
    for (const Point3& p : mesh.vertices()) verts.push_back(motion.apply(p));
    return build_mesh(std::move(verts), std::vector<Face>(mesh.faces().begin(), mesh.faces().end()), options);
}

CurveOnSurface transform(const CurveOnSurface& c, const RigidMotion& motion)
{
    auto host = std::make_shared<const TriMesh>(transform(*c.host, motion, MeshBuildOptions{false}));
    return build_curve_on_surface(transform(c.curve, motion), c.anchors, std::move(host));
}

namespace {

/// Rotations beyond this are not "slight"; the genericity contract only needs tiny motions.
constexpr double kMaxPerturbation = 0.1;

void check_magnitude(double magnitude)
{
    if (!(magnitude >= 0.0)) throw Error(ErrorCode::InvalidInput, "perturbation magnitude must be >= 0");
    if (magnitude > kMaxPerturbation) {
        throw Error(ErrorCode::PerturbationTooLarge, "perturbation magnitude exceeds 0.1");
    }
}

}  // namespace

PLCurve3 perturb(const PLCurve3& curve, std::uint64_t seed, double magnitude)
{
    check_magnitude(magnitude);
    if (magnitude == 0.0) return curve;
    try {
        return transform(curve, perturbation_motion(curve.samples(), seed, magnitude));
    } catch (const Error& e) {
        throw Error(ErrorCode::PerturbationTooLarge, e.what());
    }
}

TriMesh perturb(const TriMesh& mesh, std::uint64_t seed, double magnitude)
{
    check_magnitude(magnitude);
    if (magnitude == 0.0) return mesh;
    try {
        return transform(mesh, perturbation_motion(mesh.vertices(), seed, magnitude));
    } catch (const Error& e) {
        throw Error(ErrorCode::PerturbationTooLarge, e.what());
    }
}

CurveOnSurface perturb(const CurveOnSurface& c, std::uint64_t seed, double magnitude)
{
    check_magnitude(magnitude);
    if (magnitude == 0.0) return c;
    try {
        return transform(c, perturbation_motion(c.host->vertices(), seed, magnitude));
    } catch (const Error& e) {
        throw Error(ErrorCode::PerturbationTooLarge, e.what());
    }
}

PLCurve3 scaled(const PLCurve3& curve, double s)
{
    std::vector<Point3> pts;
    pts.reserve(curve.size());
    for (const Point3& p : curve.samples()) pts.push_back(p * s);
    return build_curve(std::move(pts), curve.cusp_marks());
}

// ---------------------------------------------------------------------------
// Feature size
// ---------------------------------------------------------------------------

double min_feature_size(const PLCurve3& curve)
{
    const std::size_t n = curve.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = curve.segment(i);
        best = std::min(best, distance(a, b));
    }
    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = curve.segment(i);
        const std::array<Point3, 2> seg{a, b};
        boxes[i] = box_of(seg);
    }
    sweep_pairs(boxes, [&] { return best; }, [&](std::size_t i, std::size_t j) {
        if (segments_adjacent(i, j, n)) return;
        const auto [a, b] = curve.segment(i);
        const auto [c, d] = curve.segment(j);
        best = std::min(best, segment_distance(a, b, c, d));
    });
    return best;
}

double min_feature_size(const TriMesh& mesh)
{
    double best = std::numeric_limits<double>::infinity();
    for (const Edge& e : mesh.edges()) {
        best = std::min(best, distance(mesh.vertices()[e.v0], mesh.vertices()[e.v1]));
    }
    std::vector<Box> boxes(mesh.faces().size());
    for (std::size_t f = 0; f < boxes.size(); ++f) {
        const auto t = mesh.triangle(f);
        boxes[f] = box_of(t);
    }
    sweep_pairs(boxes, [&] { return best; }, [&](std::size_t f, std::size_t g) {
        if (mesh.faces_share_vertex(f, g)) return;
        best = std::min(best, triangle_distance(mesh.triangle(f), mesh.triangle(g)));
    });
    return best;
}

}  // namespace profilekit
