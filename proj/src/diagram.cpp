#include "profilekit/diagram.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

namespace profilekit {

std::string_view to_string(Chirality c) { return c == Chirality::Right ? "right" : "left"; }

int PlanarDiagram::self_crossing_sign_sum(std::size_t strand) const
{
    int sum = 0;
    for (const Crossing& c : crossings) {
        if (c.over_strand == strand && c.under_strand == strand) sum += c.sign;
    }
    return sum;
}

int PlanarDiagram::inter_crossing_sign_sum() const
{
    int sum = 0;
    for (const Crossing& c : crossings) {
        if (c.over_strand != c.under_strand) sum += c.sign;
    }
    return sum;
}

Chirality cusp_chirality(std::span<const Point3> strand, std::size_t v, std::size_t k)
{
    const std::size_t n = strand.size();
    k = std::max<std::size_t>(1, std::min(k, (n - 1) / 2));
    const Vec2 prev = xy(strand[(v + n - k) % n]);
    const Vec2 here = xy(strand[v]);
    const Vec2 next = xy(strand[(v + k) % n]);
    const Vec2 incoming = here - prev;
    const Vec2 chord = next - prev;
    return cross2(incoming, chord) < 0.0 ? Chirality::Right : Chirality::Left;
}

namespace {

/// Genericity margin on segment parameters.
constexpr double kParamMargin = 1e-9;
/// Heights at a crossing closer than this fraction of the diameter are degenerate.
constexpr double kHeightMargin = 1e-12;

[[noreturn]] void degenerate(const std::string& why) { throw Error(ErrorCode::DegenerateProjection, why); }

struct SegRef {
    std::size_t strand;
    std::size_t index;
    double lo_x;
    double hi_x;
    double lo_y;
    double hi_y;
};

PlanarDiagram project_impl(std::vector<std::vector<Point3>> strands,
                           const std::vector<std::vector<std::size_t>>& cusp_marks)
{
    std::vector<Point3> all;
    for (const auto& s : strands) all.insert(all.end(), s.begin(), s.end());
    const double diam = max_pairwise_distance(all);
    const double height_tol = kHeightMargin * diam;
    const double point_tol = kEmbedTolerance * diam;

    std::vector<SegRef> segs;
    for (std::size_t s = 0; s < strands.size(); ++s) {
        const auto& pts = strands[s];
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Point3& a = pts[i];
            const Point3& b = pts[(i + 1) % pts.size()];
            segs.push_back({s, i, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const SegRef& l, const SegRef& r) {
        return l.lo_x < r.lo_x || (l.lo_x == r.lo_x && (l.strand < r.strand || (l.strand == r.strand && l.index < r.index)));
    });

    PlanarDiagram d;
    for (std::size_t ai = 0; ai < segs.size(); ++ai) {
        const SegRef& A = segs[ai];
        for (std::size_t bi = ai + 1; bi < segs.size(); ++bi) {
            const SegRef& B = segs[bi];
            if (B.lo_x > A.hi_x + point_tol) break;
            if (B.lo_y > A.hi_y + point_tol || A.lo_y > B.hi_y + point_tol) continue;
            if (A.strand == B.strand) {
                const std::size_t n = strands[A.strand].size();
                if (A.index == B.index || (A.index + 1) % n == B.index || (B.index + 1) % n == A.index) continue;
            }
            const auto& sa = strands[A.strand];
            const auto& sb = strands[B.strand];
            const Point3& a0 = sa[A.index];
            const Point3& a1 = sa[(A.index + 1) % sa.size()];
            const Point3& b0 = sb[B.index];
            const Point3& b1 = sb[(B.index + 1) % sb.size()];

            const Vec2 p = xy(a0);
            const Vec2 r = xy(a1) - p;
            const Vec2 q = xy(b0);
            const Vec2 u = xy(b1) - q;
            const double rl = norm(r);
            const double ul = norm(u);
            if (rl <= point_tol || ul <= point_tol) {
                // A vertical segment projects to a point; it meets another strand only degenerately.
                const Vec2 pt = rl <= point_tol ? p : q;
                const Vec2 o0 = rl <= point_tol ? q : p;
                const Vec2 od = rl <= point_tol ? u : r;
                const double odl = rl <= point_tol ? ul : rl;
                if (odl > point_tol) {
                    const double t = std::clamp(dot(pt - o0, od) / (odl * odl), 0.0, 1.0);
                    if (norm(o0 + od * t - pt) <= point_tol) degenerate("vertical segment meets another strand");
                }
                continue;
            }
            const double denom = cross2(r, u);
            const Vec2 qp = q - p;
            if (std::abs(denom) <= 1e-14 * rl * ul) {
                // Parallel: degenerate only when collinear and overlapping.
                if (std::abs(cross2(qp, r)) / rl <= point_tol) {
                    const double t0 = dot(qp, r) / (rl * rl);
                    const double t1 = dot(xy(b1) - p, r) / (rl * rl);
                    if (std::max(t0, t1) >= -kParamMargin && std::min(t0, t1) <= 1.0 + kParamMargin) {
                        degenerate("collinear overlapping segments");
                    }
                }
                continue;
            }
            const double s = cross2(qp, u) / denom;
            const double t = cross2(qp, r) / denom;
            if (s < -kParamMargin || s > 1.0 + kParamMargin || t < -kParamMargin || t > 1.0 + kParamMargin) continue;
            if (s <= kParamMargin || s >= 1.0 - kParamMargin || t <= kParamMargin || t >= 1.0 - kParamMargin) {
                degenerate("crossing at a segment endpoint");
            }
            const double za = a0.z + s * (a1.z - a0.z);
            const double zb = b0.z + t * (b1.z - b0.z);
            if (std::abs(za - zb) < height_tol) degenerate("strands meet at equal heights");

            Crossing c;
            c.point = p + r * s;
            const bool a_over = za > zb;
            c.over_strand = a_over ? A.strand : B.strand;
            c.over_segment = a_over ? A.index : B.index;
            c.under_strand = a_over ? B.strand : A.strand;
            c.under_segment = a_over ? B.index : A.index;
            c.over_t = a_over ? s : t;
            c.under_t = a_over ? t : s;
            const Vec2 over_dir = a_over ? r : u;
            const Vec2 under_dir = a_over ? u : r;
            c.sign = cross2(over_dir, under_dir) > 0.0 ? 1 : -1;
            d.crossings.push_back(c);
        }
    }

    // Canonical order, independent of the sweep.
    std::sort(d.crossings.begin(), d.crossings.end(), [](const Crossing& l, const Crossing& r) {
        const auto key = [](const Crossing& c) {
            const bool first_is_over = std::make_pair(c.over_strand, c.over_segment) <
                                       std::make_pair(c.under_strand, c.under_segment);
            return first_is_over ? std::make_tuple(c.over_strand, c.over_segment, c.under_strand, c.under_segment)
                                 : std::make_tuple(c.under_strand, c.under_segment, c.over_strand, c.over_segment);
        };
        return key(l) < key(r);
    });

    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        for (std::size_t j = i + 1; j < d.crossings.size(); ++j) {
            if (norm(d.crossings[i].point - d.crossings[j].point) <= point_tol) degenerate("triple point");
        }
    }

    for (std::size_t s = 0; s < strands.size() && s < cusp_marks.size(); ++s) {
        for (std::size_t v : cusp_marks[s]) {
            if (v >= strands[s].size()) throw Error(ErrorCode::InvalidInput, "cusp mark out of range");
            d.cusps.push_back({s, v, cusp_chirality(strands[s], v)});
        }
    }
    d.strands = std::move(strands);
    return d;
}

std::vector<Point3> points_of(const PLCurve3& c) { return {c.samples().begin(), c.samples().end()}; }

/// Seed for retry k, derived from the caller seed with a splitmix step.
std::uint64_t retry_seed(std::uint64_t seed, int k)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

template <typename Attempt>
PlanarDiagram with_retries(std::span<const Point3> points, const RetryPolicy& policy, Attempt&& attempt)
{
    try {
        return attempt(RigidMotion{});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateProjection) throw;
    }
    double magnitude = policy.initial_magnitude;
    for (int k = 0; k < policy.max_retries; ++k, magnitude *= 2.0) {
        try {
            return attempt(perturbation_motion(points, retry_seed(policy.seed, k), magnitude));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateProjection) throw;
        }
    }
    throw Error(ErrorCode::PersistentDegeneracy, "projection stayed degenerate after all retries");
}

}  // namespace

PlanarDiagram project(const PLCurve3& curve)
{
    return project_impl({points_of(curve)}, {curve.cusp_marks()});
}

PlanarDiagram project(const PLCurve3& a, const PLCurve3& b)
{
    return project_impl({points_of(a), points_of(b)}, {a.cusp_marks(), b.cusp_marks()});
}

PlanarDiagram project_strands(std::vector<std::vector<Point3>> strands,
                              const std::vector<std::vector<std::size_t>>& cusp_marks)
{
    if (strands.empty() || strands.size() > 2) throw Error(ErrorCode::InvalidInput, "diagram needs one or two strands");
    for (const auto& s : strands) {
        if (s.size() < 3) throw Error(ErrorCode::InvalidInput, "strand needs at least 3 vertices");
    }
    return project_impl(std::move(strands), cusp_marks);
}

PlanarDiagram project_generic(const PLCurve3& curve, const RetryPolicy& policy)
{
    return with_retries(curve.samples(), policy, [&](const RigidMotion& m) {
        std::vector<Point3> pts;
        pts.reserve(curve.size());
        for (const Point3& p : curve.samples()) pts.push_back(m.apply(p));
        return project_impl({std::move(pts)}, {curve.cusp_marks()});
    });
}

PlanarDiagram project_generic(const PLCurve3& a, const PLCurve3& b, const RetryPolicy& policy)
{
    std::vector<Point3> all = points_of(a);
    all.insert(all.end(), b.samples().begin(), b.samples().end());
    return with_retries(all, policy, [&](const RigidMotion& m) {
        std::vector<Point3> pa;
        std::vector<Point3> pb;
        for (const Point3& p : a.samples()) pa.push_back(m.apply(p));
        for (const Point3& p : b.samples()) pb.push_back(m.apply(p));
        return project_impl({std::move(pa), std::move(pb)}, {a.cusp_marks(), b.cusp_marks()});
    });
}

int writhe(const PLCurve3& curve, const RetryPolicy& policy)
{
    return project_generic(curve, policy).self_crossing_sign_sum(0);
}

namespace {

void require_disjoint(const PLCurve3& a, const PLCurve3& b)
{
    const double tol = kEmbedTolerance * std::max(a.diameter(), b.diameter());
    if (curve_distance(a, b) <= tol) throw Error(ErrorCode::CurvesIntersect, "curves are not disjoint");
}

}  // namespace

int linking_number(const PLCurve3& a, const PLCurve3& b, const RetryPolicy& policy)
{
    require_disjoint(a, b);
    const int sum = project_generic(a, b, policy).inter_crossing_sign_sum();
    if (sum % 2 != 0) {
        std::ostringstream msg;
        msg << "odd signed inter-strand crossing count " << sum;
        throw Error(ErrorCode::Internal, msg.str());
    }
    return sum / 2;
}

GaussLinking linking_number_gauss(const PLCurve3& a, const PLCurve3& b)
{
    require_disjoint(a, b);
    // Exact signed solid angle subtended by a pair of straight segments
    // (Klenin & Langowski form of the discrete Gauss integral).
    const auto unit_or_zero = [](const Vec3& v) {
        const double l = norm(v);
        return l > 0.0 ? v / l : Vec3{};
    };
    const auto safe_asin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [p1, p2] = a.segment(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const auto [p3, p4] = b.segment(j);
            const Vec3 r13 = p3 - p1;
            const Vec3 r14 = p4 - p1;
            const Vec3 r23 = p3 - p2;
            const Vec3 r24 = p4 - p2;
            const Vec3 n1 = unit_or_zero(cross(r13, r14));
            const Vec3 n2 = unit_or_zero(cross(r14, r24));
            const Vec3 n3 = unit_or_zero(cross(r24, r23));
            const Vec3 n4 = unit_or_zero(cross(r23, r13));
            const double omega = safe_asin(dot(n1, n2)) + safe_asin(dot(n2, n3)) + safe_asin(dot(n3, n4)) +
                                 safe_asin(dot(n4, n1));
            const double orient = dot(cross(p4 - p3, p2 - p1), r13);
            if (orient > 0.0) {
                total += omega;
            } else if (orient < 0.0) {
                total -= omega;
            }
        }
    }
    GaussLinking g;
    g.raw = total / (4.0 * std::numbers::pi);
    g.value = static_cast<int>(std::lround(g.raw));
    g.residual = std::abs(g.raw - g.value);
    if (g.residual > 0.25) {
        std::ostringstream msg;
        msg << "Gauss sum " << g.raw << " is far from an integer";
        throw Error(ErrorCode::ResidualTooLarge, msg.str());
    }
    return g;
}

}  // namespace profilekit
