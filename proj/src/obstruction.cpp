#include "profilekit/obstruction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace profilekit {

CuspSummary summarize_cusps(const PLCurve3& curve)
{
    CuspSummary s;
    for (const std::size_t v : curve.cusp_marks()) s.chiralities.push_back(cusp_chirality(curve.samples(), v, 1));
    s.count = s.chiralities.size();
    s.even = s.count % 2 == 0;
    s.uniform_chirality = std::adjacent_find(s.chiralities.begin(), s.chiralities.end(), std::not_equal_to<>()) ==
                          s.chiralities.end();
    return s;
}

namespace {

std::optional<std::string> lemma_failure(const CuspSummary& s)
{
    std::vector<std::string> why;
    if (!s.even) why.push_back("odd number of cusps (" + std::to_string(s.count) + ")");
    if (!s.uniform_chirality) why.push_back("cusps of both chiralities");
    if (why.empty()) return std::nullopt;
    std::string out = "not a profile curve of a surface in which it has an annular neighbourhood: ";
    for (std::size_t i = 0; i < why.size(); ++i) out += (i ? " and " : "") + why[i];
    return out;
}

}  // namespace

ObstructionReport check_realizable(const CurveOnSurface& c, const LinkingOptions& options)
{
    ObstructionReport r;
    r.cusps = summarize_cusps(c.curve);
    r.cusp_failure = lemma_failure(r.cusps);
    r.surface_linking = surface_linking(c, options);
    try {
        r.writhe = writhe_definitional(c.curve, options);
    } catch (const Error& e) {
        // With bad cusp data the blackboard framing may not close; fall back to the crossing sum.
        // Same when a cusp-free curve has a projection that doubles back on itself (a meridian
        // seen edge-on): without cusps the two writhes agree, and the crossing sum retries in a
        // generic direction.
        const bool framing_failed = e.code() == ErrorCode::FramingNotClosed || e.code() == ErrorCode::VerticalTangent;
        const bool cusp_free = c.curve.cusp_marks().empty();
        if (!framing_failed || !(r.cusp_failure || (cusp_free && e.code() == ErrorCode::VerticalTangent))) throw;
        r.writhe = writhe(c.curve, options.retry);
    }
    r.deficit = r.surface_linking - r.writhe;
    r.realizable = !r.cusp_failure && r.deficit == 0;
    DiagramFacts facts;
    facts.cusps = r.cusps.count;
    r.exclusions = exclude_surfaces(r.writhe, facts);
    return r;
}

// ---------------------------------------------------------------------------
// Reidemeister I correction
// ---------------------------------------------------------------------------

namespace {

struct Hinge {
    std::size_t index;  // sample index whose outgoing segment crosses the fold edge
    std::size_t first;  // anchor face of that sample
    std::size_t second; // anchor face of the next sample
    std::size_t a;
    std::size_t b;
};

std::size_t apex(const Face& f, std::size_t a, std::size_t b)
{
    for (const std::size_t v : f) {
        if (v != a && v != b) return v;
    }
    return f[0];
}

std::vector<Hinge> find_hinges(const CurveOnSurface& c)
{
    const TriMesh& mesh = *c.host;
    std::vector<Hinge> out;
    const std::size_t n = c.anchors.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t f = c.anchors[i];
        const std::size_t g = c.anchors[(i + 1) % n];
        if (f == g || !mesh.faces_share_edge(f, g)) continue;
        if ((mesh.face_normals()[f].z > 0.0) == (mesh.face_normals()[g].z > 0.0)) continue;
        const Face& ff = mesh.faces()[f];
        const Face& fg = mesh.faces()[g];
        std::vector<std::size_t> common;
        for (const std::size_t v : ff) {
            if (std::find(fg.begin(), fg.end(), v) != fg.end()) common.push_back(v);
        }
        if (common.size() == 2) out.push_back({i, f, g, common[0], common[1]});
    }
    return out;
}

/// Inverse of the vertical projection restricted to one face (a, b, apex).
struct FaceLift {
    Point3 a;
    Vec3 e;
    Vec3 q;
    Vec2 e2;
    Vec2 q2;

    FaceLift(const Point3& pa, const Point3& pb, const Point3& papex)
        : a(pa), e(pb - pa), q(papex - pa), e2(xy(pb - pa)), q2(xy(papex - pa))
    {
    }
    /// Point of the face above `target` (relative to a), kept away from the face boundary.
    std::optional<Point3> at(const Vec2& target) const
    {
        const double det = cross2(e2, q2);
        if (std::abs(det) < 1e-300) return std::nullopt;
        const double s = cross2(target, q2) / det;
        const double h = cross2(e2, target) / det;
        if (h <= 1e-3 || h >= 0.95) return std::nullopt;
        const double t = s / (1.0 - h);
        if (t <= 0.02 || t >= 0.98) return std::nullopt;
        return a + e * s + q * h;
    }
};

struct Working {
    std::vector<Point3> samples;
    std::vector<std::size_t> anchors;
};

int crossing_count(const PLCurve3& curve, const RetryPolicy& retry)
{
    return static_cast<int>(project_generic(curve, retry).crossings.size());
}

/// Tries kink shapes at one hinge; on success replaces the hinge segment in `w`.
///
/// The kink is a curl drawn in the plane with x along the projected fold edge and y towards
/// the side both faces project to. It enters along the top of a circle of radius r touching
/// the edge, runs round it, and crosses the edge at a shallow angle along the bottom (first
/// face to second face), so the projection never reverses. The exit then cuts across the entry
/// once. Which face is in front at that crossing fixes the kink sign for a travel direction, so
/// both directions are tried and the diagram is recomputed to confirm.
bool insert_kink(Working& w, const Hinge& h, const TriMesh& mesh, int sign, int& writhe_now, int& crossings_now,
                 const RetryPolicy& retry)
{
    const auto verts = mesh.vertices();
    const Point3& pa = verts[h.a];
    const Point3& pb = verts[h.b];
    const FaceLift lift1(pa, pb, verts[apex(mesh.faces()[h.first], h.a, h.b)]);
    const FaceLift lift2(pa, pb, verts[apex(mesh.faces()[h.second], h.a, h.b)]);

    const Vec2 e2 = lift1.e2;
    const double len = norm(e2);
    if (!(len > 0.0)) return false;
    const Vec2 x_hat{e2.x / len, e2.y / len};
    Vec2 y_hat = left_perp(x_hat);
    if (dot(y_hat, lift1.q2) < 0.0) y_hat = -y_hat;
    const double reach1 = dot(y_hat, lift1.q2);
    const double reach2 = dot(y_hat, lift2.q2);
    if (!(reach1 > 0.0) || !(reach2 > 0.0)) return false;  // not folded over in the projection
    const double reach = std::min({reach1, reach2, 0.5 * len});

    const Point3& P = w.samples[h.index];
    const Point3& Q = w.samples[(h.index + 1) % w.samples.size()];
    const Vec3 e = pb - pa;
    const double t_star = std::clamp(dot((P + Q) * 0.5 - pa, e) / dot(e, e), 0.15, 0.85);
    constexpr double kDeg = 3.14159265358979323846 / 180.0;
    const std::array<double, 4> round1{90.0, 30.0, -30.0, -70.0};
    const std::array<double, 4> round2{-110.0, -150.0, 150.0, 110.0};

    for (const double tc : {t_star, 0.5, 0.3, 0.7}) {
        const Vec2 origin = e2 * tc;
        for (const double scale : {0.12, 0.06, 0.03, 0.015}) {
            const double r = scale * reach;
            const double eps = 0.02 * r;
            for (const int travel : {1, -1}) {
                const auto place = [&](const FaceLift& lift, double x, double y) {
                    return lift.at(origin + x_hat * (travel * x) + y_hat * y);
                };
                const auto on_circle = [&](const FaceLift& lift, double deg) {
                    return place(lift, r * std::cos(deg * kDeg), r + eps + r * std::sin(deg * kDeg));
                };
                std::vector<std::optional<Point3>> pts;
                pts.push_back(place(lift1, -2.0 * r, 2.0 * r + eps));
                for (const double a : round1) pts.push_back(on_circle(lift1, a));
                for (const double a : round2) pts.push_back(on_circle(lift2, a));
                pts.push_back(place(lift2, 0.3 * r, 2.6 * r + eps));
                if (std::any_of(pts.begin(), pts.end(), [](const auto& p) { return !p; })) continue;

                Working trial = w;
                const auto pos = static_cast<std::ptrdiff_t>(h.index + 1);
                std::vector<Point3> kink;
                std::vector<std::size_t> faces;
                for (std::size_t k = 0; k < pts.size(); ++k) {
                    kink.push_back(*pts[k]);
                    faces.push_back(k <= round1.size() ? h.first : h.second);
                }
                trial.samples.insert(trial.samples.begin() + pos, kink.begin(), kink.end());
                trial.anchors.insert(trial.anchors.begin() + pos, faces.begin(), faces.end());
                try {
                    const PLCurve3 curve = build_curve(trial.samples);
                    const int wr = writhe(curve, retry);
                    const int cc = crossing_count(curve, retry);
                    if (wr != writhe_now + sign || cc != crossings_now + 1) continue;
                    blackboard_framing(curve);  // no projected reversal introduced
                    writhe_now = wr;
                    crossings_now = cc;
                    w = std::move(trial);
                    return true;
                } catch (const Error&) {
                    continue;
                }
            }
        }
    }
    return false;
}

}  // namespace

CurveOnSurface ri_correct(const CurveOnSurface& c, const LinkingOptions& options)
{
    const ObstructionReport report = check_realizable(c, options);
    if (report.cusp_failure) {
        throw Error(ErrorCode::InvalidInput, "cannot correct: " + *report.cusp_failure);
    }
    if (report.deficit == 0) return c;
    if (!c.curve.cusp_marks().empty()) {
        throw Error(ErrorCode::InvalidInput, "kink insertion is only supported on curves without cusps");
    }
    const int sign = report.deficit > 0 ? 1 : -1;
    const int needed = std::abs(report.deficit);

    std::vector<Hinge> hinges = find_hinges(c);
    if (static_cast<int>(hinges.size()) < needed) {
        std::ostringstream msg;
        msg << "deficit " << report.deficit << " needs " << needed << " fold crossings, curve has " << hinges.size();
        throw Error(ErrorCode::NoRoomForKink, msg.str());
    }
    // Later hinges first so earlier sample indices stay valid.
    std::sort(hinges.begin(), hinges.end(), [](const Hinge& x, const Hinge& y) { return x.index > y.index; });

    Working w{std::vector<Point3>(c.curve.samples().begin(), c.curve.samples().end()), c.anchors};
    int writhe_now = writhe(c.curve, options.retry);
    int crossings_now = crossing_count(c.curve, options.retry);
    int placed = 0;
    for (const Hinge& h : hinges) {
        if (placed == needed) break;
        if (insert_kink(w, h, *c.host, sign, writhe_now, crossings_now, options.retry)) ++placed;
    }
    if (placed < needed) {
        std::ostringstream msg;
        msg << "placed " << placed << " of " << needed << " kinks; refine the mesh near the fold";
        throw Error(ErrorCode::NoRoomForKink, msg.str());
    }

    CurveOnSurface out = build_curve_on_surface(build_curve(std::move(w.samples)), std::move(w.anchors), c.host);
    const int lambda = surface_linking(out, options);
    const int wr = writhe_definitional(out.curve, options);
    if (lambda != report.surface_linking || wr != lambda) {
        std::ostringstream msg;
        msg << "kink insertion check failed: writhe " << wr << ", surface linking " << lambda << " (expected "
            << report.surface_linking << ")";
        throw Error(ErrorCode::Internal, msg.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contours and exclusions
// ---------------------------------------------------------------------------

ContourVerdict check_contour(const PlanarDiagram& d, bool orientable_neighborhood)
{
    ContourVerdict v;
    for (std::size_t s = 0; s < d.strands.size(); ++s) {
        std::vector<Chirality> ch;
        for (const CuspMark& c : d.cusps) {
            if (c.strand == s) ch.push_back(c.chirality);
        }
        v.cusp_count += ch.size();
        v.chiralities.insert(v.chiralities.end(), ch.begin(), ch.end());
        const std::string prefix = d.strands.size() > 1 ? "strand " + std::to_string(s) + ": " : "";
        const bool even = ch.size() % 2 == 0;
        if (orientable_neighborhood && !even) {
            v.violations.push_back(prefix + "odd cusp count " + std::to_string(ch.size()) +
                                   "; an annular neighbourhood needs an even number");
        }
        if (!orientable_neighborhood && even) {
            v.violations.push_back(prefix + "even cusp count " + std::to_string(ch.size()) +
                                   "; a Moebius neighbourhood needs an odd number");
        }
        const auto right = std::count(ch.begin(), ch.end(), Chirality::Right);
        const auto left = static_cast<std::ptrdiff_t>(ch.size()) - right;
        if (right > 0 && left > 0) {
            v.violations.push_back(prefix + "mixed chirality (" + std::to_string(right) + " right, " +
                                   std::to_string(left) + " left)");
        }
    }
    v.pass = v.violations.empty();
    return v;
}

std::vector<Exclusion> exclude_surfaces(int writhe, const DiagramFacts& facts)
{
    std::vector<Exclusion> out;
    const int magnitude = std::abs(writhe);
    const std::string w_text = facts.sign_unknown ? "|w| = " + std::to_string(magnitude) : "w = " + std::to_string(writhe);
    if (magnitude != 0) {
        out.push_back({"sphere", "sphere rule: every curve on a sphere has surface linking number 0, but " + w_text});
    }
    if (facts.knot_type == "unknot" && magnitude == 1) {
        out.push_back({"knotted torus",
                       "knotted torus rule: an unknotted curve on a knotted torus is inessential or a meridian, so its "
                       "surface linking number is 0, but " + w_text});
    }
    if (facts.knot_type == "trefoil") {
        if (!facts.crossings) {
            throw Error(ErrorCode::InsufficientFacts, "the trefoil rule needs the crossing count of the diagram");
        }
        const std::size_t total = *facts.crossings + facts.cusps;
        if (total < 6) {
            out.push_back({"unknotted torus",
                           "trefoil rule: " + std::to_string(*facts.crossings) + " crossings + " +
                               std::to_string(facts.cusps) + " cusps < 6 forces the writhe to be non-zero mod 6, "
                               "while a trefoil on an unknotted torus has surface linking number 0 mod 6"});
        }
    }
    return out;
}

}  // namespace profilekit
