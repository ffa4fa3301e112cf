#include "profilekit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "profilekit/framing.hpp"

namespace profilekit {

namespace {

/// Unit tangents with |z| above 1 - this count as near-vertical.
constexpr double kVerticalTolerance = 0.05;
constexpr std::size_t kMaxVerticalRun = 3;
/// Fold chains on coarse meshes reverse at neighbouring samples, so the stencil stays local.
constexpr std::size_t kChiralityStencil = 1;

struct NotGeneric {
    std::string why;
};

std::uint64_t mix_seed(std::uint64_t seed, int attempt)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Position of edge (a, b) in face f: +1 if the face runs a -> b, -1 if b -> a.
int edge_direction(const Face& f, std::size_t a, std::size_t b)
{
    for (std::size_t k = 0; k < 3; ++k) {
        if (f[k] == a && f[(k + 1) % 3] == b) return 1;
        if (f[k] == b && f[(k + 1) % 3] == a) return -1;
    }
    return 0;
}

std::vector<ProfileCurve> extract_once(const std::shared_ptr<const TriMesh>& host, const ProfileOptions& options)
{
    const TriMesh& mesh = *host;
    const auto normals = mesh.face_normals();
    for (std::size_t f = 0; f < normals.size(); ++f) {
        if (std::abs(normals[f].z) < options.normal_tolerance) {
            throw NotGeneric{"face " + std::to_string(f) + " is vertical"};
        }
    }

    const auto edges = mesh.edges();
    std::vector<std::vector<std::size_t>> at_vertex(mesh.vertices().size());
    std::vector<std::size_t> folds;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!is_fold_edge(mesh, e)) continue;
        folds.push_back(e);
        at_vertex[edges[e].v0].push_back(e);
        at_vertex[edges[e].v1].push_back(e);
    }
    for (std::size_t v = 0; v < at_vertex.size(); ++v) {
        if (at_vertex[v].size() > 2) throw NotGeneric{std::to_string(at_vertex[v].size()) + " fold edges meet at vertex " + std::to_string(v)};
        if (at_vertex[v].size() == 1) throw Error(ErrorCode::Internal, "fold edge with a free end");
    }

    std::vector<bool> used(edges.size(), false);
    std::vector<ProfileCurve> out;
    for (const std::size_t first : folds) {
        if (used[first]) continue;
        // Orient the first edge as it runs in its up-facing face, then walk.
        const Edge& e0 = edges[first];
        const std::size_t up0 = normals[e0.faces[0]].z > 0.0 ? e0.faces[0] : e0.faces[1];
        std::size_t tail = e0.v0;
        std::size_t head = e0.v1;
        if (edge_direction(mesh.faces()[up0], tail, head) < 0) std::swap(tail, head);

        std::vector<std::size_t> cycle_edges;
        std::vector<Point3> samples;
        std::vector<std::size_t> anchors;
        std::size_t e = first;
        while (true) {
            used[e] = true;
            const Edge& edge = edges[e];
            const std::size_t up = normals[edge.faces[0]].z > 0.0 ? edge.faces[0] : edge.faces[1];
            if (edge_direction(mesh.faces()[up], tail, head) < 0) {
                throw NotGeneric{"up-facing side switches along a fold cycle"};
            }
            cycle_edges.push_back(e);
            samples.push_back((mesh.vertices()[edge.v0] + mesh.vertices()[edge.v1]) * 0.5);
            anchors.push_back(up);
            const auto& nbrs = at_vertex[head];
            const std::size_t next = nbrs[0] == e ? nbrs[1] : nbrs[0];
            if (next == first) break;
            tail = head;
            head = edges[next].v0 == tail ? edges[next].v1 : edges[next].v0;
            e = next;
        }
        if (samples.size() < 4) throw NotGeneric{"fold cycle with fewer than 4 edges"};

        std::vector<std::size_t> cusps = find_projected_reversals(samples);
        PLCurve3 curve = build_curve(std::move(samples), std::move(cusps));
        ProfileCurve pc{build_curve_on_surface(std::move(curve), std::move(anchors), host), out.size(),
                        std::move(cycle_edges)};
        out.push_back(std::move(pc));
    }
    return out;
}

}  // namespace

bool is_fold_edge(const TriMesh& mesh, std::size_t edge)
{
    const Edge& e = mesh.edges()[edge];
    const double z0 = mesh.face_normals()[e.faces[0]].z;
    const double z1 = mesh.face_normals()[e.faces[1]].z;
    return (z0 > 0.0) != (z1 > 0.0);
}

std::vector<std::size_t> find_projected_reversals(std::span<const Point3> samples)
{
    const std::size_t n = samples.size();
    // Same horizontal normal the blackboard framing uses at unmarked samples.
    std::vector<Vec2> side(n);
    std::vector<double> turn(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 in = samples[i] - samples[(i + n - 1) % n];
        const Vec3 out = samples[(i + 1) % n] - samples[i];
        const Vec2 h = xy(normalized(in) + normalized(out));
        const double len = norm(h);
        side[i] = len > 0.0 ? left_perp(Vec2{h.x / len, h.y / len}) : Vec2{0.0, 0.0};
        const Vec2 a = xy(in);
        const Vec2 b = xy(out);
        turn[i] = std::abs(std::atan2(cross2(a, b), dot(a, b)));
    }
    std::vector<std::size_t> flips;  // flip between i and i+1
    for (std::size_t i = 0; i < n; ++i) {
        if (dot(side[i], side[(i + 1) % n]) < 0.0) flips.push_back(i);
    }
    // A long near-vertical stretch means the reversal point is not resolved by the samples.
    std::size_t run = 0;
    std::size_t longest = 0;
    std::size_t where = 0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const std::size_t i = k % n;
        const Vec3 d = samples[(i + 1) % n] - samples[i];
        run = std::abs(d.z) > (1.0 - kVerticalTolerance) * norm(d) ? run + 1 : 0;
        if (run > longest) {
            longest = run;
            where = i;
        }
        if (longest >= n) break;
    }
    if (longest > kMaxVerticalRun) {
        std::ostringstream msg;
        msg << "tangent is near-vertical over " << longest << " segments ending at sample " << where
            << "; refine the mesh";
        throw Error(ErrorCode::AmbiguousCusp, msg.str());
    }
    std::vector<std::size_t> marks;
    for (const std::size_t i : flips) {
        const std::size_t j = (i + 1) % n;
        marks.push_back(turn[j] > turn[i] ? j : i);
    }
    std::sort(marks.begin(), marks.end());
    return marks;
}

std::vector<ProfileCurve> extract_profile(std::shared_ptr<const TriMesh> mesh, const ProfileOptions& options)
{
    std::string last;
    try {
        return extract_once(mesh, options);
    } catch (const NotGeneric& ng) {
        last = ng.why;
    }
    double magnitude = options.initial_magnitude;
    for (int k = 0; k < options.max_retries; ++k, magnitude *= 2.0) {
        std::shared_ptr<const TriMesh> moved;
        try {
            moved = std::make_shared<const TriMesh>(perturb(*mesh, mix_seed(options.seed, k), magnitude));
        } catch (const Error&) {
            continue;
        }
        try {
            return extract_once(moved, options);
        } catch (const NotGeneric& ng) {
            last = ng.why;
        }
    }
    throw Error(ErrorCode::PersistentDegeneracy, "profile stayed non-generic after all retries: " + last);
}

std::vector<ProfileCurve> extract_profile(const TriMesh& mesh, std::uint64_t seed)
{
    ProfileOptions options;
    options.seed = seed;
    return extract_profile(std::make_shared<const TriMesh>(mesh), options);
}

std::vector<std::pair<std::size_t, Chirality>> detect_cusps(const ProfileCurve& p)
{
    const PLCurve3& c = p.curve.curve;
    std::vector<std::pair<std::size_t, Chirality>> out;
    for (const std::size_t v : find_projected_reversals(c.samples())) {
        out.emplace_back(v, cusp_chirality(c.samples(), v, kChiralityStencil));
    }
    return out;
}

ProfileLinkSummary profile_link_summary(const std::vector<ProfileCurve>& profiles, const RetryPolicy& retry)
{
    if (profiles.empty()) throw Error(ErrorCode::InvalidInput, "no profile components");
    ProfileLinkSummary s;
    s.components = profiles.size();
    s.linking.assign(profiles.size(), std::vector<int>(profiles.size(), 0));
    LinkingOptions opts;
    opts.retry = retry;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        s.writhes.push_back(writhe_definitional(profiles[i].curve.curve, opts));
        s.cusps.push_back(detect_cusps(profiles[i]));
        for (std::size_t j = 0; j < i; ++j) {
            const int lk = linking_number(profiles[i].curve.curve, profiles[j].curve.curve, retry);
            s.linking[i][j] = s.linking[j][i] = lk;
        }
    }
    return s;
}

}  // namespace profilekit
