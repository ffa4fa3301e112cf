#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "profilekit/diagram.hpp"
#include "profilekit/geom.hpp"

namespace profilekit {

/// One closed component of the fold locus. Samples are fold-edge midpoints, anchored on the
/// up-facing face of each edge; cusp marks sit where the projected direction reverses.
struct ProfileCurve {
    CurveOnSurface curve;
    std::size_t component_id = 0;
    /// Fold edges (indices into the host's edge list), in sample order.
    std::vector<std::size_t> fold_edges;
};

struct ProfileOptions {
    std::uint64_t seed = 0;
    /// Faces with |normal.z| below this are treated as vertical (non-generic).
    double normal_tolerance = 1e-9;
    int max_retries = 8;
    /// First rotation angle used to restore genericity; doubles each retry.
    double initial_magnitude = 1e-6;
};

/// True for edges whose two faces point to opposite sides of the horizontal plane.
bool is_fold_edge(const TriMesh& mesh, std::size_t edge);

/// Fold cycles of the mesh under vertical projection. If the mesh is not generic it is rotated
/// slightly (seeded) and the cycles of the rotated copy are returned; their host then differs
/// from the input.
std::vector<ProfileCurve> extract_profile(std::shared_ptr<const TriMesh> mesh, const ProfileOptions& options = {});
std::vector<ProfileCurve> extract_profile(const TriMesh& mesh, std::uint64_t seed = 0);

/// Cusps of a closed sample polygon: samples where the continuous horizontal normal switches
/// to the other side of the projection. Throws AmbiguousCusp when reversals cluster.
std::vector<std::size_t> find_projected_reversals(std::span<const Point3> samples);

std::vector<std::pair<std::size_t, Chirality>> detect_cusps(const ProfileCurve& p);

struct ProfileLinkSummary {
    std::size_t components = 0;
    std::vector<int> writhes;
    /// Symmetric, zero diagonal.
    std::vector<std::vector<int>> linking;
    std::vector<std::vector<std::pair<std::size_t, Chirality>>> cusps;
};

ProfileLinkSummary profile_link_summary(const std::vector<ProfileCurve>& profiles, const RetryPolicy& retry = {});

}  // namespace profilekit
