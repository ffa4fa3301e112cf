#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "profilekit/geom.hpp"

namespace profilekit {

enum class Chirality { Right, Left };

std::string_view to_string(Chirality c);

struct Crossing {
    std::size_t over_strand = 0;
    std::size_t over_segment = 0;
    std::size_t under_strand = 0;
    std::size_t under_segment = 0;
    Vec2 point{};
    /// Parameters along the over and under segments.
    double over_t = 0.0;
    double under_t = 0.0;
    int sign = 0;
};

struct CuspMark {
    std::size_t strand = 0;
    std::size_t vertex = 0;
    Chirality chirality = Chirality::Right;
};

/// Projection to the xy-plane of one or two closed polygons, heights retained.
struct PlanarDiagram {
    std::vector<std::vector<Point3>> strands;
    std::vector<Crossing> crossings;
    std::vector<CuspMark> cusps;

    int self_crossing_sign_sum(std::size_t strand) const;
    int inter_crossing_sign_sum() const;
};

/// Chirality at vertex v of a closed polyline using the (v-k, v, v+k) stencil:
/// incoming direction u = p[v] - p[v-k], chord c = p[v+k] - p[v-k]; right iff cross2(u, c) < 0.
Chirality cusp_chirality(std::span<const Point3> strand, std::size_t v, std::size_t k = 1);

/// Strict projection; throws DegenerateProjection when the diagram is not generic.
PlanarDiagram project(const PLCurve3& curve);
PlanarDiagram project(const PLCurve3& a, const PLCurve3& b);

/// Diagram built from raw strands without embedding checks (e.g. user-supplied contours).
PlanarDiagram project_strands(std::vector<std::vector<Point3>> strands,
                              const std::vector<std::vector<std::size_t>>& cusp_marks);

struct RetryPolicy {
    std::uint64_t seed = 0;
    int max_retries = 8;
    /// First perturbation magnitude as a fraction of diameter; doubles each retry.
    double initial_magnitude = 1e-7;
};

/// Projection after the first seeded rotation that makes it generic (the input itself first).
PlanarDiagram project_generic(const PLCurve3& curve, const RetryPolicy& policy = {});
PlanarDiagram project_generic(const PLCurve3& a, const PLCurve3& b, const RetryPolicy& policy = {});

int writhe(const PLCurve3& curve, const RetryPolicy& policy = {});
int linking_number(const PLCurve3& a, const PLCurve3& b, const RetryPolicy& policy = {});

struct GaussLinking {
    int value = 0;
    double raw = 0.0;
    double residual = 0.0;
};

/// Linking number as the exact sum of signed solid angles over segment pairs.
GaussLinking linking_number_gauss(const PLCurve3& a, const PLCurve3& b);

}  // namespace profilekit
