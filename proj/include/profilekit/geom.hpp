#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace profilekit {

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    constexpr bool operator==(const Vec3&) const = default;
};

using Point3 = Vec3;

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
inline bool is_finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

inline constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::sqrt(dot(v, v)); }
inline constexpr Vec2 xy(const Vec3& v) { return {v.x, v.y}; }
/// Counter-clockwise perpendicular.
inline constexpr Vec2 left_perp(const Vec2& v) { return {-v.y, v.x}; }

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
    InvalidInput,
    NotEmbedded,
    DegenerateSegment,
    UnmarkedReversal,
    NonManifold,
    InconsistentOrientation,
    DegenerateFace,
    SelfIntersecting,
    PerturbationTooLarge,
    AnchorMismatch,
    DegenerateProjection,
    PersistentDegeneracy,
    CurvesIntersect,
    ResidualTooLarge,
    VerticalTangent,
    FramingNotClosed,
    PushOffCollision,
    UnstableEpsilon,
    AmbiguousCusp,
    NoRoomForKink,
    InsufficientFacts,
    ResolutionTooLow,
    TubeTooFat,
    UnknownPreset,
    Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

/// Elements closer than this fraction of the object diameter count as touching.
inline constexpr double kEmbedTolerance = 1e-9;
/// Consecutive segment directions within this angle of pi at an unmarked sample are rejected.
inline constexpr double kReversalAngle = 1e-6;

// ---------------------------------------------------------------------------
// Closed polygonal curve
// ---------------------------------------------------------------------------

/// Closed embedded polygon in R^3. Sample i connects to sample (i+1) mod n.
/// Instances are only produced by build_curve and are immutable.
class PLCurve3 {
public:
    std::span<const Point3> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const Point3& operator[](std::size_t i) const { return samples_[i]; }
    const Point3& at_wrapped(std::ptrdiff_t i) const;

    /// Sorted, unique sample indices flagged as cusps.
    const std::vector<std::size_t>& cusp_marks() const { return cusps_; }
    bool is_cusp(std::size_t i) const;

    /// Segment i runs from sample i to sample i+1 (wrapping).
    std::pair<Point3, Point3> segment(std::size_t i) const;
    double diameter() const { return diameter_; }

    /// Same samples traversed backwards; cusp marks follow their samples.
    PLCurve3 reversed() const;

private:
    friend PLCurve3 build_curve(std::vector<Point3>, std::vector<std::size_t>);
    PLCurve3() = default;

    std::vector<Point3> samples_;
    std::vector<std::size_t> cusps_;
    double diameter_ = 0.0;
};

PLCurve3 build_curve(std::vector<Point3> points, std::vector<std::size_t> cusp_marks = {});

// ---------------------------------------------------------------------------
// Triangle mesh
// ---------------------------------------------------------------------------

using Face = std::array<std::size_t, 3>;

struct Edge {
    std::size_t v0 = 0;  // v0 < v1
    std::size_t v1 = 0;
    std::array<std::size_t, 2> faces{};
};

struct MeshBuildOptions {
    /// All-pairs triangle intersection test at build time.
    bool check_self_intersection = true;
};

/// Closed, coherently oriented, embedded triangle mesh with cached normals and edge adjacency.
class TriMesh {
public:
    std::span<const Point3> vertices() const { return vertices_; }
    std::span<const Face> faces() const { return faces_; }
    std::span<const Vec3> face_normals() const { return normals_; }
    std::span<const Edge> edges() const { return edges_; }
    const std::array<std::size_t, 3>& face_edges(std::size_t f) const { return face_edges_[f]; }

    std::size_t edge_index(std::size_t a, std::size_t b) const;
    std::array<Point3, 3> triangle(std::size_t f) const;
    double face_area(std::size_t f) const;
    double face_inradius(std::size_t f) const;
    double diameter() const { return diameter_; }

    bool faces_share_edge(std::size_t f, std::size_t g) const;
    bool faces_share_vertex(std::size_t f, std::size_t g) const;

    /// Euler characteristic V - E + F.
    long euler_characteristic() const;

private:
    friend TriMesh build_mesh(std::vector<Point3>, std::vector<Face>, const MeshBuildOptions&);
    TriMesh() = default;

    std::vector<Point3> vertices_;
    std::vector<Face> faces_;
    std::vector<Vec3> normals_;
    std::vector<Edge> edges_;
    std::vector<std::array<std::size_t, 3>> face_edges_;
    std::unordered_map<std::uint64_t, std::size_t> edge_lookup_;
    double diameter_ = 0.0;
};

TriMesh build_mesh(std::vector<Point3> vertices, std::vector<Face> faces, const MeshBuildOptions& options = {});

/// Same geometry with every face's winding reversed.
TriMesh flip_orientation(const TriMesh& mesh, const MeshBuildOptions& options = {});

// ---------------------------------------------------------------------------
// Curve on a surface
// ---------------------------------------------------------------------------

struct CurveOnSurface {
    PLCurve3 curve;
    std::vector<std::size_t> anchors;
    std::shared_ptr<const TriMesh> host;
};

CurveOnSurface build_curve_on_surface(PLCurve3 curve, std::vector<std::size_t> anchors,
                                      std::shared_ptr<const TriMesh> host);

// ---------------------------------------------------------------------------
// Rigid motions and perturbation
// ---------------------------------------------------------------------------

struct RigidMotion {
    std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major
    Point3 center{};

    Point3 apply(const Point3& p) const;
    Vec3 rotate(const Vec3& v) const;
};

/// Rotation by `angle` radians about `axis` (unit) through `center`.
RigidMotion rotation_about(const Vec3& axis, double angle, const Point3& center);

/// The rotation perturb() would apply for this seed and magnitude.
RigidMotion perturbation_motion(std::span<const Point3> points, std::uint64_t seed, double magnitude);

PLCurve3 transform(const PLCurve3& curve, const RigidMotion& motion);
TriMesh transform(const TriMesh& mesh, const RigidMotion& motion, const MeshBuildOptions& options = {});
CurveOnSurface transform(const CurveOnSurface& c, const RigidMotion& motion);

PLCurve3 perturb(const PLCurve3& curve, std::uint64_t seed, double magnitude);
TriMesh perturb(const TriMesh& mesh, std::uint64_t seed, double magnitude);
CurveOnSurface perturb(const CurveOnSurface& c, std::uint64_t seed, double magnitude);

PLCurve3 scaled(const PLCurve3& curve, double s);

double min_feature_size(const PLCurve3& curve);
double min_feature_size(const TriMesh& mesh);

// ---------------------------------------------------------------------------
// Primitives shared by several modules
// ---------------------------------------------------------------------------

double segment_distance(const Point3& p0, const Point3& p1, const Point3& q0, const Point3& q1);
double point_triangle_distance(const Point3& p, const Point3& a, const Point3& b, const Point3& c);
bool segment_hits_triangle(const Point3& p0, const Point3& p1, const Point3& a, const Point3& b, const Point3& c);
bool triangles_touch(const std::array<Point3, 3>& t, const std::array<Point3, 3>& u, double tol);
double max_pairwise_distance(std::span<const Point3> points);
/// Minimum distance between the two closed polygons.
double curve_distance(const PLCurve3& a, const PLCurve3& b);

}  // namespace profilekit
