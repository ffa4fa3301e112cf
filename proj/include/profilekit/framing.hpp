#pragma once

#include <optional>
#include <vector>

#include "profilekit/diagram.hpp"
#include "profilekit/geom.hpp"

namespace profilekit {

enum class FramingKind { Blackboard, Surface };

std::string_view to_string(FramingKind k);

/// A curve with one unit normal per sample.
struct FramedCurve {
    PLCurve3 curve;
    std::vector<Vec3> normals;
    FramingKind kind = FramingKind::Blackboard;
};

/// Horizontal unit normal field, continuous along the curve and switching sides of the
/// projection at each cusp mark. Throws VerticalTangent at unmarked vertical tangents or
/// unmarked reversals of the projected tangent, FramingNotClosed when the field cannot close up.
FramedCurve blackboard_framing(const PLCurve3& curve);

/// Anchor-face normals of the host mesh.
FramedCurve surface_framing(const CurveOnSurface& c);

/// Sample-wise displacement by epsilon along the framing, checked disjoint from the input.
PLCurve3 push_off(const FramedCurve& f, double epsilon);

struct LinkingOptions {
    /// Overrides the automatic push-off distance.
    std::optional<double> epsilon;
    RetryPolicy retry{};
};

struct PushOffLinking {
    int value = 0;
    double epsilon = 0.0;
};

/// Distance from each sample to the mesh faces sharing no vertex with its anchor, minimised.
double surface_clearance(const CurveOnSurface& c);

/// lk(push-off along the surface normal framing, curve), gated on agreement at epsilon/2.
PushOffLinking surface_linking_details(const CurveOnSurface& c, const LinkingOptions& options = {});
int surface_linking(const CurveOnSurface& c, const LinkingOptions& options = {});

/// lk(blackboard push-off, curve), gated on agreement at epsilon/2.
PushOffLinking writhe_definitional_details(const PLCurve3& curve, const LinkingOptions& options = {});
int writhe_definitional(const PLCurve3& curve, const LinkingOptions& options = {});

}  // namespace profilekit
