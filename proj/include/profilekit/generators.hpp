#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "profilekit/diagram.hpp"
#include "profilekit/geom.hpp"

namespace profilekit {

struct GeneratorParams {
    /// Samples along cores (and around the torus axis).
    std::size_t core_samples = 96;
    /// Samples around tubes (and around the torus meridian).
    std::size_t tube_samples = 24;
    /// Torus major radius R.
    double major_radius = 2.0;
    /// Torus minor radius a (< R).
    double minor_radius = 0.8;
    /// Tube radius around knot cores; 0 selects 0.4 x min_feature_size(core).
    double tube_radius = 0.0;
    /// Octahedron subdivision depth for the sphere.
    int sphere_subdivisions = 3;
};

TriMesh sphere_mesh(int subdivisions, double radius = 1.0);
TriMesh torus_mesh(const GeneratorParams& params = {});

/// Standardly embedded genus-g surface: a sphere for g = 0, the torus of revolution for g = 1,
/// and for g >= 2 the boundary of a thickened planar slab around a row of g pierced cells.
TriMesh standard_surface(int genus, const GeneratorParams& params = {});

/// The (p,q) curve (theta, phi) = (2 pi p t, -2 pi q t) on torus_mesh(params), oriented so its
/// surface linking number is +pq. One sample per face crossed, anchored exactly.
CurveOnSurface torus_with_curve(int p, int q, const GeneratorParams& params = {});

/// Rotation-minimising tube of radius r around a closed core; r = 0 takes params.tube_radius,
/// or 0.4 x min_feature_size(core) if that is 0 too.
TriMesh tube_around_knot(const PLCurve3& core, double r, const GeneratorParams& params = {});

using Preset = std::variant<PLCurve3, PlanarDiagram>;

const std::vector<std::string>& preset_names();
Preset preset(std::string_view name);
PLCurve3 preset_curve(std::string_view name);
/// Knot type the preset is known to have ("unknot", "trefoil").
std::optional<std::string> preset_knot_type(std::string_view name);

}  // namespace profilekit
