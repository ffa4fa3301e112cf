#pragma once

#include <optional>
#include <string>
#include <vector>

#include "profilekit/diagram.hpp"
#include "profilekit/framing.hpp"
#include "profilekit/geom.hpp"

namespace profilekit {

struct CuspSummary {
    std::size_t count = 0;
    std::vector<Chirality> chiralities;
    bool uniform_chirality = true;
    bool even = true;
};

struct Exclusion {
    std::string surface_class;
    std::string reason;
};

struct ObstructionReport {
    int writhe = 0;
    int surface_linking = 0;
    bool realizable = false;
    /// surface_linking - writhe
    int deficit = 0;
    CuspSummary cusps;
    /// Set when the cusp data alone rules the curve out as a profile curve.
    std::optional<std::string> cusp_failure;
    std::vector<Exclusion> exclusions;
};

CuspSummary summarize_cusps(const PLCurve3& curve);

ObstructionReport check_realizable(const CurveOnSurface& c, const LinkingOptions& options = {});

/// Returns a curve isotopic to c within its surface whose writhe equals its surface linking
/// number; one Reidemeister I kink per unit of deficit, each placed where the curve crosses a
/// fold edge of the surface.
CurveOnSurface ri_correct(const CurveOnSurface& c, const LinkingOptions& options = {});

struct ContourVerdict {
    bool pass = true;
    std::size_t cusp_count = 0;
    std::vector<Chirality> chiralities;
    std::vector<std::string> violations;
};

ContourVerdict check_contour(const PlanarDiagram& d, bool orientable_neighborhood = true);

struct DiagramFacts {
    /// "unknot", "trefoil", ... as declared by the caller; never computed.
    std::optional<std::string> knot_type;
    std::optional<std::size_t> crossings;
    std::size_t cusps = 0;
    /// Over/under information is unreliable, so only |w| is trusted.
    bool sign_unknown = false;
};

std::vector<Exclusion> exclude_surfaces(int writhe, const DiagramFacts& facts);

}  // namespace profilekit
