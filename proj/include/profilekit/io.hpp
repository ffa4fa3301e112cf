#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "profilekit/diagram.hpp"
#include "profilekit/framing.hpp"
#include "profilekit/geom.hpp"

namespace profilekit {

using nlohmann::json;

// OBJ subset: `v x y z` and `f a b c` lines (1-based, triangles only). Texture/normal
// suffixes such as `f 1/1/1 2/2/2 3/3/3` are accepted and ignored; everything else is skipped.
TriMesh parse_obj(std::istream& in);
TriMesh read_obj(const std::filesystem::path& path);
void write_obj(std::ostream& out, const TriMesh& mesh);
void write_obj(const std::filesystem::path& path, const TriMesh& mesh);

json to_json(const PLCurve3& curve);
PLCurve3 curve_from_json(const json& j);

/// `mesh` holds either a path (resolved against base_dir) or an inline {vertices, faces} object.
json to_json(const CurveOnSurface& c, const std::string& mesh_ref);
json to_json_inline(const CurveOnSurface& c);
CurveOnSurface curve_on_surface_from_json(const json& j, const std::filesystem::path& base_dir);

json mesh_to_json(const TriMesh& mesh);
TriMesh mesh_from_json(const json& j);

json to_json(const FramedCurve& f);
FramedCurve framed_curve_from_json(const json& j);

json to_json(const PlanarDiagram& d);
/// Crossings are recomputed from the strands; cusp chirality is taken from the document when
/// present, otherwise classified.
PlanarDiagram diagram_from_json(const json& j);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace profilekit
