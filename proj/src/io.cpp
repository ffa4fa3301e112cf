#include "profilekit/io.hpp"

#include <fstream>
#include <sstream>

namespace profilekit {

namespace {

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Point3 point_from(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::InvalidInput, "expected [x, y, z]");
    for (const auto& c : j) {
        if (!c.is_number()) throw Error(ErrorCode::InvalidInput, "coordinate is not a number");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Point3> points_from(const json& j, const char* field)
{
    if (!j.contains(field) || !j.at(field).is_array()) {
        throw Error(ErrorCode::InvalidInput, std::string("missing array field '") + field + "'");
    }
    std::vector<Point3> pts;
    pts.reserve(j.at(field).size());
    for (const auto& p : j.at(field)) pts.push_back(point_from(p));
    return pts;
}

std::vector<std::size_t> indices_from(const json& j, const char* field)
{
    std::vector<std::size_t> out;
    if (!j.contains(field)) return out;
    if (!j.at(field).is_array()) throw Error(ErrorCode::InvalidInput, std::string("'") + field + "' is not an array");
    for (const auto& v : j.at(field)) {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw Error(ErrorCode::InvalidInput, std::string("'") + field + "' entries must be non-negative integers");
        }
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

std::size_t parse_obj_index(const std::string& token, std::size_t vertex_count, std::size_t line_no)
{
    const std::string head = token.substr(0, token.find('/'));
    long long idx = 0;
    try {
        std::size_t used = 0;
        idx = std::stoll(head, &used);
        if (used != head.size()) throw std::invalid_argument(head);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "bad face index on OBJ line " + std::to_string(line_no));
    }
    if (idx < 0) idx += static_cast<long long>(vertex_count) + 1;  // relative indices
    if (idx < 1 || static_cast<std::size_t>(idx) > vertex_count) {
        throw Error(ErrorCode::InvalidInput, "face index out of range on OBJ line " + std::to_string(line_no));
    }
    return static_cast<std::size_t>(idx - 1);
}

}  // namespace

TriMesh parse_obj(std::istream& in)
{
    std::vector<Point3> verts;
    std::vector<Face> faces;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Point3 p;
            if (!(ls >> p.x >> p.y >> p.z)) {
                throw Error(ErrorCode::InvalidInput, "bad vertex on OBJ line " + std::to_string(line_no));
            }
            verts.push_back(p);
        } else if (tag == "f") {
            std::vector<std::string> tokens;
            for (std::string t; ls >> t;) tokens.push_back(t);
            if (tokens.size() != 3) {
                throw Error(ErrorCode::InvalidInput, "only triangles are supported (OBJ line " + std::to_string(line_no) + ")");
            }
            faces.push_back({parse_obj_index(tokens[0], verts.size(), line_no),
                             parse_obj_index(tokens[1], verts.size(), line_no),
                             parse_obj_index(tokens[2], verts.size(), line_no)});
        }
    }
    return build_mesh(std::move(verts), std::move(faces));
}

TriMesh read_obj(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
    return parse_obj(in);
}

void write_obj(std::ostream& out, const TriMesh& mesh)
{
    out.precision(17);
    for (const Point3& v : mesh.vertices()) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const Face& f : mesh.faces()) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_obj(const std::filesystem::path& path, const TriMesh& mesh)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    write_obj(out, mesh);
}

json to_json(const PLCurve3& curve)
{
    json samples = json::array();
    for (const Point3& p : curve.samples()) samples.push_back(point_json(p));
    return {{"samples", samples}, {"cusps", curve.cusp_marks()}};
}

PLCurve3 curve_from_json(const json& j)
{
    return build_curve(points_from(j, "samples"), indices_from(j, "cusps"));
}

json mesh_to_json(const TriMesh& mesh)
{
    json verts = json::array();
    for (const Point3& p : mesh.vertices()) verts.push_back(point_json(p));
    json faces = json::array();
    for (const Face& f : mesh.faces()) faces.push_back({f[0], f[1], f[2]});
    return {{"vertices", verts}, {"faces", faces}};
}

TriMesh mesh_from_json(const json& j)
{
    std::vector<Point3> verts = points_from(j, "vertices");
    std::vector<Face> faces;
    if (!j.contains("faces") || !j.at("faces").is_array()) throw Error(ErrorCode::InvalidInput, "missing 'faces'");
    for (const auto& f : j.at("faces")) {
        if (!f.is_array() || f.size() != 3) throw Error(ErrorCode::InvalidInput, "faces must be index triples");
        Face face{};
        for (std::size_t k = 0; k < 3; ++k) {
            if (!f[k].is_number_integer() || f[k].get<long long>() < 0 ||
                f[k].get<std::size_t>() >= verts.size()) {
                throw Error(ErrorCode::InvalidInput, "face index out of range");
            }
            face[k] = f[k].get<std::size_t>();
        }
        faces.push_back(face);
    }
    return build_mesh(std::move(verts), std::move(faces));
}

json to_json(const CurveOnSurface& c, const std::string& mesh_ref)
{
    json j = to_json(c.curve);
    j["anchors"] = c.anchors;
    j["mesh"] = mesh_ref;
    return j;
}

json to_json_inline(const CurveOnSurface& c)
{
    json j = to_json(c.curve);
    j["anchors"] = c.anchors;
    j["mesh"] = mesh_to_json(*c.host);
    return j;
}

CurveOnSurface curve_on_surface_from_json(const json& j, const std::filesystem::path& base_dir)
{
    if (!j.contains("mesh")) throw Error(ErrorCode::InvalidInput, "curve has no 'mesh'; a curve on a surface is required");
    if (!j.contains("anchors")) throw Error(ErrorCode::InvalidInput, "curve has no 'anchors'");
    const json& m = j.at("mesh");
    std::shared_ptr<const TriMesh> host;
    if (m.is_string()) {
        std::filesystem::path p = m.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        host = std::make_shared<const TriMesh>(read_obj(p));
    } else if (m.is_object()) {
        host = std::make_shared<const TriMesh>(mesh_from_json(m));
    } else {
        throw Error(ErrorCode::InvalidInput, "'mesh' must be a path or an inline mesh");
    }
    return build_curve_on_surface(curve_from_json(j), indices_from(j, "anchors"), std::move(host));
}

json to_json(const FramedCurve& f)
{
    json j = to_json(f.curve);
    json normals = json::array();
    for (const Vec3& v : f.normals) normals.push_back(point_json(v));
    j["normals"] = normals;
    j["kind"] = std::string(to_string(f.kind));
    return j;
}

FramedCurve framed_curve_from_json(const json& j)
{
    PLCurve3 curve = curve_from_json(j);
    std::vector<Vec3> normals = points_from(j, "normals");
    if (normals.size() != curve.size()) throw Error(ErrorCode::InvalidInput, "one normal per sample is required");
    const std::string kind = j.value("kind", "blackboard");
    if (kind != "blackboard" && kind != "surface") throw Error(ErrorCode::InvalidInput, "unknown framing kind " + kind);
    return FramedCurve{std::move(curve), std::move(normals),
                       kind == "surface" ? FramingKind::Surface : FramingKind::Blackboard};
}

json to_json(const PlanarDiagram& d)
{
    json strands = json::array();
    for (const auto& s : d.strands) {
        json pts = json::array();
        for (const Point3& p : s) pts.push_back(point_json(p));
        strands.push_back(pts);
    }
    json crossings = json::array();
    for (const Crossing& c : d.crossings) {
        crossings.push_back({{"over", {{"strand", c.over_strand}, {"segment", c.over_segment}, {"t", c.over_t}}},
                             {"under", {{"strand", c.under_strand}, {"segment", c.under_segment}, {"t", c.under_t}}},
                             {"point", {c.point.x, c.point.y}},
                             {"sign", c.sign}});
    }
    json cusps = json::array();
    for (const CuspMark& c : d.cusps) {
        cusps.push_back({{"strand", c.strand}, {"vertex", c.vertex}, {"chirality", std::string(to_string(c.chirality))}});
    }
    return {{"strands", strands}, {"crossings", crossings}, {"cusps", cusps}};
}

PlanarDiagram diagram_from_json(const json& j)
{
    if (!j.contains("strands") || !j.at("strands").is_array()) {
        // A bare curve document is accepted as a one-strand diagram.
        if (j.contains("samples")) {
            json wrapped = {{"strands", json::array({j.at("samples")})}, {"cusps", json::array()}};
            for (const auto& v : indices_from(j, "cusps")) wrapped["cusps"].push_back({{"strand", 0}, {"vertex", v}});
            return diagram_from_json(wrapped);
        }
        throw Error(ErrorCode::InvalidInput, "diagram needs 'strands'");
    }
    std::vector<std::vector<Point3>> strands;
    for (const auto& s : j.at("strands")) {
        std::vector<Point3> pts;
        if (!s.is_array()) throw Error(ErrorCode::InvalidInput, "strand must be an array of points");
        for (const auto& p : s) pts.push_back(point_from(p));
        strands.push_back(std::move(pts));
    }
    std::vector<std::vector<std::size_t>> marks(strands.size());
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> given;
    if (j.contains("cusps")) {
        for (const auto& c : j.at("cusps")) {
            const std::size_t s = c.value("strand", std::size_t{0});
            if (!c.contains("vertex") || !c.at("vertex").is_number_integer()) {
                throw Error(ErrorCode::InvalidInput, "cusp needs an integer 'vertex'");
            }
            const std::size_t v = c.at("vertex").get<std::size_t>();
            if (s >= strands.size() || v >= strands[s].size()) throw Error(ErrorCode::InvalidInput, "cusp index out of range");
            marks[s].push_back(v);
            if (c.contains("chirality")) given.emplace_back(s, v, c.at("chirality").get<std::string>());
        }
    }
    PlanarDiagram d = project_strands(std::move(strands), marks);
    for (const auto& [s, v, label] : given) {
        if (label != "right" && label != "left") throw Error(ErrorCode::InvalidInput, "chirality must be 'right' or 'left'");
        for (CuspMark& c : d.cusps) {
            if (c.strand == s && c.vertex == v) c.chirality = label == "right" ? Chirality::Right : Chirality::Left;
        }
    }
    return d;
}

json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    out << text;
}

}  // namespace profilekit
