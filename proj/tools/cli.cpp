#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "profilekit/diagram.hpp"
#include "profilekit/framing.hpp"
#include "profilekit/generators.hpp"
#include "profilekit/io.hpp"
#include "profilekit/obstruction.hpp"
#include "profilekit/profile.hpp"
#include "profilekit/svg.hpp"

namespace profilekit::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPresetScheme = "preset:";

struct Options {
    std::uint64_t seed = 0;
    std::optional<double> epsilon;
    std::string output;
    GeneratorParams params;
};

std::optional<std::string> preset_name(const std::string& arg)
{
    if (arg.rfind(kPresetScheme, 0) != 0) return std::nullopt;
    return arg.substr(kPresetScheme.size());
}

fs::path base_dir(const std::string& path)
{
    const fs::path p = fs::absolute(path);
    return p.parent_path();
}

/// Picks one curve out of documents that hold several (profile extraction output).
json select_component(const json& j, std::size_t component)
{
    if (!j.contains("components")) return j;
    const json& list = j.at("components");
    if (component >= list.size()) {
        throw Error(ErrorCode::InvalidInput, "component " + std::to_string(component) + " out of range (" +
                                                 std::to_string(list.size()) + " components)");
    }
    return list.at(component);
}

PLCurve3 load_curve(const std::string& arg, std::size_t component = 0)
{
    if (const auto name = preset_name(arg)) return preset_curve(*name);
    return curve_from_json(select_component(read_json(arg), component));
}

CurveOnSurface load_cos(const std::string& arg, std::size_t component = 0)
{
    if (preset_name(arg)) {
        throw Error(ErrorCode::InvalidInput, "presets are bare curves; a curve on a surface is required");
    }
    return curve_on_surface_from_json(select_component(read_json(arg), component), base_dir(arg));
}

PlanarDiagram diagram_of(const PLCurve3& curve, const RetryPolicy& retry)
{
    try {
        return project(curve);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateProjection) throw;
        return project_generic(curve, retry);
    }
}

PlanarDiagram load_diagram(const std::string& arg, const RetryPolicy& retry, std::size_t component = 0)
{
    if (const auto name = preset_name(arg)) {
        const Preset p = preset(*name);
        if (const auto* d = std::get_if<PlanarDiagram>(&p)) return *d;
        return diagram_of(std::get<PLCurve3>(p), retry);
    }
    return diagram_from_json(select_component(read_json(arg), component));
}

std::shared_ptr<const TriMesh> load_mesh(const std::string& arg)
{
    return std::make_shared<const TriMesh>(read_obj(arg));
}

void emit(std::ostream& out, const Options& opt, const json& j)
{
    if (opt.output.empty()) {
        out << j.dump(2) << '\n';
    } else {
        write_text(opt.output, j.dump(2) + "\n");
    }
}

/// Mesh reference for a curve document: a sidecar OBJ next to the output file, or inline.
json cos_document(const CurveOnSurface& c, const Options& opt)
{
    if (opt.output.empty()) return to_json_inline(c);
    fs::path sidecar = fs::path(opt.output);
    sidecar.replace_extension(".mesh.obj");
    write_obj(sidecar, *c.host);
    return to_json(c, sidecar.filename().string());
}

json report_json(const ObstructionReport& r)
{
    json j;
    j["writhe"] = r.writhe;
    j["surface_linking"] = r.surface_linking;
    j["deficit"] = r.deficit;
    j["realizable"] = r.realizable;
    json chir = json::array();
    for (const Chirality c : r.cusps.chiralities) chir.push_back(std::string(to_string(c)));
    j["cusps"] = {{"count", r.cusps.count},
                  {"chiralities", chir},
                  {"uniform_chirality", r.cusps.uniform_chirality},
                  {"even", r.cusps.even}};
    j["cusp_failure"] = r.cusp_failure ? json(*r.cusp_failure) : json(nullptr);
    json ex = json::array();
    for (const Exclusion& e : r.exclusions) ex.push_back({{"surface_class", e.surface_class}, {"reason", e.reason}});
    j["exclusions"] = ex;
    return j;
}

LinkingOptions linking_options(const Options& opt)
{
    LinkingOptions lo;
    lo.epsilon = opt.epsilon;
    lo.retry.seed = opt.seed;
    return lo;
}

RetryPolicy retry_policy(const Options& opt)
{
    RetryPolicy r;
    r.seed = opt.seed;
    return r;
}

// ---------------------------------------------------------------------------

int cmd_generate_preset(const std::string& name, const Options& opt, std::ostream& out, std::ostream& err)
{
    const Preset p = preset(name);
    if (const auto* d = std::get_if<PlanarDiagram>(&p)) {
        emit(out, opt, to_json(*d));
    } else {
        emit(out, opt, to_json(std::get<PLCurve3>(p)));
    }
    err << "preset " << name << '\n';
    return 0;
}

void emit_mesh(const TriMesh& mesh, const Options& opt, std::ostream& out, std::ostream& err)
{
    if (opt.output.empty()) {
        write_obj(out, mesh);
    } else {
        write_obj(fs::path(opt.output), mesh);
    }
    err << mesh.vertices().size() << " vertices, " << mesh.faces().size() << " faces, chi "
        << mesh.euler_characteristic() << '\n';
}

int cmd_generate_surface(int genus, double tilt_x, const Options& opt, std::ostream& out, std::ostream& err)
{
    TriMesh mesh = standard_surface(genus, opt.params);
    if (tilt_x != 0.0) {
        const double angle = tilt_x * 3.14159265358979323846 / 180.0;
        mesh = transform(mesh, rotation_about(Vec3{1.0, 0.0, 0.0}, angle, Point3{0.0, 0.0, 0.0}));
    }
    emit_mesh(mesh, opt, out, err);
    return 0;
}

int cmd_generate_torus_curve(int p, int q, const Options& opt, std::ostream& out, std::ostream& err)
{
    const CurveOnSurface c = torus_with_curve(p, q, opt.params);
    emit(out, opt, cos_document(c, opt));
    err << "(" << p << "," << q << ") curve, " << c.curve.size() << " samples\n";
    return 0;
}

int cmd_generate_tube(const std::string& core_arg, double radius, const Options& opt, std::ostream& out,
                      std::ostream& err)
{
    const PLCurve3 core = load_curve(core_arg);
    emit_mesh(tube_around_knot(core, radius, opt.params), opt, out, err);
    return 0;
}

int cmd_profile_extract(const std::string& mesh_arg, const Options& opt, std::ostream& out, std::ostream& err)
{
    const auto mesh = load_mesh(mesh_arg);
    ProfileOptions po;
    po.seed = opt.seed;
    const auto profiles = extract_profile(mesh, po);
    const bool moved = !profiles.empty() && profiles.front().curve.host != mesh;

    json mesh_ref;
    if (moved) {
        // The extraction ran on a rotated copy; ship that copy with the curves.
        if (opt.output.empty()) {
            mesh_ref = mesh_to_json(*profiles.front().curve.host);
        } else {
            fs::path sidecar = fs::path(opt.output);
            sidecar.replace_extension(".mesh.obj");
            write_obj(sidecar, *profiles.front().curve.host);
            mesh_ref = sidecar.filename().string();
        }
    } else if (opt.output.empty()) {
        mesh_ref = fs::absolute(mesh_arg).lexically_normal().string();
    } else {
        mesh_ref = fs::absolute(mesh_arg).lexically_relative(base_dir(opt.output)).string();
    }

    json comps = json::array();
    for (const ProfileCurve& p : profiles) {
        json j = to_json(p.curve.curve);
        j["anchors"] = p.curve.anchors;
        j["mesh"] = mesh_ref;
        j["component_id"] = p.component_id;
        j["fold_edges"] = p.fold_edges;
        comps.push_back(j);
    }
    emit(out, opt, json{{"components", comps}, {"perturbed", moved}});
    err << profiles.size() << " profile component(s)" << (moved ? " (mesh perturbed for genericity)" : "") << '\n';
    return 0;
}

int cmd_profile_summary(const std::string& mesh_arg, const Options& opt, std::ostream& out, std::ostream& err)
{
    ProfileOptions po;
    po.seed = opt.seed;
    const auto profiles = extract_profile(load_mesh(mesh_arg), po);
    const ProfileLinkSummary s = profile_link_summary(profiles, retry_policy(opt));

    json cusps = json::array();
    for (const auto& list : s.cusps) {
        json c = json::array();
        for (const auto& [v, chir] : list) c.push_back({{"vertex", v}, {"chirality", std::string(to_string(chir))}});
        cusps.push_back(c);
    }
    json j{{"components", s.components}, {"writhes", s.writhes}, {"linking", s.linking}, {"cusps", cusps}};
    emit(out, opt, j);

    bool unlinked = true;
    for (const auto& row : s.linking) {
        for (const int v : row) unlinked = unlinked && v == 0;
    }
    err << "components=" << s.components << (unlinked ? ", linking matrix zero" : ", linked") << '\n';
    return 0;
}

int cmd_writhe(const std::string& arg, const std::string& method, std::size_t component, const Options& opt,
               std::ostream& out, std::ostream& err)
{
    const PLCurve3 c = load_curve(arg, component);
    const int w = method == "definitional" ? writhe_definitional(c, linking_options(opt)) : writhe(c, retry_policy(opt));
    out << w << '\n';
    err << "writhe (" << method << ") = " << w << '\n';
    return 0;
}

int cmd_link(const std::string& a, const std::string& b, const std::string& method, const Options& opt,
             std::ostream& out, std::ostream& err)
{
    const PLCurve3 ca = load_curve(a);
    const PLCurve3 cb = load_curve(b);
    const int lk = method == "gauss" ? linking_number_gauss(ca, cb).value : linking_number(ca, cb, retry_policy(opt));
    out << lk << '\n';
    err << "linking number (" << method << ") = " << lk << '\n';
    return 0;
}

int cmd_surface_linking(const std::string& arg, std::size_t component, const Options& opt, std::ostream& out,
                        std::ostream& err)
{
    const PushOffLinking d = surface_linking_details(load_cos(arg, component), linking_options(opt));
    out << d.value << '\n';
    err << "surface linking = " << d.value << " (epsilon " << d.epsilon << ")\n";
    return 0;
}

int cmd_check_realizable(const std::string& arg, std::size_t component, const Options& opt, std::ostream& out,
                         std::ostream& err)
{
    const ObstructionReport r = check_realizable(load_cos(arg, component), linking_options(opt));
    emit(out, opt, report_json(r));
    err << "w=" << r.writhe << " lambda=" << r.surface_linking << " realizable=" << (r.realizable ? "true" : "false")
        << '\n';
    if (r.cusp_failure) err << *r.cusp_failure << '\n';
    return r.realizable ? 0 : 1;
}

int cmd_check_contour(const std::string& arg, bool mobius, std::size_t component, const Options& opt,
                      std::ostream& out, std::ostream& err)
{
    const ContourVerdict v = check_contour(load_diagram(arg, retry_policy(opt), component), !mobius);
    json chir = json::array();
    for (const Chirality c : v.chiralities) chir.push_back(std::string(to_string(c)));
    emit(out, opt,
         json{{"verdict", v.pass ? "PASS" : "FAIL"},
              {"cusp_count", v.cusp_count},
              {"chiralities", chir},
              {"violations", v.violations}});
    err << (v.pass ? "PASS" : "FAIL") << ", " << v.cusp_count << " cusp(s)\n";
    for (const auto& s : v.violations) err << "  " << s << '\n';
    return v.pass ? 0 : 1;
}

int cmd_check_exclude(const std::string& arg, const std::string& declared, bool sign_unknown, std::size_t component,
                      const Options& opt, std::ostream& out, std::ostream& err)
{
    const PlanarDiagram d = load_diagram(arg, retry_policy(opt), component);
    if (d.strands.size() != 1) throw Error(ErrorCode::InvalidInput, "exclusion rules take a single curve");
    DiagramFacts facts;
    if (!declared.empty()) {
        facts.knot_type = declared;
    } else if (const auto name = preset_name(arg)) {
        facts.knot_type = preset_knot_type(*name);
    }
    facts.crossings = d.crossings.size();
    facts.cusps = d.cusps.size();
    facts.sign_unknown = sign_unknown;
    const int w = d.self_crossing_sign_sum(0);
    const auto ex = exclude_surfaces(w, facts);

    json list = json::array();
    for (const Exclusion& e : ex) list.push_back({{"surface_class", e.surface_class}, {"reason", e.reason}});
    emit(out, opt,
         json{{"writhe", w},
              {"crossings", d.crossings.size()},
              {"cusps", d.cusps.size()},
              {"knot_type", facts.knot_type ? json(*facts.knot_type) : json(nullptr)},
              {"exclusions", list}});
    err << "writhe " << w << ", excluded:";
    for (const Exclusion& e : ex) err << ' ' << e.surface_class << ';';
    if (ex.empty()) err << " none";
    err << '\n';
    return 0;
}

int cmd_fix_ri(const std::string& arg, std::size_t component, const Options& opt, std::ostream& out,
               std::ostream& err)
{
    const json doc = select_component(read_json(arg), component);
    const CurveOnSurface in = curve_on_surface_from_json(doc, base_dir(arg));
    const CurveOnSurface fixed = ri_correct(in, linking_options(opt));

    json result;
    if (doc.at("mesh").is_string()) {
        fs::path mesh_path = doc.at("mesh").get<std::string>();
        if (mesh_path.is_relative()) mesh_path = base_dir(arg) / mesh_path;
        mesh_path = mesh_path.lexically_normal();
        const std::string ref = opt.output.empty() ? mesh_path.string()
                                                   : mesh_path.lexically_relative(base_dir(opt.output)).string();
        result = to_json(fixed, ref);
    } else {
        result = to_json_inline(fixed);
    }
    emit(out, opt, result);
    err << "inserted " << (fixed.curve.size() - in.curve.size()) << " sample(s)\n";
    return 0;
}

int cmd_render(const std::vector<std::string>& inputs, const SvgOptions& svg, const Options& opt, std::ostream& out,
               std::ostream& err)
{
    PlanarDiagram d;
    if (inputs.size() == 1) {
        d = load_diagram(inputs[0], retry_policy(opt));
    } else if (inputs.size() == 2) {
        const PLCurve3 a = load_curve(inputs[0]);
        const PLCurve3 b = load_curve(inputs[1]);
        try {
            d = project(a, b);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateProjection) throw;
            d = project_generic(a, b, retry_policy(opt));
        }
    } else {
        throw Error(ErrorCode::InvalidInput, "render takes one diagram or two curves");
    }
    const std::string text = render_svg(d, svg);
    if (opt.output.empty()) {
        out << text;
    } else {
        write_text(opt.output, text);
    }
    err << d.strands.size() << " strand(s), " << d.crossings.size() << " crossing(s), " << d.cusps.size()
        << " cusp(s)\n";
    return 0;
}

std::uint64_t default_seed()
{
    if (const char* s = std::getenv("PROFILEKIT_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, std::string("PROFILEKIT_SEED is not an unsigned integer: ") + s);
        }
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    std::function<int()> action;

    CLI::App app{"Profile curves of surfaces: extraction, invariants and realizability checks", "profilekit"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Seed for genericity perturbations (default $PROFILEKIT_SEED or 0)");
    double epsilon = 0.0;
    auto* eps_opt = app.add_option("--epsilon", epsilon, "Push-off distance override")->check(CLI::PositiveNumber);
    std::size_t component = 0;

    const auto add_output = [&](CLI::App* sub, const std::string& what) {
        sub->add_option("-o,--output", opt.output, what);
    };
    const auto add_resolution = [&](CLI::App* sub) {
        sub->add_option("--core-samples", opt.params.core_samples, "Samples along cores")->check(CLI::PositiveNumber);
        sub->add_option("--tube-samples", opt.params.tube_samples, "Samples around tubes")->check(CLI::PositiveNumber);
    };
    const auto add_component = [&](CLI::App* sub) {
        sub->add_option("--component", component, "Curve to use from a multi-component document");
    };

    // generate
    auto* gen = app.add_subcommand("generate", "Build meshes, curves and preset diagrams");
    gen->require_subcommand(1);
    std::string preset_arg;
    auto* gen_preset = gen->add_subcommand("preset", "Named curve or diagram");
    gen_preset->add_option("name", preset_arg, "figeight_w1, trefoil_standard, mixed_chirality_contour, model_cusp")
        ->required();
    add_output(gen_preset, "JSON output file");
    gen_preset->callback([&] { action = [&] { return cmd_generate_preset(preset_arg, opt, out, err); }; });

    int genus = 0;
    double tilt = 0.0;
    auto* gen_surface = gen->add_subcommand("surface", "Standardly embedded surface of genus g (OBJ)");
    gen_surface->add_option("--genus", genus, "Genus")->required()->check(CLI::NonNegativeNumber);
    gen_surface->add_option("--tilt-x", tilt, "Rotate about the x-axis by this many degrees");
    add_resolution(gen_surface);
    add_output(gen_surface, "OBJ output file");
    gen_surface->callback([&] { action = [&] { return cmd_generate_surface(genus, tilt, opt, out, err); }; });

    int p = 1;
    int q = 1;
    auto* gen_torus = gen->add_subcommand("torus-curve", "(p,q) curve on the torus of revolution");
    gen_torus->add_option("--p", p, "Longitudinal winding")->required();
    gen_torus->add_option("--q", q, "Meridional winding")->required();
    add_resolution(gen_torus);
    add_output(gen_torus, "JSON output file; the mesh is written alongside as <name>.mesh.obj");
    gen_torus->callback([&] { action = [&] { return cmd_generate_torus_curve(p, q, opt, out, err); }; });

    std::string core_arg;
    double radius = 0.0;
    auto* gen_tube = gen->add_subcommand("tube", "Tube around a closed core curve (OBJ)");
    gen_tube->add_option("--core", core_arg, "Core curve JSON or preset:NAME")->required();
    gen_tube->add_option("--radius", radius, "Tube radius (default 0.4 x min feature size)");
    add_resolution(gen_tube);
    add_output(gen_tube, "OBJ output file");
    gen_tube->callback([&] { action = [&] { return cmd_generate_tube(core_arg, radius, opt, out, err); }; });

    // profile
    auto* prof = app.add_subcommand("profile", "Profile curves of a mesh under vertical projection");
    prof->require_subcommand(1);
    std::string mesh_arg;
    auto* prof_extract = prof->add_subcommand("extract", "Fold cycles as curves on the surface");
    prof_extract->add_option("mesh", mesh_arg, "OBJ file")->required();
    add_output(prof_extract, "JSON output file");
    prof_extract->callback([&] { action = [&] { return cmd_profile_extract(mesh_arg, opt, out, err); }; });
    auto* prof_summary = prof->add_subcommand("summary", "Components, writhes, linking matrix, cusps");
    prof_summary->add_option("mesh", mesh_arg, "OBJ file")->required();
    add_output(prof_summary, "JSON output file");
    prof_summary->callback([&] { action = [&] { return cmd_profile_summary(mesh_arg, opt, out, err); }; });

    // invariants
    auto* inv = app.add_subcommand("invariants", "Writhe and linking numbers");
    inv->require_subcommand(1);
    std::string in_a;
    std::string in_b;
    std::string method;
    auto* inv_writhe = inv->add_subcommand("writhe", "Writhe of a curve");
    inv_writhe->add_option("curve", in_a, "Curve JSON or preset:NAME")->required();
    inv_writhe->add_option("--method", method, "diagram (signed crossings) or definitional (blackboard push-off)")
        ->check(CLI::IsMember({"diagram", "definitional"}))
        ->default_val("diagram");
    add_component(inv_writhe);
    inv_writhe->callback([&] { action = [&] { return cmd_writhe(in_a, method, component, opt, out, err); }; });
    auto* inv_link = inv->add_subcommand("link", "Linking number of two disjoint curves");
    inv_link->add_option("a", in_a, "First curve")->required();
    inv_link->add_option("b", in_b, "Second curve")->required();
    inv_link->add_option("--method", method, "diagram or gauss")
        ->check(CLI::IsMember({"diagram", "gauss"}))
        ->default_val("diagram");
    inv_link->callback([&] { action = [&] { return cmd_link(in_a, in_b, method, opt, out, err); }; });
    auto* inv_sl = inv->add_subcommand("surface-linking", "Linking with the surface-normal push-off");
    inv_sl->add_option("curve", in_a, "Curve-on-surface JSON")->required();
    add_component(inv_sl);
    inv_sl->callback([&] { action = [&] { return cmd_surface_linking(in_a, component, opt, out, err); }; });

    // check
    auto* chk = app.add_subcommand("check", "Realizability and exclusion criteria");
    chk->require_subcommand(1);
    auto* chk_real = chk->add_subcommand("realizable", "Can the curve be a profile curve of its surface?");
    chk_real->add_option("curve", in_a, "Curve-on-surface JSON")->required();
    add_component(chk_real);
    add_output(chk_real, "JSON output file");
    chk_real->callback([&] { action = [&] { return cmd_check_realizable(in_a, component, opt, out, err); }; });
    bool mobius = false;
    auto* chk_contour = chk->add_subcommand("contour", "Cusp parity and chirality of a contour diagram");
    chk_contour->add_option("diagram", in_a, "Diagram JSON, curve JSON or preset:NAME")->required();
    chk_contour->add_flag("--mobius", mobius, "The neighbourhood is a Moebius band (odd cusp count expected)");
    add_component(chk_contour);
    add_output(chk_contour, "JSON output file");
    chk_contour->callback([&] { action = [&] { return cmd_check_contour(in_a, mobius, component, opt, out, err); }; });
    std::string declared;
    bool sign_unknown = false;
    auto* chk_ex = chk->add_subcommand("exclude", "Surfaces that cannot have this curve as profile");
    chk_ex->add_option("curve", in_a, "Curve or diagram JSON, or preset:NAME")->required();
    chk_ex->add_option("--declare-knot", declared, "Knot type of the curve (unknot, trefoil, ...)");
    chk_ex->add_flag("--sign-unknown", sign_unknown, "Crossing signs are unreliable; only |w| is used");
    add_component(chk_ex);
    add_output(chk_ex, "JSON output file");
    chk_ex->callback([&] {
        action = [&] { return cmd_check_exclude(in_a, declared, sign_unknown, component, opt, out, err); };
    });

    // fix
    auto* fix = app.add_subcommand("fix", "Isotopies within the surface");
    fix->require_subcommand(1);
    auto* fix_ri = fix->add_subcommand("ri", "Add Reidemeister I kinks until w equals the surface linking number");
    fix_ri->add_option("curve", in_a, "Curve-on-surface JSON")->required();
    add_component(fix_ri);
    add_output(fix_ri, "JSON output file");
    fix_ri->callback([&] { action = [&] { return cmd_fix_ri(in_a, component, opt, out, err); }; });

    // render
    std::vector<std::string> inputs;
    SvgOptions svg;
    auto* render = app.add_subcommand("render", "SVG of a diagram, or of one or two curves");
    render->add_option("inputs", inputs, "Diagram JSON, curve JSON(s) or preset:NAME")->required()->expected(1, 2);
    render->add_option("--width", svg.width, "Image width")->check(CLI::PositiveNumber);
    render->add_option("--stroke", svg.stroke_width, "Stroke width")->check(CLI::PositiveNumber);
    add_output(render, "SVG output file");
    render->callback([&] { action = [&] { return cmd_render(inputs, svg, opt, out, err); }; });

    std::vector<const char*> argv{"profilekit"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        // Nested subcommands raise help from below; print the help of the deepest one parsed.
        if (e.get_exit_code() == 0) {
            out << e.what() << '\n';
            return 0;
        }
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        opt.seed = seed_opt->count() > 0 ? seed : default_seed();
        if (eps_opt->count() > 0) opt.epsilon = epsilon;
        if (!action) {
            err << "usage error: no command\n";
            return 2;
        }
        return action();
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace profilekit::cli
