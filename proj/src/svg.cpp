#include "profilekit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace profilekit {

namespace {

const char* const kPalette[] = {"#1f4e79", "#a23b2a", "#2e7d32", "#6a1b9a"};

struct Screen {
    double scale = 1.0;
    double ox = 0.0;
    double oy = 0.0;
    double height = 0.0;
    Vec2 map(const Point3& p) const { return {ox + scale * p.x, oy - scale * p.y}; }
};

std::string fmt(double v)
{
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << (std::abs(v) < 0.005 ? 0.0 : v);
    return s.str();
}

/// Closed polyline in screen space, addressed by arclength.
struct Loop {
    std::vector<Vec2> pts;
    std::vector<double> cum;  // cum[i] = arclength at pts[i]; cum[n] = total

    explicit Loop(std::vector<Vec2> p) : pts(std::move(p)), cum(pts.size() + 1, 0.0)
    {
        for (std::size_t i = 0; i < pts.size(); ++i) cum[i + 1] = cum[i] + norm(pts[(i + 1) % pts.size()] - pts[i]);
    }
    double total() const { return cum.back(); }
    Vec2 at(double s) const
    {
        s = std::fmod(s, total());
        if (s < 0) s += total();
        const auto it = std::upper_bound(cum.begin(), cum.end(), s);
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()) - 1, pts.size() - 1);
        const double len = cum[i + 1] - cum[i];
        const double t = len > 0 ? (s - cum[i]) / len : 0.0;
        return pts[i] + (pts[(i + 1) % pts.size()] - pts[i]) * t;
    }
    /// Points from arclength a to b (a < b, possibly wrapping past total()).
    std::vector<Vec2> piece(double a, double b) const
    {
        std::vector<Vec2> out{at(a)};
        const std::size_t n = pts.size();
        const double L = total();
        for (std::size_t lap = 0; lap < 2; ++lap) {
            for (std::size_t i = 0; i < n; ++i) {
                const double s = cum[i] + L * static_cast<double>(lap);
                if (s > a && s < b) out.push_back(pts[i]);
            }
        }
        out.push_back(at(b));
        return out;
    }
};

}  // namespace

std::string render_svg(const PlanarDiagram& d, const SvgOptions& options)
{
    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = -lo_x;
    double hi_y = -lo_x;
    for (const auto& s : d.strands) {
        for (const Point3& p : s) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    }
    if (!(hi_x >= lo_x)) throw Error(ErrorCode::InvalidInput, "empty diagram");
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    Screen screen;
    screen.scale = (options.width - 2.0 * options.margin) / span;
    screen.ox = options.margin - screen.scale * lo_x;
    screen.height = 2.0 * options.margin + screen.scale * (hi_y - lo_y);
    screen.oy = options.margin + screen.scale * hi_y;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(options.width) << "\" height=\""
        << fmt(screen.height) << "\" viewBox=\"0 0 " << fmt(options.width) << ' ' << fmt(screen.height) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double gap = 2.0 * options.stroke_width;
    for (std::size_t s = 0; s < d.strands.size(); ++s) {
        std::vector<Vec2> pts;
        for (const Point3& p : d.strands[s]) pts.push_back(screen.map(p));
        const Loop loop(std::move(pts));
        const char* color = kPalette[s % std::size(kPalette)];

        std::vector<double> breaks;
        for (const Crossing& c : d.crossings) {
            if (c.under_strand != s) continue;
            const std::size_t i = c.under_segment;
            breaks.push_back(loop.cum[i] + c.under_t * (loop.cum[i + 1] - loop.cum[i]));
        }
        std::sort(breaks.begin(), breaks.end());

        svg << "<g fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << fmt(options.stroke_width)
            << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
        if (breaks.empty()) {
            svg << "<path d=\"";
            for (std::size_t i = 0; i < loop.pts.size(); ++i) {
                svg << (i == 0 ? "M" : " L") << fmt(loop.pts[i].x) << ',' << fmt(loop.pts[i].y);
            }
            svg << " Z\"/>\n";
        } else {
            for (std::size_t k = 0; k < breaks.size(); ++k) {
                const double from = breaks[k] + 0.5 * gap;
                double to = (k + 1 < breaks.size() ? breaks[k + 1] : breaks[0] + loop.total()) - 0.5 * gap;
                if (to <= from) continue;
                const auto piece = loop.piece(from, to);
                svg << "<path d=\"";
                for (std::size_t i = 0; i < piece.size(); ++i) {
                    svg << (i == 0 ? "M" : " L") << fmt(piece[i].x) << ',' << fmt(piece[i].y);
                }
                svg << "\"/>\n";
            }
        }
        svg << "</g>\n";
    }

    // Cusp glyphs: the apex points along the bisector of the two branches, into the zero-angle side.
    const double size = options.cusp_size * options.stroke_width;
    for (const CuspMark& c : d.cusps) {
        const auto& strand = d.strands[c.strand];
        const std::size_t n = strand.size();
        const Vec2 at = screen.map(strand[c.vertex]);
        const Vec2 prev = screen.map(strand[(c.vertex + n - 1) % n]);
        const Vec2 next = screen.map(strand[(c.vertex + 1) % n]);
        Vec2 dir = (prev - at) + (next - at);
        double len = norm(dir);
        if (len < 1e-12) {
            dir = prev - at;
            len = std::max(norm(dir), 1e-12);
        }
        dir = dir * (1.0 / len);
        const Vec2 side = left_perp(dir) * (0.5 * size);
        const Vec2 apex = at + dir * size;
        const Vec2 b0 = at + side;
        const Vec2 b1 = at - side;
        svg << "<polygon points=\"" << fmt(apex.x) << ',' << fmt(apex.y) << ' ' << fmt(b0.x) << ',' << fmt(b0.y) << ' '
            << fmt(b1.x) << ',' << fmt(b1.y) << "\" fill=\"" << (c.chirality == Chirality::Right ? "#c62828" : "#1565c0")
            << "\" stroke=\"none\"><title>" << to_string(c.chirality) << " cusp</title></polygon>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace profilekit
