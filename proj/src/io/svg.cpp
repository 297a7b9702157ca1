#include "hexmix/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hexmix/shape.hpp"

namespace hexmix {

namespace {

const double kSqrt3Half = std::sqrt(3.0) / 2.0;

struct Frame {
    double unit = 16, margin = 8, xmin = 0, ymax = 0, width = 0, height = 0;

    Frame(const HexDomain& d, double u) : unit(u) {
        double xmax = -1e300, ymin = 1e300;
        xmin = 1e300;
        ymax = -1e300;
        for (int i = 0; i < d.size(); ++i) {
            const Vertex v = d.vertex(i);
            const double sx = v.x - v.y / 2.0, sy = v.y * kSqrt3Half;
            xmin = std::min(xmin, sx);
            xmax = std::max(xmax, sx);
            ymin = std::min(ymin, sy);
            ymax = std::max(ymax, sy);
        }
        width = (xmax - xmin) * unit + 2 * margin;
        height = (ymax - ymin) * unit + 2 * margin;
    }

    // Pixel coordinates of the lattice point (x, y), reals allowed.
    std::pair<double, double> px(double x, double y) const {
        return {margin + (x - y / 2.0 - xmin) * unit, margin + (ymax - y * kSqrt3Half) * unit};
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

void points_attr(std::ostream& os, const Frame& fr, const std::vector<std::pair<double, double>>& pts) {
    os << "points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto [a, b] = fr.px(pts[i].first, pts[i].second);
        os << (i ? " " : "") << num(a) << ',' << num(b);
    }
    os << '"';
}

const char* fill(LozengeType t) {
    switch (t) {
        case LozengeType::Horizontal: return "#e9c46a";
        case LozengeType::Vertical: return "#4f7cac";
        case LozengeType::Diagonal: return "#c8553d";
    }
    return "#000000";
}

const char* type_name(LozengeType t) {
    switch (t) {
        case LozengeType::Horizontal: return "h";
        case LozengeType::Vertical: return "v";
        case LozengeType::Diagonal: return "d";
    }
    return "?";
}

}  // namespace

std::vector<Lozenge> lozenges(const HeightField& f) {
    const HexDomain& d = f.domain();
    std::vector<Lozenge> out;
    auto in = [&](int x, int y) { return d.contains(x, y); };
    for (int i = 0; i < d.size(); ++i) {
        const Vertex v = d.vertex(i);
        const int x = v.x, y = v.y, h = f[i];
        if (in(x + 1, y) && in(x, y - 1) && in(x + 1, y + 1) && f.at(x + 1, y) - h == -1)
            out.push_back({LozengeType::Horizontal, {{{x, y - 1}, {x + 1, y}, {x + 1, y + 1}, {x, y}}}});
        if (in(x, y + 1) && in(x - 1, y) && in(x + 1, y + 1) && f.at(x, y + 1) - h == 0)
            out.push_back({LozengeType::Vertical, {{{x - 1, y}, {x, y}, {x + 1, y + 1}, {x, y + 1}}}});
        if (in(x + 1, y + 1) && in(x + 1, y) && in(x, y + 1) && f.at(x + 1, y + 1) - h == 1)
            out.push_back({LozengeType::Diagonal, {{{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}}}});
    }
    return out;
}

std::string render_svg(const HeightField& f, const SvgOptions& opt) {
    const HexDomain& d = f.domain();
    const Frame fr(d, opt.unit);
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(fr.width) << "\" height=\"" << num(fr.height)
       << "\" viewBox=\"0 0 " << num(fr.width) << ' ' << num(fr.height) << "\">\n";
    if (!opt.comments.empty()) {
        os << "<!--\n";
        for (const auto& c : opt.comments) {
            std::string s = c;
            for (std::size_t p; (p = s.find("--")) != std::string::npos;) s.replace(p, 2, "- -");
            os << s << '\n';
        }
        os << "-->\n";
    }
    os << "<g id=\"lozenges\" stroke=\"#222222\" stroke-width=\"0.6\" stroke-linejoin=\"round\">\n";
    for (const Lozenge& l : lozenges(f)) {
        std::vector<std::pair<double, double>> pts;
        for (const Vertex& v : l.corners) pts.emplace_back(v.x, v.y);
        os << "<polygon class=\"lozenge " << type_name(l.type) << "\" fill=\"" << fill(l.type) << "\" ";
        points_attr(os, fr, pts);
        os << "/>\n";
    }
    os << "</g>\n";

    const double s = d.na();
    if (opt.arctic || opt.analytic_levels) {
        const ShapeParams p(opt.q, d.na() / s, d.nb() / s, d.nc() / s);
        if (opt.arctic) {
            std::vector<std::pair<double, double>> pts;
            for (const Point& q : arctic_polyline(p, opt.arctic_points)) pts.emplace_back(s * q.x, s * q.y);
            pts.push_back(pts.front());
            os << "<g id=\"arctic\" fill=\"none\" stroke=\"#111111\" stroke-width=\"1.5\">\n<polyline class=\"arctic\" ";
            points_attr(os, fr, pts);
            os << "/>\n</g>\n";
        }
        if (opt.analytic_levels) {
            const ArcticGeometry g = arctic_tangency(p);
            const int sub = 4;
            os << "<g id=\"level-lines-analytic\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1.2\">\n";
            for (int k = 1; k <= d.nb(); ++k) {
                const double h = (k - 0.5) / s;
                std::vector<std::pair<double, double>> pts;
                for (int j = 0; j <= sub * d.max_x(); ++j) {
                    const double x = static_cast<double>(j) / sub;
                    pts.emplace_back(x, s * level_line_U(h, x / s, p, g));
                }
                os << "<polyline class=\"level analytic\" ";
                points_attr(os, fr, pts);
                os << "/>\n";
            }
            os << "</g>\n";
        }
    }
    if (opt.discrete_levels) {
        os << "<g id=\"level-lines-discrete\" fill=\"none\" stroke=\"#264653\" stroke-width=\"1.2\">\n";
        for (const LevelLine& l : extract_level_lines(f)) {
            const std::vector<int> ys = l.ordinates();
            std::vector<std::pair<double, double>> pts;
            for (std::size_t j = 0; j < ys.size(); ++j) pts.emplace_back(l.x0 + static_cast<double>(j), ys[j] + 0.5);
            os << "<polyline class=\"level discrete\" ";
            points_attr(os, fr, pts);
            os << "/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace hexmix
