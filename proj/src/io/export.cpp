#include "hexmix/export.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef HEXMIX_BUILD_ID
#define HEXMIX_BUILD_ID "unknown"
#endif

namespace hexmix {

std::string build_id() { return HEXMIX_BUILD_ID; }

GridDocument load_grid_document(std::istream& is) {
    GridDocument doc;
    std::string line;
    std::ostringstream body;
    bool in_header = true;
    while (std::getline(is, line)) {
        if (in_header && !line.empty() && line[0] == '#') {
            doc.header.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
            continue;
        }
        in_header = false;
        body << line << '\n';
    }
    doc.field = from_grid(body.str());
    return doc;
}

void save_grid_document(std::ostream& os, const GridDocument& doc) {
    for (const auto& h : doc.header) os << "# " << h << '\n';
    write_grid(os, doc.field);
}

namespace {

void header_lines(std::ostream& os, const std::vector<std::string>& header) {
    for (const auto& h : header) os << "# " << h << '\n';
}

}  // namespace

void write_shape_csv(std::ostream& os, const ShapeParams& p, int nx, int ny, double N,
                     const std::vector<std::string>& header) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("shape grid needs at least one step per axis");
    header_lines(os, header);
    os << "x,y,phase,H,dHx,dHy,xi,d,e\n";
    os << std::setprecision(17);
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double x = (p.a + p.c) * i / nx, y = (p.b + p.c) * j / ny;
            if (!in_hexagon(x, y, p, 0.0)) continue;
            const SlopeInfo s = complex_slope(x, y, p);
            const EdgeCoords ec = edge_coords(x, y, p, N);
            os << x << ',' << y << ',' << phase_name(s.phase) << ',' << height(x, y, p) << ',' << s.dHx << ','
               << s.dHy << ',' << s.xi << ',' << ec.d << ',' << ec.e << '\n';
        }
    }
}

void write_arctic_csv(std::ostream& os, const ShapeParams& p, int points, const std::vector<std::string>& header) {
    header_lines(os, header);
    os << "x,y\n" << std::setprecision(17);
    for (const Point& q : arctic_polyline(p, points)) os << q.x << ',' << q.y << '\n';
}

}  // namespace hexmix
