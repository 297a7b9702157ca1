#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hexmix/lattice.hpp"

namespace hexmix {

void write_grid(std::ostream& os, const HeightField& f) {
    const HexDomain& d = f.domain();
    os << "hex " << d.na() << ' ' << d.nb() << ' ' << d.nc() << '\n';
    for (int y = 0; y <= d.max_y(); ++y) {
        for (int x = 0; x <= d.max_x(); ++x) {
            if (x) os << ' ';
            if (d.contains(x, y)) os << f.at(x, y);
            else os << '.';
        }
        os << '\n';
    }
}

std::string to_grid(const HeightField& f) {
    std::ostringstream os;
    write_grid(os, f);
    return os.str();
}

HeightField read_grid(std::istream& is) {
    std::string tag;
    int na = 0, nb = 0, nc = 0;
    std::string comment;
    while ((is >> std::ws) && is.peek() == '#') std::getline(is, comment);
    if (!(is >> tag >> na >> nb >> nc) || tag != "hex") throw std::runtime_error("grid: bad header");
    DomainPtr d = make_domain(na, nb, nc);
    HeightField f(d, std::vector<int>(d->size(), 0));
    for (int y = 0; y <= d->max_y(); ++y) {
        for (int x = 0; x <= d->max_x(); ++x) {
            std::string tok;
            if (!(is >> tok)) throw std::runtime_error("grid: truncated input");
            if (d->contains(x, y)) {
                std::size_t used = 0;
                int v = 0;
                try {
                    v = std::stoi(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok.size() || tok.empty())
                    throw std::runtime_error("grid: expected integer at x=" + std::to_string(x) +
                                             " y=" + std::to_string(y));
                f.set(x, y, v);
            } else if (tok != ".") {
                throw std::runtime_error("grid: expected '.' outside the hexagon");
            }
        }
    }
    if (!is_admissible(f)) throw std::runtime_error("grid: heights are not admissible");
    return f;
}

HeightField from_grid(const std::string& text) {
    std::istringstream is(text);
    return read_grid(is);
}

}  // namespace hexmix
