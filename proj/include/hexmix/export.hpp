// File artifacts: build identifier, grid documents with a comment header and
// limit-shape CSV tables.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hexmix/lattice.hpp"
#include "hexmix/shape.hpp"

namespace hexmix {

std::string build_id();

// Grid file with leading '#' lines kept verbatim, so load then save
// reproduces the bytes.
struct GridDocument {
    std::vector<std::string> header;  // lines without the leading "# "
    HeightField field;
};
GridDocument load_grid_document(std::istream& is);
void save_grid_document(std::ostream& os, const GridDocument& doc);

// Shape fields on the points (i/n_x (a+c), j/n_y (b+c)) that lie in the
// hexagon. Columns x, y, phase, H, dHx, dHy, xi, d, e; reals at 17
// significant digits.
void write_shape_csv(std::ostream& os, const ShapeParams& p, int nx, int ny, double N,
                     const std::vector<std::string>& header = {});

// Arctic curve polyline as CSV (x, y).
void write_arctic_csv(std::ostream& os, const ShapeParams& p, int points, const std::vector<std::string>& header = {});

}  // namespace hexmix
