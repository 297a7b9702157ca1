// SVG rendering of lozenge tilings in the sheared drawing frame
// (x, y) -> (x - y/2, y sqrt(3)/2).
#pragma once

#include <array>
#include <string>
#include <vector>

#include "hexmix/lattice.hpp"

namespace hexmix {

enum class LozengeType { Horizontal, Vertical, Diagonal };  // by the lattice edge the lozenge straddles

struct Lozenge {
    LozengeType type;
    std::array<Vertex, 4> corners;
};

// The tiling encoded by f: one lozenge per interior edge whose height step
// is -1 (horizontal), 0 (vertical) or +1 (diagonal).
std::vector<Lozenge> lozenges(const HeightField& f);

struct SvgOptions {
    double unit = 16.0;               // pixels per lattice step
    bool arctic = false;              // arctic curve of the q-shape
    bool analytic_levels = false;     // level lines of the q-shape, one per level
    bool discrete_levels = false;     // level lines of f
    double q = 0.0;
    int arctic_points = 256;
    std::vector<std::string> comments;  // embedded verbatim as an XML comment
};

std::string render_svg(const HeightField& f, const SvgOptions& opt = {});

}  // namespace hexmix
