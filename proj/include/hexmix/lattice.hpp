// Hexagon domains and integer height fields for lozenge tilings.
//
// A vertex (x, y) of the a x b x c hexagon satisfies 0 <= x <= na+nc,
// 0 <= y <= nb+nc, y - x <= nb and x - y <= na. Heights are integers with
// steps h(x+1,y)-h(x,y) in {-1,0}, h(x,y+1)-h(x,y) in {0,1} and
// h(x+1,y+1)-h(x,y) in {0,1}.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hexmix {

struct Vertex {
    int x = 0;
    int y = 0;
    bool operator==(const Vertex&) const = default;
};

// Neighbour slots in the order used by neighbour tables.
enum Dir : int { kLeft = 0, kRight, kDown, kUp, kDownLeft, kUpRight };

class HexDomain {
public:
    HexDomain(int na, int nb, int nc);

    int na() const { return na_; }
    int nb() const { return nb_; }
    int nc() const { return nc_; }
    int max_x() const { return na_ + nc_; }
    int max_y() const { return nb_ + nc_; }

    int column_low(int x) const { return x > na_ ? x - na_ : 0; }
    int column_high(int x) const { return x + nb_ < max_y() ? x + nb_ : max_y(); }

    bool contains(int x, int y) const;
    bool on_boundary(int x, int y) const;
    int boundary_height(int x, int y) const;

    // Column-major index, -1 outside the hexagon.
    int index(int x, int y) const;
    Vertex vertex(int i) const { return verts_[i]; }
    int size() const { return static_cast<int>(verts_.size()); }

    // Six neighbours of vertex i (kLeft..kUpRight), -1 where outside.
    const std::array<int, 6>& neighbours(int i) const { return nbr_[i]; }
    bool is_boundary(int i) const { return boundary_[i] != 0; }
    const std::vector<int>& interior() const { return interior_; }

    std::array<Vertex, 6> corners() const;
    int lozenge_count() const { return na_ * nb_ + nb_ * nc_ + nc_ * na_; }

    bool operator==(const HexDomain& o) const {
        return na_ == o.na_ && nb_ == o.nb_ && nc_ == o.nc_;
    }

private:
    int na_, nb_, nc_;
    std::vector<int> col_offset_;
    std::vector<Vertex> verts_;
    std::vector<std::array<int, 6>> nbr_;
    std::vector<char> boundary_;
    std::vector<int> interior_;
};

using DomainPtr = std::shared_ptr<const HexDomain>;

DomainPtr make_domain(int na, int nb, int nc);

class HeightField {
public:
    HeightField() = default;
    HeightField(DomainPtr d, std::vector<int> h);

    const HexDomain& domain() const { return *dom_; }
    const DomainPtr& domain_ptr() const { return dom_; }

    int operator[](int i) const { return h_[i]; }
    int& operator[](int i) { return h_[i]; }
    int at(int x, int y) const;
    void set(int x, int y, int value);

    const std::vector<int>& values() const { return h_; }
    std::vector<int>& values() { return h_; }

    bool operator==(const HeightField& o) const { return *dom_ == *o.dom_ && h_ == o.h_; }
    bool leq(const HeightField& o) const;

private:
    DomainPtr dom_;
    std::vector<int> h_;
};

// Field with boundary values set and interior vertices at zero.
HeightField boundary_field(const DomainPtr& d);

bool is_admissible(const HeightField& f);

// (eta_min, eta_max).
std::pair<HeightField, HeightField> extreme_tilings(const DomainPtr& d);

struct FlipSite {
    int site = -1;
    int h_min = 0;
    int h_max = 0;
};

// Local extremes at vertex i given its neighbours.
std::pair<int, int> local_bounds(const HexDomain& d, const int* h, int i);
std::pair<int, int> local_bounds(const HeightField& f, int i);
std::pair<int, int> local_bounds(const HeightField& f, Vertex z);

std::vector<FlipSite> flippable(const HeightField& f);

std::pair<HeightField, HeightField> meet_join(const HeightField& f, const HeightField& g);

std::int64_t volume(const HeightField& f);

enum class Step : std::uint8_t { SE = 0, NE = 1 };

// Level line between {h < k} and {h >= k}. Column x carries the point
// (x, y_k(x) + 1/2) where y_k(x) is the largest y with h(x,y) <= k-1.
struct LevelLine {
    int k = 0;
    int x0 = 0;
    int y0 = 0;  // the start point is (x0, y0 + 1/2)
    std::vector<Step> steps;

    // Integer y_k(x) at each column, x = x0 .. x0 + steps.size().
    std::vector<int> ordinates() const;
};

LevelLine extract_level_line(const HeightField& f, int k);
std::vector<LevelLine> extract_level_lines(const HeightField& f);
HeightField reconstruct_from_level_lines(const DomainPtr& d, const std::vector<LevelLine>& lines);

// All admissible fields in column-major DFS order. Throws std::length_error
// when more than `limit` fields exist.
std::vector<HeightField> enumerate_all(const DomainPtr& d, std::size_t limit);

// Axis permutation of the box [0,na]x[0,nb]x[0,nc] lifted from the stepped
// surface, optionally followed by complementation in the box.
struct Symmetry {
    std::array<int, 3> perm{0, 1, 2};
    bool complement = false;

    static Symmetry identity() { return {}; }
    static Symmetry complementation() { return {{0, 1, 2}, true}; }
};

std::vector<Symmetry> all_symmetries();
bool symmetry_compatible(const HexDomain& d, const Symmetry& s);
HeightField symmetry_apply(const HeightField& f, const Symmetry& s);

// Text height grid: "hex na nb nc", then one line per y (ascending) with
// '.' outside the hexagon. Leading lines starting with '#' are skipped.
std::string to_grid(const HeightField& f);
HeightField from_grid(const std::string& text);
void write_grid(std::ostream& os, const HeightField& f);
HeightField read_grid(std::istream& is);

}  // namespace hexmix
