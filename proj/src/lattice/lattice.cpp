#include "hexmix/lattice.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace hexmix {

namespace {

constexpr int kDx[6] = {-1, 1, 0, 0, -1, 1};
constexpr int kDy[6] = {0, 0, -1, 1, -1, 1};

void require_same_domain(const HeightField& f, const HeightField& g) {
    if (!(f.domain() == g.domain())) throw std::invalid_argument("height fields live on different domains");
}

}  // namespace

HexDomain::HexDomain(int na, int nb, int nc) : na_(na), nb_(nb), nc_(nc) {
    if (na < 1 || nb < 1 || nc < 1) throw std::invalid_argument("hexagon sides must be positive");
    col_offset_.resize(max_x() + 2);
    int n = 0;
    for (int x = 0; x <= max_x(); ++x) {
        col_offset_[x] = n;
        n += column_high(x) - column_low(x) + 1;
    }
    col_offset_[max_x() + 1] = n;
    verts_.reserve(n);
    for (int x = 0; x <= max_x(); ++x)
        for (int y = column_low(x); y <= column_high(x); ++y) verts_.push_back({x, y});
    nbr_.resize(n);
    boundary_.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vertex v = verts_[i];
        for (int k = 0; k < 6; ++k) nbr_[i][k] = index(v.x + kDx[k], v.y + kDy[k]);
        boundary_[i] = on_boundary(v.x, v.y) ? 1 : 0;
        if (!boundary_[i]) interior_.push_back(i);
    }
}

bool HexDomain::contains(int x, int y) const {
    return x >= 0 && x <= max_x() && y >= 0 && y <= max_y() && y - x <= nb_ && x - y <= na_;
}

bool HexDomain::on_boundary(int x, int y) const {
    return contains(x, y) &&
           (x == 0 || y == 0 || x == max_x() || y == max_y() || y - x == nb_ || x - y == na_);
}

int HexDomain::boundary_height(int x, int y) const {
    if (!on_boundary(x, y)) throw std::invalid_argument("not a boundary vertex");
    if (y == 0 || x - y == na_) return 0;
    if (y - x == nb_ || y == max_y()) return nb_;
    if (x == 0) return y;
    return y - nc_;
}

int HexDomain::index(int x, int y) const {
    if (!contains(x, y)) return -1;
    return col_offset_[x] + (y - column_low(x));
}

std::array<Vertex, 6> HexDomain::corners() const {
    return {Vertex{0, 0}, Vertex{na_, 0}, Vertex{na_ + nc_, nc_}, Vertex{na_ + nc_, nb_ + nc_},
            Vertex{nc_, nb_ + nc_}, Vertex{0, nb_}};
}

DomainPtr make_domain(int na, int nb, int nc) { return std::make_shared<const HexDomain>(na, nb, nc); }

HeightField::HeightField(DomainPtr d, std::vector<int> h) : dom_(std::move(d)), h_(std::move(h)) {
    if (!dom_) throw std::invalid_argument("null domain");
    if (static_cast<int>(h_.size()) != dom_->size()) throw std::invalid_argument("height vector has wrong size");
}

int HeightField::at(int x, int y) const {
    const int i = dom_->index(x, y);
    if (i < 0) throw std::out_of_range("vertex outside hexagon");
    return h_[i];
}

void HeightField::set(int x, int y, int value) {
    const int i = dom_->index(x, y);
    if (i < 0) throw std::out_of_range("vertex outside hexagon");
    h_[i] = value;
}

bool HeightField::leq(const HeightField& o) const {
    require_same_domain(*this, o);
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (h_[i] > o.h_[i]) return false;
    return true;
}

HeightField boundary_field(const DomainPtr& d) {
    std::vector<int> h(d->size(), 0);
    for (int i = 0; i < d->size(); ++i)
        if (d->is_boundary(i)) h[i] = d->boundary_height(d->vertex(i).x, d->vertex(i).y);
    return HeightField(d, std::move(h));
}

bool is_admissible(const HeightField& f) {
    const HexDomain& d = f.domain();
    for (int i = 0; i < d.size(); ++i) {
        const Vertex v = d.vertex(i);
        if (d.is_boundary(i) && f[i] != d.boundary_height(v.x, v.y)) return false;
        const auto& nb = d.neighbours(i);
        if (nb[kRight] >= 0) {
            const int s = f[nb[kRight]] - f[i];
            if (s < -1 || s > 0) return false;
        }
        if (nb[kUp] >= 0) {
            const int s = f[nb[kUp]] - f[i];
            if (s < 0 || s > 1) return false;
        }
        if (nb[kUpRight] >= 0) {
            const int s = f[nb[kUpRight]] - f[i];
            if (s < 0 || s > 1) return false;
        }
    }
    return true;
}

std::pair<int, int> local_bounds(const HexDomain& d, const int* h, int i) {
    if (d.is_boundary(i)) return {h[i], h[i]};
    const auto& n = d.neighbours(i);
    const int hl = h[n[kLeft]], hr = h[n[kRight]], hd = h[n[kDown]];
    const int hu = h[n[kUp]], hdl = h[n[kDownLeft]], hur = h[n[kUpRight]];
    const int lo = std::max({hl - 1, hr, hd, hu - 1, hdl, hur - 1});
    const int hi = std::min({hl, hr + 1, hd + 1, hu, hdl + 1, hur});
    return {lo, hi};
}

std::pair<int, int> local_bounds(const HeightField& f, int i) {
    if (i < 0 || i >= f.domain().size()) throw std::out_of_range("vertex outside hexagon");
    return local_bounds(f.domain(), f.values().data(), i);
}

std::pair<int, int> local_bounds(const HeightField& f, Vertex z) {
    return local_bounds(f, f.domain().index(z.x, z.y));
}

std::pair<HeightField, HeightField> extreme_tilings(const DomainPtr& d) {
    std::vector<int> bidx;
    for (int i = 0; i < d->size(); ++i)
        if (d->is_boundary(i)) bidx.push_back(i);
    HeightField lo = boundary_field(d), hi = boundary_field(d);
    for (int i : d->interior()) {
        const Vertex z = d->vertex(i);
        int up = INT_MAX, down = INT_MIN;
        for (int j : bidx) {
            const Vertex w = d->vertex(j);
            const int dx = z.x - w.x, dy = z.y - w.y;
            const int hw = lo[j];
            up = std::min(up, hw + std::max({0, dy, dy - dx}));
            down = std::max(down, hw - std::max({0, -dy, dx - dy}));
        }
        hi[i] = up;
        lo[i] = down;
    }
    return {std::move(lo), std::move(hi)};
}

std::vector<FlipSite> flippable(const HeightField& f) {
    std::vector<FlipSite> out;
    for (int i : f.domain().interior()) {
        const auto [lo, hi] = local_bounds(f, i);
        if (hi > lo) out.push_back({i, lo, hi});
    }
    return out;
}

std::pair<HeightField, HeightField> meet_join(const HeightField& f, const HeightField& g) {
    require_same_domain(f, g);
    HeightField m = f, j = f;
    for (int i = 0; i < f.domain().size(); ++i) {
        m[i] = std::min(f[i], g[i]);
        j[i] = std::max(f[i], g[i]);
    }
    return {std::move(m), std::move(j)};
}

std::int64_t volume(const HeightField& f) {
    std::int64_t s = 0;
    for (int v : f.values()) s += v;
    return s;
}

std::vector<int> LevelLine::ordinates() const {
    std::vector<int> ys;
    ys.reserve(steps.size() + 1);
    int y = y0;
    ys.push_back(y);
    for (Step s : steps) {
        if (s == Step::NE) ++y;
        ys.push_back(y);
    }
    return ys;
}

LevelLine extract_level_line(const HeightField& f, int k) {
    const HexDomain& d = f.domain();
    if (k < 1 || k > d.nb()) throw std::out_of_range("level index out of range");
    LevelLine line;
    line.k = k;
    line.x0 = 0;
    int prev = 0;
    for (int x = 0; x <= d.max_x(); ++x) {
        int yk = d.column_low(x);
        for (int y = d.column_low(x); y <= d.column_high(x); ++y) {
            if (f.at(x, y) <= k - 1) yk = y;
            else break;
        }
        if (x == 0) {
            line.y0 = yk;
        } else {
            const int dy = yk - prev;
            if (dy != 0 && dy != 1) throw std::logic_error("height field is not admissible");
            line.steps.push_back(dy ? Step::NE : Step::SE);
        }
        prev = yk;
    }
    return line;
}

std::vector<LevelLine> extract_level_lines(const HeightField& f) {
    std::vector<LevelLine> out;
    for (int k = 1; k <= f.domain().nb(); ++k) out.push_back(extract_level_line(f, k));
    return out;
}

HeightField reconstruct_from_level_lines(const DomainPtr& d, const std::vector<LevelLine>& lines) {
    std::vector<std::vector<int>> ys;
    for (const auto& l : lines) {
        if (l.x0 != 0 || static_cast<int>(l.steps.size()) != d->max_x())
            throw std::invalid_argument("level line does not span the hexagon");
        ys.push_back(l.ordinates());
    }
    HeightField f(d, std::vector<int>(d->size(), 0));
    for (int i = 0; i < d->size(); ++i) {
        const Vertex v = d->vertex(i);
        int h = 0;
        for (const auto& y : ys)
            if (y[v.x] < v.y) ++h;
        f[i] = h;
    }
    return f;
}

std::vector<HeightField> enumerate_all(const DomainPtr& d, std::size_t limit) {
    const auto [emin, emax] = extreme_tilings(d);
    const std::vector<int>& order = d->interior();
    std::vector<int> h = emin.values();
    std::vector<char> known(d->size(), 0);
    for (int i = 0; i < d->size(); ++i) known[i] = d->is_boundary(i);

    auto bounds = [&](int i) {
        int lo = emin[i], hi = emax[i];
        const auto& n = d->neighbours(i);
        auto tighten = [&](int j, int dlo, int dhi) {
            if (j >= 0 && known[j]) {
                lo = std::max(lo, h[j] + dlo);
                hi = std::min(hi, h[j] + dhi);
            }
        };
        tighten(n[kLeft], -1, 0);
        tighten(n[kRight], 0, 1);
        tighten(n[kDown], 0, 1);
        tighten(n[kUp], -1, 0);
        tighten(n[kDownLeft], 0, 1);
        tighten(n[kUpRight], -1, 0);
        return std::pair{lo, hi};
    };

    std::vector<HeightField> out;
    const std::size_t m = order.size();
    if (m == 0) {
        out.push_back(emin);
        return out;
    }
    std::vector<int> hi_at(m), pos_val(m);
    std::size_t depth = 0;
    {
        const auto [lo, hi] = bounds(order[0]);
        pos_val[0] = lo;
        hi_at[0] = hi;
    }
    while (true) {
        const int i = order[depth];
        if (pos_val[depth] > hi_at[depth]) {
            known[i] = 0;
            if (depth == 0) break;
            --depth;
            ++pos_val[depth];
            continue;
        }
        h[i] = pos_val[depth];
        known[i] = 1;
        if (depth + 1 == m) {
            if (out.size() >= limit) throw std::length_error("state count exceeds enumeration limit");
            out.emplace_back(d, h);
            ++pos_val[depth];
            continue;
        }
        ++depth;
        const auto [lo, hi] = bounds(order[depth]);
        pos_val[depth] = lo;
        hi_at[depth] = hi;
    }
    return out;
}

std::vector<Symmetry> all_symmetries() {
    std::vector<Symmetry> out;
    std::array<int, 3> p{0, 1, 2};
    do {
        out.push_back({p, false});
        out.push_back({p, true});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

bool symmetry_compatible(const HexDomain& d, const Symmetry& s) {
    const int n[3] = {d.na(), d.nb(), d.nc()};
    std::array<int, 3> seen{0, 0, 0};
    for (int a = 0; a < 3; ++a) {
        if (s.perm[a] < 0 || s.perm[a] > 2) return false;
        seen[s.perm[a]]++;
    }
    if (seen != std::array<int, 3>{1, 1, 1}) return false;
    for (int a = 0; a < 3; ++a)
        if (n[s.perm[a]] != n[a]) return false;
    return true;
}

HeightField symmetry_apply(const HeightField& f, const Symmetry& s) {
    const HexDomain& d = f.domain();
    if (!symmetry_compatible(d, s)) throw std::invalid_argument("symmetry incompatible with side lengths");
    const int n[3] = {d.na(), d.nb(), d.nc()};
    HeightField g(f.domain_ptr(), std::vector<int>(d.size(), INT_MIN));
    for (int i = 0; i < d.size(); ++i) {
        const Vertex v = d.vertex(i);
        const int h = f[i];
        const int p[3] = {v.x + h - v.y, h, h - v.y + d.nc()};
        int r[3];
        for (int a = 0; a < 3; ++a) {
            r[a] = p[s.perm[a]];
            if (s.complement) r[a] = n[a] - r[a];
        }
        const int x = r[0] - r[2] + d.nc();
        const int y = r[1] - r[2] + d.nc();
        const int j = d.index(x, y);
        if (j < 0) throw std::logic_error("symmetry image left the hexagon");
        g[j] = r[1];
    }
    for (int v : g.values())
        if (v == INT_MIN) throw std::logic_error("symmetry image is not a bijection on vertices");
    return g;
}

}  // namespace hexmix
