#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexmix/shape.hpp"
#include "shape_internal.hpp"

namespace hexmix {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SideLine {
    double X0, Y0, DX, DY;
};

std::array<SideLine, 6> side_lines(const ShapeParams& p) {
    const double qa = std::exp(p.q * p.a), qb = std::exp(p.q * p.b);
    return {SideLine{0.0, 0.0, 1.0, 0.0},
            SideLine{p.A, 0.0, qa, 1.0},
            SideLine{tilt(p.a + p.c, p.q), 0.0, 0.0, 1.0},
            SideLine{0.0, tilt(p.b + p.c, p.q), 1.0, 0.0},
            SideLine{0.0, tilt(p.b, p.q), 1.0, qb},
            SideLine{0.0, 0.0, 0.0, 1.0}};
}

struct Segment {
    Point p0, p1, dir;
};

std::array<Segment, 6> side_segments(const ShapeParams& p) {
    const double a = p.a, b = p.b, c = p.c, r = std::sqrt(0.5);
    return {Segment{{0, 0}, {a, 0}, {1, 0}},
            Segment{{a, 0}, {a + c, c}, {r, r}},
            Segment{{a + c, c}, {a + c, b + c}, {0, 1}},
            Segment{{a + c, b + c}, {c, b + c}, {-1, 0}},
            Segment{{c, b + c}, {0, b}, {-r, -r}},
            Segment{{0, b}, {0, 0}, {0, -1}}};
}

double segment_distance(const Segment& s, double x, double y) {
    const double ux = s.p1.x - s.p0.x, uy = s.p1.y - s.p0.y;
    const double len2 = ux * ux + uy * uy;
    double t = ((x - s.p0.x) * ux + (y - s.p0.y) * uy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(x - s.p0.x - t * ux, y - s.p0.y - t * uy);
}

// Point of the arctic curve at angle theta around the conic centre.
struct CurveParam {
    Conic cn;
    double cX, cY;
    const ShapeParams* p;

    Point at(double th) const {
        const double dx = std::cos(th), dy = std::sin(th);
        const detail::LineQuad lq = detail::line_quadratic(cn, cX, cY, dx, dy);
        const double disc = lq.a1 * lq.a1 - 4.0 * lq.a2 * lq.a0;
        const double r = (-lq.a1 + std::sqrt(std::max(0.0, disc))) / (2.0 * lq.a2);
        return {p->x_of(cX + r * dx), p->y_of(cY + r * dy)};
    }
};

CurveParam curve_param(const ShapeParams& p) {
    const Conic cn = arctic_conic(p);
    if (cn.xy * cn.xy - 4.0 * cn.xx * cn.yy >= 0) throw std::domain_error("arctic conic is not an ellipse");
    const auto ctr = cn.centre();
    if (!(cn(ctr[0], ctr[1]) < 0)) throw std::domain_error("arctic conic has empty interior");
    return {cn, ctr[0], ctr[1], &p};
}

}  // namespace

namespace detail {

LineQuad line_quadratic(const Conic& cn, double X0, double Y0, double DX, double DY) {
    LineQuad lq;
    lq.a2 = cn.xx * DX * DX + cn.xy * DX * DY + cn.yy * DY * DY;
    lq.a1 = 2.0 * cn.xx * X0 * DX + cn.xy * (X0 * DY + Y0 * DX) + 2.0 * cn.yy * Y0 * DY + cn.x * DX + cn.y * DY;
    lq.a0 = cn(X0, Y0);
    return lq;
}

Tangencies tangencies(const ShapeParams& p) {
    const Conic cn = arctic_conic(p);
    const auto lines = side_lines(p);
    Tangencies t;
    for (int i = 0; i < 6; ++i) {
        const SideLine& s = lines[i];
        const LineQuad lq = line_quadratic(cn, s.X0, s.Y0, s.DX, s.DY);
        const double ts = -lq.a1 / (2.0 * lq.a2);
        t.t[i] = ts;
        t.x[i] = p.x_of(s.X0 + ts * s.DX);
        t.y[i] = p.y_of(s.Y0 + ts * s.DY);
        const double scale = lq.a1 * lq.a1 + std::fabs(4.0 * lq.a2 * lq.a0);
        t.disc[i] = scale > 0 ? (lq.a1 * lq.a1 - 4.0 * lq.a2 * lq.a0) / scale : 0.0;
    }
    // Exact coordinates on the straight sides.
    t.y[0] = 0.0;
    t.x[2] = p.a + p.c;
    t.y[3] = p.b + p.c;
    t.x[5] = 0.0;
    return t;
}

}  // namespace detail

using detail::LineQuad;
using detail::line_quadratic;

std::string side_name(Side s) {
    static const char* names[] = {"S", "SE", "E", "N", "NW", "W"};
    return names[static_cast<int>(s)];
}

ArcticGeometry arctic_tangency(const ShapeParams& p) {
    curve_param(p);
    const detail::Tangencies t = detail::tangencies(p);
    const auto segs = side_segments(p);
    ArcticGeometry g;
    g.params = p;
    for (int i = 0; i < 6; ++i) {
        if (std::fabs(t.disc[i]) > 1e-9) throw std::domain_error("side is not tangent to the arctic conic");
        const Point pt{t.x[i], t.y[i]};
        const double d = segment_distance(segs[i], pt.x, pt.y);
        const double len = std::hypot(segs[i].p1.x - segs[i].p0.x, segs[i].p1.y - segs[i].p0.y);
        const double along = std::hypot(pt.x - segs[i].p0.x, pt.y - segs[i].p0.y);
        if (d > 1e-9 || along <= 0 || along >= len) throw std::domain_error("tangency point leaves its side");
        g.tangency[i] = pt;
    }
    return g;
}

double ArcticGeometry::ell(double y) const {
    if (!(y >= 0 && y <= y_w())) throw std::out_of_range("height outside [0, y_W]");
    const Conic cn = arctic_conic(params);
    const double Y = params.Y(y);
    const double a2 = cn.xx, a1 = cn.xy * Y + cn.x, a0 = (cn.yy * Y + cn.y) * Y + cn.c;
    // Near the tangency the two roots merge and the square root amplifies
    // rounding, so a relatively tiny discriminant is read as a double root.
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc > 1e-12 * a1 * a1)
        if (auto r = detail::quad_roots(a2, a1, a0)) return std::max(0.0, params.x_of((*r)[0]));
    return std::max(0.0, params.x_of(-a1 / (2.0 * a2)));
}

double tangency_sw_closed_form(const ShapeParams& p) {
    if (p.q == 0.0) return p.a * p.b / (p.b + p.c);
    const double r = std::expm1(p.q * p.a) * std::expm1(-p.q * p.b) / std::expm1(-p.q * (p.b + p.c));
    return std::log1p(r) / p.q;
}

ArcticProjection project_to_arctic(double x, double y, const ShapeParams& p) {
    const CurveParam cp = curve_param(p);
    auto d2 = [&](double th) {
        const Point pt = cp.at(th);
        return (pt.x - x) * (pt.x - x) + (pt.y - y) * (pt.y - y);
    };
    const int n = 1024;
    const double h = 2.0 * kPi / n;
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double v = d2(i * h);
        if (v < bd) {
            bd = v;
            best = i;
        }
    }
    const auto r = boost::math::tools::brent_find_minima(d2, (best - 1) * h, (best + 1) * h, 52);
    const double th = r.first;
    ArcticProjection out;
    out.nearest = cp.at(th);
    out.dist = std::sqrt(std::max(0.0, r.second));
    const double eps = 1e-6;
    const Point a = cp.at(th - eps), b = cp.at(th + eps);
    const double tx = b.x - a.x, ty = b.y - a.y, tn = std::hypot(tx, ty);
    out.tangent = {tx / tn, ty / tn};
    return out;
}

std::vector<Point> arctic_polyline(const ShapeParams& p, int n) {
    if (n < 3) throw std::invalid_argument("polyline needs at least three points");
    const CurveParam cp = curve_param(p);
    std::vector<Point> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(cp.at(2.0 * kPi * i / n));
    return out;
}

EdgeCoords edge_coords(double x, double y, const ShapeParams& p, double N) {
    if (!in_hexagon(x, y, p, 1e-12)) throw std::out_of_range("point outside hexagon");
    EdgeCoords ec;
    const auto segs = side_segments(p);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        const double d = segment_distance(segs[i], x, y);
        if (d < best) {
            best = d;
            ec.side = static_cast<Side>(i);
        }
    }
    ec.d = std::sqrt(best);
    ec.v = segs[static_cast<int>(ec.side)].dir;

    const double X0 = p.X(x), Y0 = p.Y(y);
    const Conic cn = arctic_conic(p);
    if (cn(X0, Y0) < 0 && !detail::on_boundary(x, y, p, 1e-15)) {
        const double bx = std::fabs(ec.v.x) > 1e-12 ? 1.0 : 0.0;
        const double by = std::fabs(ec.v.y) > 1e-12 ? 1.0 : 0.0;
        const LineQuad lq = line_quadratic(cn, X0, Y0, bx * (1.0 + p.kappa * X0), by * (1.0 + p.kappa * Y0));
        if (auto r = detail::quad_roots(lq.a2, lq.a1, lq.a0)) {
            const double u1 = untilt((*r)[0], p.q), u2 = untilt((*r)[1], p.q);
            ec.e = std::min(std::fabs(u1), std::fabs(u2)) * std::hypot(bx, by);
        }
    }

    const ArcticProjection pr = project_to_arctic(x, y, p);
    ec.dist_arctic = pr.dist;
    ec.nearest = pr.nearest;
    ec.u = pr.tangent;
    if (pr.dist > 0) ec.w = {(pr.nearest.x - x) / pr.dist, (pr.nearest.y - y) / pr.dist};
    else ec.w = {pr.tangent.y, -pr.tangent.x};

    ec.dd = std::max(ec.d, 1.0 / std::sqrt(N));
    ec.ee = std::max(ec.e, std::pow(ec.dd, -1.0 / 3.0) * std::pow(N, -2.0 / 3.0));
    return ec;
}

bool in_annulus_A(double de, int ell) {
    return std::pow(4.0, -ell) <= de && de <= std::pow(4.0, 1 - ell);
}

bool in_annulus_B(double de, int ell) {
    return std::pow(4.0, 0.5 - ell) <= de && de <= std::pow(4.0, 1 - ell);
}

AnnulusInfo annulus_index(double x, double y, const ShapeParams& p, double N, double u) {
    const EdgeCoords ec = edge_coords(x, y, p, N);
    AnnulusInfo ai;
    ai.de = ec.dd * ec.ee;
    const bool liquid = ec.e > 0;
    int ell = static_cast<int>(std::ceil(-std::log(ai.de) / std::log(4.0)));
    if (ell < 1) ell = 1;
    if (!in_annulus_A(ai.de, ell) && in_annulus_A(ai.de, ell + 1)) ++ell;
    if (!in_annulus_A(ai.de, ell) && ell > 1 && in_annulus_A(ai.de, ell - 1)) --ell;
    ai.ell = ell;
    ai.inA = liquid && in_annulus_A(ai.de, ell);
    ai.inB = liquid && in_annulus_B(ai.de, ell);
    ai.inAu = ai.inA && std::sqrt(ec.dd) * std::pow(ec.ee, 1.5) >= u / N;
    return ai;
}

int ell0(double q, double N, double a_delta) {
    if (!(q > 0) || !(N >= 1)) throw std::invalid_argument("l0 needs q > 0 and N >= 1");
    const double log2v = (2.0 / 3.0) * std::log2(q) + (2.0 / 3.0 - a_delta) * std::log2(N);
    int ell = static_cast<int>(std::ceil((log2v - 21.0) / 2.0));
    while (2.0 * ell < log2v - 21.0) ++ell;
    while (2.0 * ell >= log2v - 19.0) --ell;
    return ell;
}

bool augmented_liquid(double x, double y, const ShapeParams& p, double N, double delta) {
    if (!in_hexagon(x, y, p, 1e-12)) throw std::out_of_range("point outside hexagon");
    if (arctic_conic(p)(p.X(x), p.Y(y)) < 0) return true;
    const auto segs = side_segments(p);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segs) best = std::min(best, segment_distance(s, x, y));
    const double d = std::sqrt(best);
    const double dist = project_to_arctic(x, y, p).dist;
    return dist <= std::pow(d, 2.0 / 3.0) * std::pow(N, delta - 2.0 / 3.0);
}

double rescaled_height(double x0, double y0, const ShapeParams& p, double N, double xh, double yh) {
    const EdgeCoords ec = edge_coords(x0, y0, p, N);
    if (!(ec.e > 0)) throw std::domain_error("rescaling centre is not in the liquid region");
    const double de = ec.d * ec.e;
    const double s = std::sqrt(de);
    const double x = x0 + s * ec.u.x * xh + de * ec.w.x * yh;
    const double y = y0 + s * ec.u.y * xh + de * ec.w.y * yh;
    if (!in_hexagon(x, y, p, 0.0)) throw std::out_of_range("rescaled argument leaves the hexagon");
    return std::pow(ec.d, -0.5) * std::pow(ec.e, -1.5) * height(x, y, p);
}

std::array<double, 2> q0_ellipse_range(double a, double b, double c) {
    return {-std::numeric_limits<double>::infinity(), a * b / (a + c)};
}

EllipsePoint q0_ellipse_oracle(double a, double b, double c, double xi) {
    if (!(a > 0 && b > 0 && c > 0)) throw std::invalid_argument("hexagon sides must be positive");
    const auto rg = q0_ellipse_range(a, b, c);
    if (!(xi <= rg[1]) || !std::isfinite(xi)) throw std::out_of_range("parameter outside the south arc range");
    const double N = xi * (xi - b - c), D = (xi + a) * (xi - b);
    const double dN = 2.0 * xi - b - c, dD = 2.0 * xi + a - b;
    const double m = a * b - (a + c) * xi;
    const double x = m * m / (dN * D - N * dD);
    const double g = c * (a + b + c) * xi * xi / (c * xi * xi + a * (b * b + b * (c - 2.0 * xi) + xi * xi));
    return {x, g};
}

ScalingFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit needs two or more pairs");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0 && ys[i] > 0)) throw std::domain_error("log-log fit needs positive data");
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    ScalingFit f;
    const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
    return f;
}

namespace {

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return v;
}

double ratio_band(const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return *mx / *mn;
}

}  // namespace

EdgeScalingReport edge_scaling_check(const ShapeParams& p, double d, double e_min, double e_max, int n) {
    if (n < 2 || !(e_min > 0 && e_max > e_min)) throw std::invalid_argument("bad transect range");
    const double y0 = d * d;
    const auto row = row_liquid_interval(y0, p);
    if (!row) throw std::domain_error("transect line misses the liquid region");
    const double x_sw = detail::tangencies(p).x[0];
    EdgeScalingReport rep;
    std::vector<double> ph, py, px;
    for (double e : logspace(e_min, e_max, n)) {
        const double x0 = (*row)[1] - e;
        if (x0 < x_sw) throw std::domain_error("transect crosses the tangency abscissa");
        const EdgeCoords ec = edge_coords(x0, y0, p, 1e300);
        if (ec.side != Side::S || !(ec.e > 0)) throw std::domain_error("transect exits the liquid region");
        const SlopeInfo s = complex_slope(x0, y0, p);
        rep.e.push_back(ec.e);
        rep.H.push_back(height(x0, y0, p));
        rep.dHy.push_back(s.dHy);
        rep.dHx.push_back(-s.dHx);
        rep.d = ec.d;
        ph.push_back(rep.H.back() / (std::sqrt(ec.d) * std::pow(ec.e, 1.5)));
        py.push_back(s.dHy / std::sqrt(ec.e / ec.d));
        px.push_back(-s.dHx / std::sqrt(ec.d * ec.e));
    }
    rep.fit_H = loglog_fit(rep.e, rep.H);
    rep.fit_dHy = loglog_fit(rep.e, rep.dHy);
    rep.fit_dHx = loglog_fit(rep.e, rep.dHx);
    rep.prefactor_ratio_H = ratio_band(ph);
    rep.prefactor_ratio_dHy = ratio_band(py);
    rep.prefactor_ratio_dHx = ratio_band(px);
    return rep;
}

LeftEdgeReport left_edge_check(const ShapeParams& p, double d, double e_min, double e_max, int n) {
    const double y0 = d * d;
    const auto row = row_liquid_interval(y0, p);
    if (!row) throw std::domain_error("transect line misses the liquid region");
    LeftEdgeReport rep{std::numeric_limits<double>::infinity(), 0.0};
    for (double e : logspace(e_min, e_max, n)) {
        const double x0 = (*row)[0] + e;
        const SlopeInfo s = complex_slope(x0, y0, p);
        if (s.phase != Phase::Liquid) throw std::domain_error("transect exits the liquid region");
        rep.min_dHy = std::min(rep.min_dHy, s.dHy);
        rep.max_dHy = std::max(rep.max_dHy, s.dHy);
    }
    return rep;
}

double boundary_shift_check(double q, double q2, double y, double a, double b, double c) {
    if (q < q2) throw std::invalid_argument("shift check needs q >= q'");
    auto south_x = [&](double qq) {
        const ShapeParams p(qq, a, b, c);
        if (y == 0.0) return tangency_sw_closed_form(p);
        const auto row = row_liquid_interval(y, p);
        if (!row) throw std::domain_error("height misses the liquid region");
        return (*row)[1];
    };
    return south_x(q) - south_x(q2);
}

}  // namespace hexmix
