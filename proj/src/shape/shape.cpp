#include "hexmix/shape.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "shape_internal.hpp"

namespace hexmix {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSeriesCut = 1e-6;

}  // namespace

double bracket(double z, double q) {
    if (q == 0.0) return z;
    if (std::fabs(q) < kSeriesCut)
        return z * (1.0 + q * (1.0 - z) / 2.0 + q * q * (2.0 * z - 1.0) * (z - 1.0) / 12.0);
    return std::expm1(-q * z) / std::expm1(-q);
}

cplx bracket(cplx z, double q) {
    if (q == 0.0) return z;
    if (std::fabs(q) < kSeriesCut)
        return z * (1.0 + q * (1.0 - z) / 2.0 + q * q * (2.0 * z - 1.0) * (z - 1.0) / 12.0);
    return (std::exp(-q * z) - 1.0) / std::expm1(-q);
}

double tilt(double x, double q) { return -bracket(-x, q); }

double untilt(double X, double q) {
    if (q == 0.0) return X;
    const double kappa = -std::expm1(-q);
    return std::log1p(kappa * X) / q;
}

ShapeParams::ShapeParams(double q_, double a_, double b_, double c_) : q(q_), a(a_), b(b_), c(c_) {
    if (!(a > 0 && b > 0 && c > 0)) throw std::invalid_argument("hexagon sides must be positive");
    if (!std::isfinite(q)) throw std::invalid_argument("q must be finite");
    qt = std::exp(q);
    kappa = -std::expm1(-q);
    A = tilt(a, q);
    B = bracket(b, q);
    C = std::exp(-q * b) * bracket(c, q);
}

XiEtaZeta xi_eta_zeta(double X, double Y, const ShapeParams& p) {
    const double A = p.A, B = p.B, C = p.C, k = p.kappa;
    const double P = X * (B + C) - Y * (A + C) - A * B - k * A * B * Y;
    const double Q = A + C - X + k * (A + C) * Y;
    return {P * P - 4.0 * A * B * Y * Q, -P, 2.0 * Q};
}

Conic arctic_conic(const ShapeParams& p) {
    const double A = p.A, B = p.B, C = p.C, k = p.kappa;
    const double beta = -(A + C) - k * A * B;
    const double gamma = k * (A + C);
    const double AB = A * B;
    Conic cn;
    cn.xx = (B + C) * (B + C);
    cn.xy = 2.0 * (B + C) * beta + 4.0 * AB;
    cn.yy = beta * beta - 4.0 * AB * gamma;
    cn.x = -2.0 * AB * (B + C);
    cn.y = -2.0 * AB * beta - 4.0 * AB * (A + C);
    cn.c = AB * AB;
    return cn;
}

std::array<double, 2> Conic::centre() const {
    const double det = 4.0 * xx * yy - xy * xy;
    if (std::fabs(det) < 1e-300) throw std::domain_error("degenerate conic has no centre");
    return {(-2.0 * yy * x + xy * y) / det, (-2.0 * xx * y + xy * x) / det};
}

std::string phase_name(Phase ph) {
    switch (ph) {
        case Phase::Liquid: return "liquid";
        case Phase::FrozenS: return "frozenS";
        case Phase::FrozenN: return "frozenN";
        case Phase::FrozenSW: return "frozenSW";
        case Phase::FrozenNE: return "frozenNE";
        case Phase::FrozenSE: return "frozenSE";
        case Phase::FrozenNW: return "frozenNW";
        case Phase::Boundary: return "boundary";
    }
    return "unknown";
}

bool in_hexagon(double x, double y, const ShapeParams& p, double tol) {
    return x >= -tol && y >= -tol && x <= p.a + p.c + tol && y <= p.b + p.c + tol && y - x <= p.b + tol &&
           x - y <= p.a + tol;
}

namespace detail {

bool on_boundary(double x, double y, const ShapeParams& p, double tol) {
    return std::fabs(x) <= tol || std::fabs(y) <= tol || std::fabs(x - p.a - p.c) <= tol ||
           std::fabs(y - p.b - p.c) <= tol || std::fabs(y - x - p.b) <= tol || std::fabs(x - y - p.a) <= tol;
}

double boundary_value(double x, double y, const ShapeParams& p) {
    const double tol = 1e-12;
    if (std::fabs(y) <= tol || std::fabs(x - y - p.a) <= tol) return 0.0;
    if (std::fabs(y - x - p.b) <= tol || std::fabs(y - p.b - p.c) <= tol) return p.b;
    if (std::fabs(x) <= tol) return y;
    return y - p.c;
}

std::optional<std::array<double, 2>> quad_roots(double a2, double a1, double a0) {
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (!(disc > 0) || a2 == 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    const double t = -0.5 * (a1 + std::copysign(s, a1));
    double r1 = t / a2, r2 = a0 / t;
    if (t == 0.0) r1 = r2 = 0.0;
    if (r1 > r2) std::swap(r1, r2);
    return std::array<double, 2>{r1, r2};
}

ColumnInfo column_info(double x, const ShapeParams& p) {
    const Conic cn = arctic_conic(p);
    ColumnInfo ci;
    ci.x = x;
    ci.X = p.X(x);
    ci.a2 = cn.yy;
    ci.a1 = cn.xy * ci.X + cn.y;
    ci.a0 = (cn.xx * ci.X + cn.x) * ci.X + cn.c;
    if (auto r = quad_roots(ci.a2, ci.a1, ci.a0)) {
        ci.has_liquid = true;
        ci.Y1 = (*r)[0];
        ci.Y2 = (*r)[1];
        ci.ylo = p.y_of(ci.Y1);
        ci.yhi = p.y_of(ci.Y2);
    } else {
        ci.has_liquid = false;
        ci.Y1 = ci.Y2 = ci.a2 != 0.0 ? -ci.a1 / (2.0 * ci.a2) : 0.0;
        ci.ylo = ci.yhi = p.y_of(ci.Y1);
    }
    const Tangencies& t = tangencies(p);
    ci.lower = x < t.x[0] ? Phase::FrozenSW : (x <= t.x[1] ? Phase::FrozenS : Phase::FrozenSE);
    ci.upper = x < t.x[4] ? Phase::FrozenNW : (x <= t.x[3] ? Phase::FrozenN : Phase::FrozenNE);
    return ci;
}

cplx slope_from(double X, double Y, double xi, const ShapeParams& p) {
    const XiEtaZeta e = xi_eta_zeta(X, Y, p);
    if (std::fabs(e.zeta) < 1e-300) throw std::domain_error("zeta vanishes; slope undefined");
    const double k = p.kappa;
    cplx v;
    if (xi <= 0) v = cplx(e.eta / e.zeta, std::sqrt(-xi) / std::fabs(e.zeta));
    else v = cplx((e.eta + std::sqrt(xi)) / e.zeta, 0.0);
    const cplx num = (v - Y + k * v * Y) * (1.0 + k * X);
    const cplx den = v + X - Y + k * v * Y;
    cplx f = num / den;
    const double im = v.imag() * (1.0 + k * Y) * (1.0 + k * X) * X / std::norm(den);
    return {f.real(), im};
}

double dHy_of(cplx f) { return std::atan2(f.imag(), -f.real()) / kPi; }
double dHx_of(cplx f) { return std::atan2(-f.imag(), 1.0 - f.real()) / kPi; }

double column_xi(const ColumnInfo& ci, double Y) {
    if (!ci.has_liquid) return ((ci.a2 * Y) + ci.a1) * Y + ci.a0;
    return ci.a2 * (Y - ci.Y1) * (Y - ci.Y2);
}

double liquid_dHy(const ColumnInfo& ci, double y, const ShapeParams& p) {
    const double Y = p.Y(y);
    const double xi = std::min(0.0, column_xi(ci, Y));
    return dHy_of(slope_from(ci.X, Y, xi, p));
}

double integrate_column(const ColumnInfo& ci, double y, const ShapeParams& p) {
    using boost::math::quadrature::gauss_kronrod;
    const double L = ci.yhi - ci.ylo;
    const bool from_low = (y - ci.ylo) <= (ci.yhi - y);
    const double base = from_low ? frozen_height(ci.lower, ci.x, ci.ylo, p) : frozen_height(ci.upper, ci.x, ci.yhi, p);
    const double s = from_low ? (y - ci.ylo) / L : (ci.yhi - y) / L;
    if (s <= 0) return base;
    const double theta = std::acos(std::clamp(1.0 - 2.0 * s, -1.0, 1.0));
    auto g = [&](double th) {
        const double off = 0.5 * L * (1.0 - std::cos(th));
        const double yy = from_low ? ci.ylo + off : ci.yhi - off;
        return liquid_dHy(ci, yy, p) * 0.5 * L * std::sin(th);
    };
    double err = 0.0;
    const double val = gauss_kronrod<double, 31>::integrate(g, 0.0, theta, 15, 1e-10, &err);
    if (!(err <= 1e-8) || !std::isfinite(val)) {
        std::ostringstream os;
        os.precision(17);
        os << "height quadrature failed at (" << ci.x << ", " << y << "), error estimate " << err;
        throw std::runtime_error(os.str());
    }
    return from_low ? base + val : base - val;
}

}  // namespace detail

using namespace detail;

double frozen_height(Phase ph, double x, double y, const ShapeParams& p) {
    switch (ph) {
        case Phase::FrozenSW: return y;
        case Phase::FrozenS: return 0.0;
        case Phase::FrozenSE: return y - x + p.a;
        case Phase::FrozenNE: return y - p.c;
        case Phase::FrozenN: return p.b;
        case Phase::FrozenNW: return y - x;
        default: throw std::invalid_argument("not a frozen phase");
    }
}

cplx solve_v(double x, double y, const ShapeParams& p) {
    const double X = p.X(x), Y = p.Y(y);
    const XiEtaZeta e = xi_eta_zeta(X, Y, p);
    if (std::fabs(e.zeta) < 1e-300) throw std::domain_error("zeta vanishes; root undefined");
    if (e.xi <= 0) return {e.eta / e.zeta, std::sqrt(-e.xi) / std::fabs(e.zeta)};
    return {(e.eta + std::sqrt(e.xi)) / e.zeta, 0.0};
}

SlopeInfo complex_slope(double x, double y, const ShapeParams& p) {
    if (!in_hexagon(x, y, p)) throw std::out_of_range("point outside hexagon");
    SlopeInfo s;
    s.x = x;
    s.y = y;
    const double X = p.X(x), Y = p.Y(y);
    const XiEtaZeta e = xi_eta_zeta(X, Y, p);
    s.xi = e.xi;
    if (std::fabs(e.zeta) < 1e-300 && on_boundary(x, y, p, 1e-12)) {
        // zeta vanishes on the east side; v and f are undefined there
        s.v = s.f = cplx(std::nan(""), std::nan(""));
    } else {
        s.v = solve_v(x, y, p);
        s.f = slope_from(X, Y, s.xi, p);
    }
    if (s.xi < 0 && !on_boundary(x, y, p, 1e-14)) {
        s.phase = Phase::Liquid;
        s.dHy = dHy_of(s.f);
        s.dHx = dHx_of(s.f);
        return s;
    }
    const ColumnInfo ci = column_info(x, p);
    const bool below = y <= 0.5 * (ci.ylo + ci.yhi);
    const Phase region = below ? ci.lower : ci.upper;
    switch (region) {
        case Phase::FrozenSW:
        case Phase::FrozenNE: s.dHx = 0; s.dHy = 1; break;
        case Phase::FrozenS:
        case Phase::FrozenN: s.dHx = 0; s.dHy = 0; break;
        default: s.dHx = -1; s.dHy = 1; break;
    }
    s.phase = on_boundary(x, y, p, 1e-14) ? Phase::Boundary : region;
    return s;
}

double height(double x, double y, const ShapeParams& p) {
    if (!in_hexagon(x, y, p, 1e-12)) throw std::out_of_range("point outside hexagon");
    if (on_boundary(x, y, p, 1e-15)) return boundary_value(x, y, p);
    const ColumnInfo ci = column_info(x, p);
    if (y <= ci.ylo) return frozen_height(ci.lower, x, y, p);
    if (y >= ci.yhi) return frozen_height(ci.upper, x, y, p);
    return integrate_column(ci, y, p);
}

MonotoneCheck monotone_in_q_check(double x, double y, double q, double q2, double a, double b, double c, double tol) {
    if (q < q2) throw std::invalid_argument("monotone check needs q >= q'");
    MonotoneCheck m;
    m.hq = height(x, y, ShapeParams(q, a, b, c));
    m.hq2 = q == q2 ? m.hq : height(x, y, ShapeParams(q2, a, b, c));
    m.ordered = m.hq >= m.hq2 - tol;
    return m;
}

std::optional<std::array<double, 2>> column_liquid_interval(double x, const ShapeParams& p) {
    const ColumnInfo ci = column_info(x, p);
    if (!ci.has_liquid) return std::nullopt;
    return std::array<double, 2>{ci.ylo, ci.yhi};
}

std::optional<std::array<double, 2>> row_liquid_interval(double y, const ShapeParams& p) {
    const Conic cn = arctic_conic(p);
    const double Y = p.Y(y);
    auto r = quad_roots(cn.xx, cn.xy * Y + cn.x, (cn.yy * Y + cn.y) * Y + cn.c);
    if (!r) return std::nullopt;
    return std::array<double, 2>{p.x_of((*r)[0]), p.x_of((*r)[1])};
}

double level_line_U(double h, double x, const ShapeParams& p) { return level_line_U(h, x, p, arctic_tangency(p)); }

double level_line_U(double h, double x, const ShapeParams& p, const ArcticGeometry&) {
    if (!(h >= 0 && h <= p.b)) throw std::out_of_range("level outside [0, b]");
    if (!(x >= 0 && x <= p.a + p.c)) throw std::out_of_range("abscissa outside the hexagon");
    const ColumnInfo ci = column_info(x, p);
    const double hlo = frozen_height(ci.lower, x, ci.ylo, p);
    const double hhi = frozen_height(ci.upper, x, ci.yhi, p);
    if (h <= hlo) {
        switch (ci.lower) {
            case Phase::FrozenSW: return h;
            case Phase::FrozenS: return ci.ylo;
            default: return h + x - p.a;
        }
    }
    if (h >= hhi) {
        switch (ci.upper) {
            case Phase::FrozenNW: return h + x;
            case Phase::FrozenN: return ci.yhi;
            default: return h + p.c;
        }
    }
    auto f = [&](double y) {
        if (y <= ci.ylo) return hlo - h;
        if (y >= ci.yhi) return hhi - h;
        return integrate_column(ci, y, p) - h;
    };
    boost::math::tools::eps_tolerance<double> tol(44);
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, ci.ylo, ci.yhi, hlo - h, hhi - h, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace hexmix
