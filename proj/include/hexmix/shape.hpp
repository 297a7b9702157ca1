// Limit shape of volume-tilted lozenge tilings of the a x b x c hexagon.
//
// Tilted coordinates X = (e^{qx} - 1)/kappa, Y = (e^{qy} - 1)/kappa with
// kappa = 1 - e^{-q} straighten every hexagon side, and the arctic boundary
// is the conic xi(X, Y) = 0. Inside it (xi < 0) the complex slope f has
// positive imaginary part and
//   dH/dy = 1 - arg f / pi,   dH/dx = arg(f - 1) / pi - 1.
// Outside it the shape is affine on six frozen regions.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hexmix {

using cplx = std::complex<double>;

// [z] = (e^{-qz} - 1)/(e^{-q} - 1), equal to z at q = 0.
double bracket(double z, double q);
cplx bracket(cplx z, double q);

// -[-x] and its inverse.
double tilt(double x, double q);
double untilt(double X, double q);

struct ShapeParams {
    double q = 0, a = 1, b = 1, c = 1;
    double qt = 1;     // e^q
    double kappa = 0;  // 1 - e^{-q}
    double A = 1, B = 1, C = 1;

    ShapeParams() = default;
    ShapeParams(double q, double a, double b, double c);

    double X(double x) const { return tilt(x, q); }
    double Y(double y) const { return tilt(y, q); }
    double x_of(double X) const { return untilt(X, q); }
    double y_of(double Y) const { return untilt(Y, q); }
};

struct XiEtaZeta {
    double xi = 0, eta = 0, zeta = 0;
};

XiEtaZeta xi_eta_zeta(double X, double Y, const ShapeParams& p);

// xi as a quadratic form in (X, Y).
struct Conic {
    double xx = 0, xy = 0, yy = 0, x = 0, y = 0, c = 0;
    double operator()(double X, double Y) const { return xx * X * X + xy * X * Y + yy * Y * Y + x * X + y * Y + c; }
    std::array<double, 2> centre() const;
};

Conic arctic_conic(const ShapeParams& p);

enum class Phase { Liquid, FrozenS, FrozenN, FrozenSW, FrozenNE, FrozenSE, FrozenNW, Boundary };
std::string phase_name(Phase ph);

struct SlopeInfo {
    double x = 0, y = 0;
    cplx v;
    cplx f;
    Phase phase = Phase::Liquid;
    double dHx = 0, dHy = 0;
    double xi = 0;
};

bool in_hexagon(double x, double y, const ShapeParams& p, double tol = 1e-12);

cplx solve_v(double x, double y, const ShapeParams& p);
SlopeInfo complex_slope(double x, double y, const ShapeParams& p);

// Limit shape value. Throws std::runtime_error if quadrature fails.
double height(double x, double y, const ShapeParams& p);

// Closed-form frozen heights; the region is chosen geometrically.
double frozen_height(Phase ph, double x, double y, const ShapeParams& p);

struct MonotoneCheck {
    double hq = 0, hq2 = 0;
    bool ordered = true;
};
MonotoneCheck monotone_in_q_check(double x, double y, double q, double q2, double a, double b, double c,
                                  double tol = 1e-8);

// Liquid y-interval of the vertical line through x, if any.
std::optional<std::array<double, 2>> column_liquid_interval(double x, const ShapeParams& p);
// Liquid x-interval of the horizontal line through y, if any.
std::optional<std::array<double, 2>> row_liquid_interval(double y, const ShapeParams& p);

enum class Side { S = 0, SE, E, N, NW, W };  // y=0, x-y=a, x=a+c, y=b+c, y-x=b, x=0
std::string side_name(Side s);

struct Point {
    double x = 0, y = 0;
};

struct ArcticGeometry {
    ShapeParams params;
    // Tangency points in side order (S, SE, E, N, NW, W); named p^SW, p^SE,
    // p^E, p^NE, p^NW, p^W respectively.
    std::array<Point, 6> tangency;

    double x_sw() const { return tangency[0].x; }
    double x_se() const { return tangency[1].x; }
    double x_ne() const { return tangency[3].x; }
    double x_nw() const { return tangency[4].x; }
    double y_w() const { return tangency[5].y; }

    // Abscissa of the south-west arc at height y in [0, y_w].
    double ell(double y) const;
};

// Throws std::domain_error when the parameters leave the convex regime.
ArcticGeometry arctic_tangency(const ShapeParams& p);

// SW tangency abscissa from its closed form.
double tangency_sw_closed_form(const ShapeParams& p);

// y with H(x, y) = h; sup/inf conventions at h = 0 and h = b.
double level_line_U(double h, double x, const ShapeParams& p, const ArcticGeometry& g);
double level_line_U(double h, double x, const ShapeParams& p);

struct EdgeCoords {
    double d = 0;      // sqrt of the distance to the nearest side
    double e = 0;      // distance to the arctic curve parallel to that side
    double dd = 0;     // max(d, N^{-1/2})
    double ee = 0;     // max(e, dd^{-1/3} N^{-2/3})
    Side side = Side::S;
    Point v, w, u;     // side direction, towards nearest arctic point, tangent there
    double dist_arctic = 0;
    Point nearest;     // nearest arctic point
};

EdgeCoords edge_coords(double x, double y, const ShapeParams& p, double N);

// Closest arctic point to (x, y) and the anticlockwise unit tangent there.
struct ArcticProjection {
    Point nearest;
    Point tangent;
    double dist = 0;
};
ArcticProjection project_to_arctic(double x, double y, const ShapeParams& p);

// Arctic boundary as a closed polyline of n points, anticlockwise.
std::vector<Point> arctic_polyline(const ShapeParams& p, int n);

struct AnnulusInfo {
    int ell = 0;
    bool inA = false, inB = false, inAu = false;
    double de = 0;
};

// Primary annulus index (the l with 4^-l <= dd*ee <= 4^(1-l)) and membership.
AnnulusInfo annulus_index(double x, double y, const ShapeParams& p, double N, double u);
bool in_annulus_A(double de, int ell);
bool in_annulus_B(double de, int ell);
// The l0 with 2^-21 V <= 4^l0 < 2^-19 V, V = q^{2/3} N^{2/3 - A delta}.
int ell0(double q, double N, double a_delta);

bool augmented_liquid(double x, double y, const ShapeParams& p, double N, double delta);

double rescaled_height(double x0, double y0, const ShapeParams& p, double N, double xh, double yh);

// Closed-form q = 0 parametrisation of the south / south-west arc.
struct EllipsePoint {
    double x = 0, y = 0;
};
EllipsePoint q0_ellipse_oracle(double a, double b, double c, double xi);
// Admissible parameter range for the oracle.
std::array<double, 2> q0_ellipse_range(double a, double b, double c);

struct ScalingFit {
    double slope = 0, intercept = 0, r2 = 0;
};
ScalingFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys);

struct EdgeScalingReport {
    std::vector<double> e, H, dHy, dHx;
    double d = 0;
    ScalingFit fit_H, fit_dHy, fit_dHx;
    double prefactor_ratio_H = 0;  // max/min of H / (d^{1/2} e^{3/2})
    double prefactor_ratio_dHy = 0;
    double prefactor_ratio_dHx = 0;
};

// Transect at fixed y = d^2 approaching the south arc from inside, with e
// log-spaced in [e_min, e_max].
EdgeScalingReport edge_scaling_check(const ShapeParams& p, double d, double e_min, double e_max, int n);

// Left-of-tangency transect: the same fixed-d line approaching the
// south-west arc; reports the range of dH/dy.
struct LeftEdgeReport {
    double min_dHy = 0, max_dHy = 0;
};
LeftEdgeReport left_edge_check(const ShapeParams& p, double d, double e_min, double e_max, int n);

// Horizontal shift of the south arc between q and q2 at height y.
double boundary_shift_check(double q, double q2, double y, double a = 1, double b = 1, double c = 1);

}  // namespace hexmix
