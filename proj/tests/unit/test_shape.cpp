#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "hexmix/shape.hpp"
#include "support/oracles.hpp"

using namespace hexmix;

namespace {

const double kPi = std::acos(-1.0);

// Points of a regular grid that lie strictly inside the hexagon.
std::vector<Point> hex_grid(const ShapeParams& p, int n) {
    std::vector<Point> out;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            const double x = (p.a + p.c) * i / n, y = (p.b + p.c) * j / n;
            if (in_hexagon(x, y, p, -1e-9)) out.push_back({x, y});
        }
    return out;
}

double toms(const std::function<double(double)>& f, double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

}  // namespace

TEST_CASE("q-bracket") {
    CHECK(bracket(0.37, 1e-12) == doctest::Approx(0.37).epsilon(1e-9));
    for (double q : {-2.0, 0.0, 0.1, 3.0}) CHECK(bracket(1.0, q) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bracket(2.0, std::log(2.0)) == doctest::Approx(1.5).epsilon(1e-14));
    for (double q : {-1.0, 0.0, 0.4})
        for (double x : {0.0, 0.3, 1.7}) CHECK(untilt(tilt(x, q), q) == doctest::Approx(x).epsilon(1e-13));
    CHECK(std::abs(bracket(cplx(0.5, 0.2), 1e-12) - cplx(0.5, 0.2)) < 1e-9);
}

TEST_CASE("xi at reference points") {
    const ShapeParams p(0.0, 1, 1, 1);
    CHECK(xi_eta_zeta(1.0, 1.0, p).xi == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(std::fabs(xi_eta_zeta(0.5, 0.0, p).xi) < 1e-14);
    const Conic cn = arctic_conic(p);
    for (double X : {0.1, 0.7, 1.3})
        for (double Y : {0.2, 1.1, 1.9}) CHECK(cn(X, Y) == doctest::Approx(xi_eta_zeta(X, Y, p).xi).epsilon(1e-12));
}

TEST_CASE("arctic curve at q = 0 is the unit ellipse") {
    const ShapeParams p(0.0, 1, 1, 1);
    double worst = 0;
    for (const Point& z : arctic_polyline(p, 100)) worst = std::max(worst, std::fabs(oracle::unit_ellipse(z.x, z.y)));
    CHECK(worst < 1e-9);
    // ellipse oracle, conic and a root-finder along rows agree
    const auto rg = q0_ellipse_range(1, 1, 1);
    for (int i = 0; i < 40; ++i) {
        const double xi = rg[1] - 0.05 * i;
        const EllipsePoint e = q0_ellipse_oracle(1, 1, 1, xi);
        CHECK(std::fabs(oracle::unit_ellipse(e.x, e.y)) < 1e-8);
        CHECK(std::fabs(xi_eta_zeta(e.x, e.y, p).xi) < 1e-8);
    }
    const EllipsePoint sw = q0_ellipse_oracle(1, 1, 1, 0.0);
    CHECK(sw.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::fabs(sw.y) < 1e-14);
}

TEST_CASE("ellipse oracle for unequal sides") {
    const ShapeParams p(0.0, 1.1, 0.9, 1.0);
    const auto rg = q0_ellipse_range(1.1, 0.9, 1.0);
    int checked = 0;
    for (int i = 1; i <= 50; ++i) {
        const double xi = rg[1] - 0.04 * i;
        const EllipsePoint e = q0_ellipse_oracle(1.1, 0.9, 1.0, xi);
        if (!(e.y > 1e-6 && e.y < p.b + p.c)) continue;
        CHECK(std::fabs(xi_eta_zeta(e.x, e.y, p).xi) < 1e-9);
        const auto row = row_liquid_interval(e.y, p);
        REQUIRE(row.has_value());
        CHECK(std::min(std::fabs((*row)[0] - e.x), std::fabs((*row)[1] - e.x)) < 1e-8);
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("south-west tangency") {
    const ShapeParams p0(0.0, 1, 1, 1);
    CHECK(arctic_tangency(p0).x_sw() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tangency_sw_closed_form(p0) == 0.5);
    for (double q : {0.1, -0.7, 1.5}) {
        CAPTURE(q);
        const ShapeParams p(q, 1, 1.2, 0.8);
        // root of xi on the south side, found directly
        const double Xhi = p.X(p.a);
        const double X = toms([&](double X) { return xi_eta_zeta(X, 0.0, p).eta; }, 0.0, Xhi);
        CHECK(std::fabs(p.x_of(X) - tangency_sw_closed_form(p)) < 1e-10);
        const ArcticGeometry g = arctic_tangency(p);
        CHECK(std::fabs(g.x_sw() - tangency_sw_closed_form(p)) < 1e-10);
        CHECK(g.ell(0.0) == doctest::Approx(g.x_sw()).epsilon(1e-10));
    }
}

TEST_CASE("complex slope") {
    const ShapeParams p(0.0, 1, 1, 1);
    const cplx v = solve_v(1.0, 1.0, p);
    CHECK(std::abs(v - std::polar(1.0, kPi / 3)) < 1e-10);
    const SlopeInfo s = complex_slope(1.0, 1.0, p);
    CHECK(std::abs(s.f - std::polar(1.0, kPi / 3)) < 1e-10);
    CHECK(s.dHx == doctest::Approx(-1.0 / 3).epsilon(1e-10));
    CHECK(s.dHy == doctest::Approx(2.0 / 3).epsilon(1e-10));
    // near the south side, right of the tangency: frozen, flat, v real
    const SlopeInfo fz = complex_slope(0.8, 0.01, p);
    CHECK(fz.phase == Phase::FrozenS);
    CHECK(fz.dHx == doctest::Approx(0.0));
    CHECK(fz.dHy == doctest::Approx(0.0));
    CHECK(std::fabs(solve_v(0.8, 0.01, p).imag()) < 1e-9);
    // every side point gets a frozen gradient
    for (double t : {0.0, 0.3, 1.0}) CHECK(complex_slope(2.0, 1.0 + t, p).phase == Phase::Boundary);
}

TEST_CASE("phase consistency and gradient cone") {
    for (double q : {0.0, 0.8}) {
        const ShapeParams p(q, 1, 1.3, 0.7);
        int liquid = 0;
        for (const Point& z : hex_grid(p, 100)) {
            const SlopeInfo s = complex_slope(z.x, z.y, p);
            const double xi = arctic_conic(p)(p.X(z.x), p.Y(z.y));
            if (std::fabs(xi) < 1e-9) continue;
            const bool liq = s.phase == Phase::Liquid;
            CHECK(liq == (xi < 0));
            CHECK(liq == (s.f.imag() > 0));
            // cone: -1 <= dHx <= 0, 0 <= dHy <= 1, 0 <= dHx + dHy <= 1
            const double r = s.dHx, t = s.dHy;
            CHECK(r <= 1e-12);
            CHECK(r >= -1 - 1e-12);
            CHECK(t >= -1e-12);
            CHECK(t <= 1 + 1e-12);
            CHECK(r + t >= -1e-12);
            CHECK(r + t <= 1 + 1e-12);
            if (liq) {
                CHECK(r < 0);
                CHECK(t > 0);
                CHECK(r + t > 0);
                CHECK(t < 1);
                ++liquid;
            }
        }
        CHECK(liquid > 1000);
    }
}

TEST_CASE("height values") {
    const ShapeParams p(0.0, 1, 1, 1);
    CHECK(std::fabs(height(1.0, 1.0, p) - 0.5) < 1e-8);
    // boundary values on all six sides
    for (double t : {0.1, 0.45, 0.9}) {
        CHECK(std::fabs(height(t, 0.0, p)) < 1e-10);
        CHECK(std::fabs(height(0.0, t, p) - t) < 1e-10);
        CHECK(std::fabs(height(1.0 + t, t, p)) < 1e-10);
        CHECK(std::fabs(height(2.0, 1.0 + t, p) - t) < 1e-10);
        CHECK(std::fabs(height(1.0 + t, 2.0, p) - 1.0) < 1e-10);
        CHECK(std::fabs(height(t, 1.0 + t, p) - 1.0) < 1e-10);
    }
    // SW frozen region: H = y
    CHECK(std::fabs(height(0.1, 0.05, p) - 0.05) < 1e-8);
    const ShapeParams pt(0.6, 1, 1, 1);
    CHECK(std::fabs(height(0.05, 0.1, pt) - 0.1) < 1e-8);
}

TEST_CASE("height gradient matches the complex slope") {
    const ShapeParams p(0.3, 1, 1, 1);
    const double hstep = 1e-5;
    int n = 0;
    for (const Point& z : hex_grid(p, 14)) {
        const SlopeInfo s = complex_slope(z.x, z.y, p);
        if (s.phase != Phase::Liquid || s.xi > -1e-2) continue;
        const double gx = (height(z.x + hstep, z.y, p) - height(z.x - hstep, z.y, p)) / (2 * hstep);
        const double gy = (height(z.x, z.y + hstep, p) - height(z.x, z.y - hstep, p)) / (2 * hstep);
        CHECK(std::fabs(gx - s.dHx) < 1e-6);
        CHECK(std::fabs(gy - s.dHy) < 1e-6);
        if (++n == 100) break;
    }
    CHECK(n >= 60);
}

TEST_CASE("monotonicity in q") {
    CHECK(monotone_in_q_check(0.8, 0.7, 0.2, 0.2, 1, 1, 1).hq == monotone_in_q_check(0.8, 0.7, 0.2, 0.2, 1, 1, 1).hq2);
    const ShapeParams p(0.1, 1, 1, 1);
    for (const Point& z : hex_grid(p, 15)) {
        const MonotoneCheck m = monotone_in_q_check(z.x, z.y, 0.1, 0.0, 1, 1, 1);
        CHECK(m.ordered);
        CHECK(m.hq >= m.hq2 - 1e-8);
    }
}

TEST_CASE("level lines of the shape") {
    const ShapeParams p(0.0, 1, 1, 1);
    const ArcticGeometry g = arctic_tangency(p);
    CHECK(level_line_U(0.5, 1.0, p, g) == doctest::Approx(1.0).epsilon(1e-8));
    for (double h : {0.05, 0.1}) {
        for (double x = 0.0; x <= g.ell(h) - 1e-3; x += 0.02) CHECK(std::fabs(level_line_U(h, x, p, g) - h) < 1e-10);
    }
    for (double h : {0.2, 0.5, 0.85}) {
        double prev = -1;
        for (int i = 0; i <= 40; ++i) {
            const double x = 2.0 * i / 40, u = level_line_U(h, x, p, g);
            CHECK(u >= prev - 1e-12);
            prev = u;
        }
    }
}

TEST_CASE("edge coordinates") {
    const ShapeParams p(0.0, 1, 1, 1);
    const EdgeCoords ec = edge_coords(0.8, 0.25, p, 1e300);
    CHECK(ec.side == Side::S);
    CHECK(ec.d == doctest::Approx(0.5).epsilon(1e-12));
    // at (1, 1/4) the south-east side is closer than the south side
    const EdgeCoords se = edge_coords(1.0, 0.25, p, 1e300);
    CHECK(se.side == Side::SE);
    CHECK(se.d == doctest::Approx(std::sqrt(0.25 / std::sqrt(2.0))).epsilon(1e-12));
    CHECK(edge_coords(1.0, 1.0, p, 4).dd >= 0.5);
    for (const Point& z : arctic_polyline(p, 24)) CHECK(edge_coords(z.x, z.y, p, 1e300).e < 1e-8);
    // distance along w to the arctic curve is comparable to d e
    double lo = 1e300, hi = 0;
    for (const Point& z : hex_grid(p, 20)) {
        const EdgeCoords e = edge_coords(z.x, z.y, p, 1e300);
        if (!(e.e > 1e-3)) continue;
        const double r = e.dist_arctic / (e.d * e.e);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo > 0);
    CHECK(hi / lo < 100);
}

TEST_CASE("annuli and the augmented liquid region") {
    CHECK(in_annulus_A(0.3, 1));
    CHECK(in_annulus_A(0.25, 1));
    CHECK(in_annulus_A(0.25, 2));
    CHECK(ell0(1.0, std::pow(2.0, 30), 0.0) == 0);
    const ShapeParams p(0.0, 1, 1, 1);
    CHECK(augmented_liquid(1.0, 1.0, p, 100, 0.3));
    CHECK_FALSE(augmented_liquid(0.9, 0.01, p, 1e4, 0.3));
    for (const Point& z : hex_grid(p, 30))
        if (augmented_liquid(z.x, z.y, p, 64, 0.2)) CHECK(augmented_liquid(z.x, z.y, p, 64, 0.35));
}

TEST_CASE("rescaled height") {
    const ShapeParams p(0.0, 1, 1, 1);
    const double x0 = 1.0, y0 = 0.2;
    const EdgeCoords ec = edge_coords(x0, y0, p, 1e300);
    REQUIRE(ec.e > 0);
    CHECK(rescaled_height(x0, y0, p, 1e300, 0, 0) ==
          doctest::Approx(std::pow(ec.d, -0.5) * std::pow(ec.e, -1.5) * height(x0, y0, p)).epsilon(1e-12));
    for (double a : {-0.05, 0.0, 0.05})
        for (double b : {-0.05, 0.0, 0.05}) CHECK(std::fabs(rescaled_height(x0, y0, p, 1e300, a, b)) <= 10);
}

TEST_CASE("edge scaling exponents") {
    for (double q : {0.0, 0.1}) {
        const EdgeScalingReport e = edge_scaling_check(ShapeParams(q, 1, 1, 1), 0.2, 1e-5, 1e-3, 8);
        CHECK(e.fit_H.slope == doctest::Approx(1.5).epsilon(0.05 / 1.5));
        CHECK(e.fit_dHy.slope == doctest::Approx(0.5).epsilon(0.1));
    }
    const LeftEdgeReport l = left_edge_check(ShapeParams(0.0, 1, 1, 1), 0.2, 1e-5, 1e-3, 8);
    CHECK(l.min_dHy >= 0.1);
    CHECK(l.max_dHy <= 10);
}

TEST_CASE("arctic boundary shift") {
    CHECK(boundary_shift_check(0.3, 0.3, 0.0) == 0.0);
    std::vector<double> ratios;
    for (double dq : {1e-3, 1e-2, 1e-1}) {
        const double s = boundary_shift_check(dq, 0.0, 0.0);
        CHECK(s > 0);
        ratios.push_back(s / dq);
    }
    CHECK(*std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end()) < 3);
}
