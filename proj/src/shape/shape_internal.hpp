#pragma once

#include <array>
#include <optional>

#include "hexmix/shape.hpp"

namespace hexmix::detail {

struct ColumnInfo {
    double x = 0, X = 0;
    double a2 = 0, a1 = 0, a0 = 0;  // xi = a2 Y^2 + a1 Y + a0 on this column
    bool has_liquid = false;
    double Y1 = 0, Y2 = 0, ylo = 0, yhi = 0;
    Phase lower = Phase::FrozenS, upper = Phase::FrozenN;
};

// Tangency points in side order S, SE, E, N, NW, W.
struct Tangencies {
    std::array<double, 6> x{};
    std::array<double, 6> y{};
    std::array<double, 6> t{};     // parameter along the side in tilted coordinates
    std::array<double, 6> disc{};  // relative discriminant of the side quadratic
};

struct LineQuad {
    double a2 = 0, a1 = 0, a0 = 0;
};

// xi(X0 + t DX, Y0 + t DY) as a quadratic in t.
LineQuad line_quadratic(const Conic& cn, double X0, double Y0, double DX, double DY);

Tangencies tangencies(const ShapeParams& p);
ColumnInfo column_info(double x, const ShapeParams& p);
std::optional<std::array<double, 2>> quad_roots(double a2, double a1, double a0);

bool on_boundary(double x, double y, const ShapeParams& p, double tol);
double boundary_value(double x, double y, const ShapeParams& p);
cplx slope_from(double X, double Y, double xi, const ShapeParams& p);
double dHy_of(cplx f);
double dHx_of(cplx f);
double integrate_column(const ColumnInfo& ci, double y, const ShapeParams& p);

}  // namespace hexmix::detail
