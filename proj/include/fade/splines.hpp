#pragma once

#include "fade/grid.hpp"

namespace fade {

// Two basis families share the same support pattern (four cells) and the same
// end-correction rule; they differ only in the piecewise pieces.
enum class SplineFamily {
    CubicTrig, // built from half-angle sine products
    CubicPoly  // classical cubic B-spline scaled by 1/h^3
};

struct BasisSpec {
    SplineFamily family = SplineFamily::CubicTrig;
    bool modified = true; // end-corrected, M+1 members indexed 0..M
};

// Values at lattice knots: center = value at its own knot, neighbor = value at
// the two adjacent knots, deriv = first-derivative magnitude at the adjacent
// knots (the derivative vanishes at the center knot).
struct KnotValueTable {
    double center;   // A0
    double neighbor; // A1
    double deriv;    // z
};

// Throws std::invalid_argument when the trigonometric formulas are singular
// (h, 3h/2 or h/2 hitting a multiple of pi).
KnotValueTable knot_value_table(SplineFamily family, const Grid& grid);

// Unmodified basis member m in -1..M+1, evaluated anywhere. Zero outside
// [x_{m-2}, x_{m+2}).
double eval_basis(SplineFamily family, int m, double x, const Grid& grid);

// First derivative of the unmodified basis (used by oracle tests).
double eval_basis_derivative(SplineFamily family, int m, double x, const Grid& grid);

// End-corrected member k in 0..M.
double modified_basis_value(SplineFamily family, int k, double x, const Grid& grid);

// First derivative of the end-corrected basis at a knot x_i (exact, from the
// knot tables).
double modified_basis_knot_derivative(SplineFamily family, int k, int i, const Grid& grid);

// Value of the end-corrected basis at a knot x_i (exact, from the knot tables).
double modified_basis_knot_value(SplineFamily family, int k, int i, const Grid& grid);

// Second derivative of the cubic polynomial B-spline at knots:
// -12/h^2 at the center, 6/h^2 at the neighbors, 0 elsewhere.
double cubic_poly_second_derivative_knot(int m, int i, const Grid& grid);

} // namespace fade
