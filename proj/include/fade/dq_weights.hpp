#pragma once

#include "fade/grid.hpp"
#include "fade/linalg.hpp"
#include "fade/splines.hpp"

namespace fade {

// Dense table of weighted coefficients: row i approximates the derivative at
// collocation point x_i from the values at all grid points.
struct WeightMatrix {
    DenseMatrix entries; // (M+1) x (M+1)
    Grid grid;
    SplineFamily family = SplineFamily::CubicTrig;
    int integer_order = 0;        // s >= 1 for the integer route
    double fractional_order = 0.0; // beta in (1,2] for the fractional route
    bool interior_rows_only = false;

    int points() const { return grid.points(); }
};

// Collocation matrix of the end-corrected basis at the knots (tridiagonal by
// construction; strictly diagonally dominant for the trig family when h < 1).
TridiagonalSystem collocation_system(SplineFamily family, const Grid& grid);

// First-order weights: one tridiagonal solve per collocation point.
WeightMatrix first_order_weights(SplineFamily family, const Grid& grid);

// Order-s weights from order-(s-1) and order-1 by the closed-form recurrence;
// the diagonal is the negated off-diagonal row sum.
WeightMatrix higher_order_weights(const WeightMatrix& w1, int s);

// Fractional-order weights (cubic polynomial family only): collocation solve
// against the closed-form Riemann-Liouville derivatives at interior points.
// Rows 0 and M stay empty; the boundary closed forms are singular there.
WeightMatrix fractional_weights(double beta, const Grid& grid);

} // namespace fade
