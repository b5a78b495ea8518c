#include "fade/dq_weights.hpp"

#include "fade/frac.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fade {

TridiagonalSystem collocation_system(SplineFamily family, const Grid& grid) {
    const int M = grid.cells;
    if (M < 3) throw std::invalid_argument("collocation_system: need at least 3 cells");
    const KnotValueTable t = knot_value_table(family, grid);
    TridiagonalSystem sys;
    sys.diag.assign(M + 1, t.center);
    sys.lower.assign(M, t.neighbor);
    sys.upper.assign(M, t.neighbor);
    sys.diag[0] = t.center + 2.0 * t.neighbor;
    sys.diag[M] = t.center + 2.0 * t.neighbor;
    sys.lower[0] = 0.0;      // row 1 starts (0, A0, A1)
    sys.upper[M - 1] = 0.0;  // row M-1 ends (A1, A0, 0)
    return sys;
}

WeightMatrix first_order_weights(SplineFamily family, const Grid& grid) {
    const int M = grid.cells;
    const TridiagonalSystem sys = collocation_system(family, grid);
    WeightMatrix w;
    w.entries = DenseMatrix(M + 1, M + 1);
    w.grid = grid;
    w.family = family;
    w.integer_order = 1;

    std::vector<double> rhs(M + 1);
    for (int i = 0; i <= M; ++i) {
        for (int k = 0; k <= M; ++k)
            rhs[k] = modified_basis_knot_derivative(family, k, i, grid);
        const std::vector<double> row = thomas_solve(sys, rhs);
        for (int j = 0; j <= M; ++j) w.entries(i, j) = row[j];
    }
    return w;
}

WeightMatrix higher_order_weights(const WeightMatrix& w1, int s) {
    if (w1.integer_order != 1)
        throw std::invalid_argument("higher_order_weights: base must be first-order weights");
    if (s < 2) throw std::invalid_argument("higher_order_weights: target order must be >= 2");
    const int n = w1.points();
    const Grid& g = w1.grid;

    WeightMatrix out = w1;
    DenseMatrix prev = w1.entries;
    for (int order = 2; order <= s; ++order) {
        DenseMatrix next(n, n);
        for (int i = 0; i < n; ++i) {
            double diag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double v =
                    order * (prev(i, i) * w1.entries(i, j) - prev(i, j) / (g.knot(i) - g.knot(j)));
                next(i, j) = v;
                diag -= v;
            }
            next(i, i) = diag;
        }
        prev = std::move(next);
    }
    out.entries = std::move(prev);
    out.integer_order = s;
    return out;
}

WeightMatrix fractional_weights(double beta, const Grid& grid) {
    if (!(beta > 1.0 && beta <= 2.0))
        throw std::invalid_argument("fractional_weights: beta must lie in (1,2]");
    const int M = grid.cells;
    const TridiagonalSystem sys = collocation_system(SplineFamily::CubicPoly, grid);

    WeightMatrix w;
    w.entries = DenseMatrix(M + 1, M + 1);
    w.grid = grid;
    w.family = SplineFamily::CubicPoly;
    w.fractional_order = beta;
    w.interior_rows_only = true;

    std::vector<double> rhs(M + 1);
    for (int i = 1; i < M; ++i) {
        const double xi = grid.knot(i);
        for (int k = 0; k <= M; ++k) rhs[k] = rl_modified_bspline_deriv(k, beta, xi, grid);
        const std::vector<double> row = thomas_solve(sys, rhs);
        for (int j = 0; j <= M; ++j) w.entries(i, j) = row[j];
    }
    return w;
}

} // namespace fade
