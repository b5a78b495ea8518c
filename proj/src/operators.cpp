#include "fade/operators.hpp"

#include <stdexcept>

namespace fade {

namespace {

std::vector<double> interior_column(const WeightMatrix& w, int col) {
    const int M = w.grid.cells;
    std::vector<double> out(M - 1);
    for (int i = 1; i < M; ++i) out[i - 1] = w.entries(i, col);
    return out;
}

SpatialOperator::AxisData make_axis(const Grid& g, double kappa, double eps,
                                    const WeightMatrix& w1, const WeightMatrix& w2) {
    SpatialOperator::AxisData ax;
    ax.grid = g;
    ax.kappa = kappa;
    ax.eps = eps;
    ax.w1_left = interior_column(w1, 0);
    ax.w1_right = interior_column(w1, g.cells);
    ax.w2_left = interior_column(w2, 0);
    ax.w2_right = interior_column(w2, g.cells);
    return ax;
}

void check_same_grid(const WeightMatrix& a, const WeightMatrix& b) {
    if (a.grid.cells != b.grid.cells || a.grid.a != b.grid.a || a.grid.b != b.grid.b)
        throw std::invalid_argument("operator assembly: weight matrices on different grids");
}

} // namespace

SpatialOperator SpatialOperator::make_1d(DenseMatrix interior, AxisData x, bool fractional) {
    SpatialOperator op;
    op.interior_ = std::move(interior);
    op.axes_ = {std::move(x)};
    op.fractional_ = fractional;
    return op;
}

SpatialOperator SpatialOperator::make_2d(DenseMatrix interior, AxisData x, AxisData y,
                                         bool fractional) {
    SpatialOperator op;
    op.interior_ = std::move(interior);
    op.axes_ = {std::move(x), std::move(y)};
    op.fractional_ = fractional;
    return op;
}

SpatialOperator assemble_K_1d(double kappa, double eps, const WeightMatrix& w1,
                              const WeightMatrix& w2) {
    check_same_grid(w1, w2);
    const int M = w1.grid.cells;
    const int n = M - 1;
    DenseMatrix K(n, n);
    for (int i = 1; i < M; ++i)
        for (int j = 1; j < M; ++j)
            K(i - 1, j - 1) = kappa * w1.entries(i, j) - eps * w2.entries(i, j);
    return SpatialOperator::make_1d(std::move(K), make_axis(w1.grid, kappa, eps, w1, w2), false);
}

SpatialOperator assemble_K_2d(double kappa_x, double kappa_y, double eps_x, double eps_y,
                              const WeightMatrix& wx1, const WeightMatrix& wx2,
                              const WeightMatrix& wy1, const WeightMatrix& wy2) {
    check_same_grid(wx1, wx2);
    check_same_grid(wy1, wy2);
    const int nx = wx1.grid.cells - 1;
    const int ny = wy1.grid.cells - 1;
    DenseMatrix K(nx * ny, nx * ny);
    // x-coupling: block-diagonal over j; y-coupling: strided over i.
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int row = j * nx + i;
            for (int m = 0; m < nx; ++m)
                K(row, j * nx + m) +=
                    kappa_x * wx1.entries(i + 1, m + 1) - eps_x * wx2.entries(i + 1, m + 1);
            for (int m = 0; m < ny; ++m)
                K(row, m * nx + i) +=
                    kappa_y * wy1.entries(j + 1, m + 1) - eps_y * wy2.entries(j + 1, m + 1);
        }
    }
    return SpatialOperator::make_2d(std::move(K), make_axis(wx1.grid, kappa_x, eps_x, wx1, wx2),
                                    make_axis(wy1.grid, kappa_y, eps_y, wy1, wy2), false);
}

SpatialOperator assemble_frac_L_2d(double eps_x, double eps_y, const WeightMatrix& wbx,
                                   const WeightMatrix& wby) {
    if (wbx.fractional_order <= 0.0 || wby.fractional_order <= 0.0)
        throw std::invalid_argument("assemble_frac_L_2d: needs fractional weight matrices");
    const int nx = wbx.grid.cells - 1;
    const int ny = wby.grid.cells - 1;
    DenseMatrix L(nx * ny, nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int row = j * nx + i;
            for (int m = 0; m < nx; ++m)
                L(row, j * nx + m) += eps_x * wbx.entries(i + 1, m + 1);
            for (int m = 0; m < ny; ++m)
                L(row, m * nx + i) += eps_y * wby.entries(j + 1, m + 1);
        }
    }
    // The fractional scheme's boundary columns multiply homogeneous Dirichlet
    // data; they are retained anyway for completeness.
    return SpatialOperator::make_2d(std::move(L), make_axis(wbx.grid, 0.0, eps_x, wbx, wbx),
                                    make_axis(wby.grid, 0.0, eps_y, wby, wby), true);
}

std::vector<double> boundary_load(const SpatialOperator& op, double t, const ScalarFn2& f,
                                  const ScalarFn1& g1, const ScalarFn1& g2) {
    if (op.two_dimensional())
        throw std::invalid_argument("boundary_load: operator is two-dimensional");
    const auto& ax = op.axis_x();
    const int n = op.dim();
    const double gl = g1(t), gr = g2(t);
    std::vector<double> G(n);
    for (int i = 0; i < n; ++i) {
        const double x = ax.grid.knot(i + 1);
        G[i] = f(x, t) - ax.kappa * (ax.w1_left[i] * gl + ax.w1_right[i] * gr) +
               ax.eps * (ax.w2_left[i] * gl + ax.w2_right[i] * gr);
    }
    return G;
}

std::vector<double> boundary_load(const SpatialOperator& op, double t, const ScalarFn3& f,
                                  const ScalarFn3& g) {
    if (!op.two_dimensional())
        throw std::invalid_argument("boundary_load: operator is one-dimensional");
    const auto& ax = op.axis_x();
    const auto& ay = op.axis_y();
    const int nx = ax.grid.interior();
    const int ny = ay.grid.interior();
    const double xa = ax.grid.a, xb = ax.grid.b;
    const double ya = ay.grid.a, yb = ay.grid.b;

    // Edge samples are shared across the opposite axis.
    std::vector<double> gx0(ny), gxM(ny), gy0(nx), gyM(nx);
    for (int j = 1; j <= ny; ++j) {
        const double y = ay.grid.knot(j);
        gx0[j - 1] = g(xa, y, t);
        gxM[j - 1] = g(xb, y, t);
    }
    for (int i = 1; i <= nx; ++i) {
        const double x = ax.grid.knot(i);
        gy0[i - 1] = g(x, ya, t);
        gyM[i - 1] = g(x, yb, t);
    }
    std::vector<double> G(static_cast<size_t>(nx) * ny);
    for (int j = 1; j <= ny; ++j) {
        const double y = ay.grid.knot(j);
        for (int i = 1; i <= nx; ++i) {
            const double x = ax.grid.knot(i);
            double v = f(x, y, t);
            v -= ax.kappa * (ax.w1_left[i - 1] * gx0[j - 1] + ax.w1_right[i - 1] * gxM[j - 1]);
            v += ax.eps * (ax.w2_left[i - 1] * gx0[j - 1] + ax.w2_right[i - 1] * gxM[j - 1]);
            v -= ay.kappa * (ay.w1_left[j - 1] * gy0[i - 1] + ay.w1_right[j - 1] * gyM[i - 1]);
            v += ay.eps * (ay.w2_left[j - 1] * gy0[i - 1] + ay.w2_right[j - 1] * gyM[i - 1]);
            G[static_cast<size_t>(j - 1) * nx + (i - 1)] = v;
        }
    }
    return G;
}

std::vector<double> sample_interior(const Grid& g, const ScalarFn1& fn) {
    std::vector<double> out(g.interior());
    for (int i = 1; i < g.cells; ++i) out[i - 1] = fn(g.knot(i));
    return out;
}

std::vector<double> sample_interior(const Grid& gx, const Grid& gy, const ScalarFn2& fn) {
    std::vector<double> out(static_cast<size_t>(gx.interior()) * gy.interior());
    for (int j = 1; j < gy.cells; ++j)
        for (int i = 1; i < gx.cells; ++i)
            out[static_cast<size_t>(j - 1) * gx.interior() + (i - 1)] = fn(gx.knot(i), gy.knot(j));
    return out;
}

} // namespace fade
