#include "fade/splines.hpp"

#include <cmath>
#include <stdexcept>

namespace fade {

namespace {

constexpr double kTrigTiny = 1e-12;

void check_trig_spacing(double h) {
    if (!(h > 0.0)) throw std::invalid_argument("splines: spacing must be positive");
    if (std::abs(std::sin(h)) < kTrigTiny || std::abs(std::sin(1.5 * h)) < kTrigTiny ||
        std::abs(std::sin(0.5 * h)) < kTrigTiny)
        throw std::invalid_argument("splines: singular trigonometric spacing");
}

// Piece index of x inside the support of member m: 0..3 for the four cells
// [x_{m-2+p}, x_{m-1+p}), -1 outside.
int piece_index(int m, double x, const Grid& grid) {
    const double lo = grid.knot(m - 2);
    const double hi = grid.knot(m + 2);
    if (x < lo || x >= hi) return -1;
    const int p = static_cast<int>(std::floor((x - lo) / grid.h()));
    return p < 0 ? 0 : (p > 3 ? 3 : p);
}

} // namespace

KnotValueTable knot_value_table(SplineFamily family, const Grid& grid) {
    const double h = grid.h();
    if (family == SplineFamily::CubicPoly) return {4.0, 1.0, 3.0 / h};
    check_trig_spacing(h);
    const double a0 = 2.0 / (1.0 + 2.0 * std::cos(h));
    const double a1 = std::sin(0.5 * h) * std::sin(0.5 * h) / (std::sin(h) * std::sin(1.5 * h));
    const double z = 0.75 / std::sin(1.5 * h);
    return {a0, a1, z};
}

double eval_basis(SplineFamily family, int m, double x, const Grid& grid) {
    const int p = piece_index(m, x, grid);
    if (p < 0) return 0.0;
    const double h = grid.h();
    if (family == SplineFamily::CubicPoly) {
        const double h3 = h * h * h;
        const double xa = x - grid.knot(m - 2);
        const double xb = x - grid.knot(m - 1);
        const double dx = grid.knot(m + 1) - x;
        const double ex = grid.knot(m + 2) - x;
        switch (p) {
            case 0: return xa * xa * xa / h3;
            case 1: return (xa * xa * xa - 4.0 * xb * xb * xb) / h3;
            case 2: return (ex * ex * ex - 4.0 * dx * dx * dx) / h3;
            default: return ex * ex * ex / h3;
        }
    }
    check_trig_spacing(h);
    const double chi = std::sin(0.5 * h) * std::sin(h) * std::sin(1.5 * h);
    auto sp = [&](int j) { return std::sin(0.5 * (x - grid.knot(m + j))); }; // p(x_{m+j})
    auto sq = [&](int j) { return std::sin(0.5 * (grid.knot(m + j) - x)); }; // q(x_{m+j})
    switch (p) {
        case 0: {
            const double pa = sp(-2);
            return pa * pa * pa / chi;
        }
        case 1: {
            const double pa = sp(-2), pb = sp(-1);
            return (sq(2) * pb * pb + pa * pa * sq(0) + pa * pb * sq(1)) / chi;
        }
        case 2: {
            const double qd = sq(1), qe = sq(2);
            return (sp(-2) * qd * qd + qe * qe * sp(0) + sp(-1) * qd * qe) / chi;
        }
        default: {
            const double qe = sq(2);
            return qe * qe * qe / chi;
        }
    }
}

double eval_basis_derivative(SplineFamily family, int m, double x, const Grid& grid) {
    const int p = piece_index(m, x, grid);
    if (p < 0) return 0.0;
    const double h = grid.h();
    if (family == SplineFamily::CubicPoly) {
        const double h3 = h * h * h;
        const double xa = x - grid.knot(m - 2);
        const double xb = x - grid.knot(m - 1);
        const double dx = grid.knot(m + 1) - x;
        const double ex = grid.knot(m + 2) - x;
        switch (p) {
            case 0: return 3.0 * xa * xa / h3;
            case 1: return (3.0 * xa * xa - 12.0 * xb * xb) / h3;
            case 2: return (-3.0 * ex * ex + 12.0 * dx * dx) / h3;
            default: return -3.0 * ex * ex / h3;
        }
    }
    check_trig_spacing(h);
    const double chi = std::sin(0.5 * h) * std::sin(h) * std::sin(1.5 * h);
    auto sp = [&](int j) { return std::sin(0.5 * (x - grid.knot(m + j))); };
    auto sq = [&](int j) { return std::sin(0.5 * (grid.knot(m + j) - x)); };
    auto dp = [&](int j) { return 0.5 * std::cos(0.5 * (x - grid.knot(m + j))); };
    auto dq = [&](int j) { return -0.5 * std::cos(0.5 * (grid.knot(m + j) - x)); };
    switch (p) {
        case 0: {
            const double pa = sp(-2);
            return 3.0 * pa * pa * dp(-2) / chi;
        }
        case 1: {
            const double pa = sp(-2), pb = sp(-1), qc = sq(0), qd = sq(1), qe = sq(2);
            const double d = dq(2) * pb * pb + qe * 2.0 * pb * dp(-1) + 2.0 * pa * dp(-2) * qc +
                             pa * pa * dq(0) + dp(-2) * pb * qd + pa * dp(-1) * qd + pa * pb * dq(1);
            return d / chi;
        }
        case 2: {
            const double pa = sp(-2), pb = sp(-1), pc = sp(0), qd = sq(1), qe = sq(2);
            const double d = dp(-2) * qd * qd + pa * 2.0 * qd * dq(1) + 2.0 * qe * dq(2) * pc +
                             qe * qe * dp(0) + dp(-1) * qd * qe + pb * dq(1) * qe + pb * qd * dq(2);
            return d / chi;
        }
        default: {
            const double qe = sq(2);
            return 3.0 * qe * qe * dq(2) / chi;
        }
    }
}

namespace {

// End-correction rule shared by both families: coefficients of the unmodified
// members making up modified member k.
template <typename F>
double combine_modified(int k, int cells, F&& value_of) {
    const int M = cells;
    if (k < 0 || k > M) throw std::invalid_argument("modified basis: index out of range");
    if (M < 3) throw std::invalid_argument("modified basis: need at least 3 cells");
    if (k == 0) return value_of(0) + 2.0 * value_of(-1);
    if (k == 1) return value_of(1) - value_of(-1);
    if (k == M - 1) return value_of(M - 1) - value_of(M + 1);
    if (k == M) return value_of(M) + 2.0 * value_of(M + 1);
    return value_of(k);
}

} // namespace

double modified_basis_value(SplineFamily family, int k, double x, const Grid& grid) {
    return combine_modified(k, grid.cells,
                            [&](int m) { return eval_basis(family, m, x, grid); });
}

double modified_basis_knot_value(SplineFamily family, int k, int i, const Grid& grid) {
    const KnotValueTable t = knot_value_table(family, grid);
    auto value_of = [&](int m) {
        if (i == m) return t.center;
        if (i == m - 1 || i == m + 1) return t.neighbor;
        return 0.0;
    };
    return combine_modified(k, grid.cells, value_of);
}

double modified_basis_knot_derivative(SplineFamily family, int k, int i, const Grid& grid) {
    const KnotValueTable t = knot_value_table(family, grid);
    auto deriv_of = [&](int m) {
        if (i == m - 1) return t.deriv;
        if (i == m + 1) return -t.deriv;
        return 0.0;
    };
    return combine_modified(k, grid.cells, deriv_of);
}

double cubic_poly_second_derivative_knot(int m, int i, const Grid& grid) {
    const double h2 = grid.h() * grid.h();
    if (i == m) return -12.0 / h2;
    if (i == m - 1 || i == m + 1) return 6.0 / h2;
    return 0.0;
}

} // namespace fade
