#include "fade/operators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

using fade::DenseMatrix;
using fade::Grid;
using fade::SpatialOperator;
using fade::SplineFamily;
using fade::WeightMatrix;

namespace {

struct Weights1D {
    WeightMatrix w1, w2;
};

Weights1D ctb_weights(const Grid& g) {
    auto w1 = fade::first_order_weights(SplineFamily::CubicTrig, g);
    auto w2 = fade::higher_order_weights(w1, 2);
    return {std::move(w1), std::move(w2)};
}

} // namespace

TEST_CASE("one-dimensional operator assembly") {
    const Grid g(0.0, 1.0, 8);
    const auto [w1, w2] = ctb_weights(g);

    const auto diffusion = fade::assemble_K_1d(0.0, 1.0, w1, w2);
    for (int i = 1; i < 8; ++i)
        for (int j = 1; j < 8; ++j)
            CHECK(diffusion.interior()(i - 1, j - 1) == doctest::Approx(-w2.entries(i, j)));

    const Grid g4(0.0, 1.0, 4);
    const auto [w1s, w2s] = ctb_weights(g4);
    const auto advection = fade::assemble_K_1d(1.0, 0.0, w1s, w2s);
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
            CHECK(advection.interior()(i - 1, j - 1) == doctest::Approx(w1s.entries(i, j)));

    // Mixed coefficients vs direct summation.
    const auto mixed = fade::assemble_K_1d(1.0, 2.0, w1s, w2s);
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
            CHECK(mixed.interior()(i - 1, j - 1) ==
                  doctest::Approx(1.0 * w1s.entries(i, j) - 2.0 * w2s.entries(i, j)));
}

TEST_CASE("two-dimensional operator assembly") {
    const Grid gx(0.0, 1.0, 3), gy(0.0, 1.0, 3);
    const auto [wx1, wx2] = ctb_weights(gx);
    const auto [wy1, wy2] = ctb_weights(gy);

    SUBCASE("zero coefficients give the zero operator") {
        const auto k = fade::assemble_K_2d(0, 0, 0, 0, wx1, wx2, wy1, wy2);
        for (int r = 0; r < k.dim(); ++r)
            for (int c = 0; c < k.dim(); ++c) CHECK(k.interior()(r, c) == 0.0);
    }

    SUBCASE("x-diffusion only is block-diagonal with identical blocks") {
        const Grid g5(0.0, 1.0, 5);
        const auto [w1, w2] = ctb_weights(g5);
        const auto k = fade::assemble_K_2d(0, 0, 1.0, 0.0, w1, w2, w1, w2);
        const int n = 4;
        for (int jb = 0; jb < n; ++jb)
            for (int i = 0; i < n; ++i)
                for (int jc = 0; jc < n; ++jc) {
                    CHECK(k.interior()(jb * n + i, jb * n + jc) ==
                          doctest::Approx(-w2.entries(i + 1, jc + 1)));
                    if (jb < n - 1)
                        CHECK(k.interior()(jb * n + i, (jb + 1) * n + jc) == 0.0);
                }
    }

    SUBCASE("random coefficients match an independent scatter assembly") {
        const Grid g5x(0.0, 2.0, 5), g5y(-1.0, 1.0, 5);
        const auto [ax1, ax2] = ctb_weights(g5x);
        const auto [ay1, ay2] = ctb_weights(g5y);
        const double kx = oracles::uniform(0, 2), ky = oracles::uniform(0, 2);
        const double ex = oracles::uniform(0, 2), ey = oracles::uniform(0, 2);
        const auto k = fade::assemble_K_2d(kx, ky, ex, ey, ax1, ax2, ay1, ay2);

        const int nx = 4, ny = 4;
        DenseMatrix ref(nx * ny, nx * ny);
        for (int i = 1; i <= nx; ++i)
            for (int j = 1; j <= ny; ++j) {
                const int row = (j - 1) * nx + (i - 1);
                for (int m = 1; m <= nx; ++m)
                    ref(row, (j - 1) * nx + (m - 1)) +=
                        kx * ax1.entries(i, m) - ex * ax2.entries(i, m);
                for (int m = 1; m <= ny; ++m)
                    ref(row, (m - 1) * nx + (i - 1)) +=
                        ky * ay1.entries(j, m) - ey * ay2.entries(j, m);
            }
        for (int r = 0; r < nx * ny; ++r)
            for (int c = 0; c < nx * ny; ++c)
                CHECK(k.interior()(r, c) == doctest::Approx(ref(r, c)).epsilon(1e-12));
    }

    SUBCASE("Kronecker-with-identity eigenvalue multiplicity") {
        const Grid g5(0.0, 1.0, 5);
        const auto [w1, w2] = ctb_weights(g5);
        const auto k = fade::assemble_K_2d(0, 0, 1.0, 0.0, w1, w2, w1, w2);
        auto ev = fade::eigenvalues(k.interior());
        DenseMatrix blk(4, 4);
        for (int i = 1; i < 5; ++i)
            for (int j = 1; j < 5; ++j) blk(i - 1, j - 1) = -w2.entries(i, j);
        auto evb = fade::eigenvalues(blk);
        auto key = [](const std::complex<double>& z) {
            return std::make_pair(z.real(), z.imag());
        };
        std::sort(ev.begin(), ev.end(), [&](auto a, auto b) { return key(a) < key(b); });
        std::vector<std::complex<double>> want;
        for (int rep = 0; rep < 4; ++rep) want.insert(want.end(), evb.begin(), evb.end());
        std::sort(want.begin(), want.end(), [&](auto a, auto b) { return key(a) < key(b); });
        for (size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - want[i]) < 1e-8);
    }
}

TEST_CASE("boundary load, one dimension") {
    const Grid g(0.0, 1.0, 8);
    const auto [w1, w2] = ctb_weights(g);
    const auto op = fade::assemble_K_1d(1.0, 2.0, w1, w2);

    SUBCASE("homogeneous boundary data reduce to source samples") {
        auto f = [](double x, double t) { return x + t; };
        const auto load =
            fade::boundary_load(op, 0.25, f, [](double) { return 0.0; }, [](double) { return 0.0; });
        for (int i = 1; i < 8; ++i) CHECK(load[i - 1] == doctest::Approx(g.knot(i) + 0.25));
    }

    SUBCASE("pure diffusion with unit boundary data") {
        const auto opd = fade::assemble_K_1d(0.0, 2.0, w1, w2);
        const auto load = fade::boundary_load(
            opd, 0.0, [](double, double) { return 0.0; }, [](double) { return 1.0; },
            [](double) { return 1.0; });
        for (int i = 1; i < 8; ++i)
            CHECK(load[i - 1] ==
                  doctest::Approx(2.0 * (w2.entries(i, 0) + w2.entries(i, 8))).epsilon(1e-12));
    }

    SUBCASE("term-by-term assembly at a benchmark-like data set") {
        auto f = [](double x, double t) { return std::sin(x) * t; };
        auto g1 = [](double t) { return 1.0 + t; };
        auto g2 = [](double t) { return std::exp(1.0) * (1.0 + t); };
        const double t = 0.1;
        const auto load = fade::boundary_load(op, t, f, g1, g2);
        for (int i = 1; i < 8; ++i) {
            const double want = f(g.knot(i), t) -
                                1.0 * (w1.entries(i, 0) * g1(t) + w1.entries(i, 8) * g2(t)) +
                                2.0 * (w2.entries(i, 0) * g1(t) + w2.entries(i, 8) * g2(t));
            CHECK(load[i - 1] == doctest::Approx(want).epsilon(1e-13));
        }
    }

    SUBCASE("linearity in the data") {
        auto f1 = [](double x, double t) { return x * t; };
        auto f2 = [](double x, double t) { return std::cos(x + t); };
        auto z = [](double) { return 0.0; };
        auto b1 = [](double t) { return 1.0 + t; };
        auto b2 = [](double t) { return 2.0 - t; };
        const double t = 0.3;
        const auto la = fade::boundary_load(op, t, f1, b1, z);
        const auto lb = fade::boundary_load(op, t, f2, z, b2);
        const auto lab = fade::boundary_load(
            op, t, [&](double x, double tt) { return f1(x, tt) + f2(x, tt); }, b1, b2);
        for (size_t i = 0; i < la.size(); ++i)
            CHECK(lab[i] == doctest::Approx(la[i] + lb[i]).epsilon(1e-12));
    }
}

TEST_CASE("fractional operator assembly") {
    SUBCASE("order-two limit equals the classical diffusion assembly") {
        const Grid g(0.0, 1.0, 6);
        const auto wb = fade::fractional_weights(2.0, g);
        const auto l = fade::assemble_frac_L_2d(1.0, 1.0, wb, wb);
        // Classical counterpart built from the direct collocation route.
        const auto w2d = oracles::direct_second_order_weights(g);
        const int n = 5;
        DenseMatrix ref(n * n, n * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const int row = j * n + i;
                for (int m = 0; m < n; ++m) ref(row, j * n + m) += w2d(i + 1, m + 1);
                for (int m = 0; m < n; ++m) ref(row, m * n + i) += w2d(j + 1, m + 1);
            }
        for (int r = 0; r < n * n; ++r)
            for (int c = 0; c < n * n; ++c)
                CHECK(l.interior()(r, c) == doctest::Approx(ref(r, c)).epsilon(1e-8));
    }

    SUBCASE("no x-coupling when eps_x vanishes") {
        const Grid g(0.0, 1.0, 4);
        const auto wb1 = fade::fractional_weights(1.1, g);
        const auto wb2 = fade::fractional_weights(1.3, g);
        const auto l = fade::assemble_frac_L_2d(0.0, 1.0, wb1, wb2);
        const int n = 3;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int m = 0; m < n; ++m)
                    if (m != i) CHECK(l.interior()(j * n + i, j * n + m) == 0.0);
    }

    SUBCASE("loop-assembled oracle at mixed orders") {
        const Grid g(0.0, 1.0, 4);
        const auto wb1 = fade::fractional_weights(1.1, g);
        const auto wb2 = fade::fractional_weights(1.3, g);
        const double ex = 0.7, ey = 1.9;
        const auto l = fade::assemble_frac_L_2d(ex, ey, wb1, wb2);
        const int n = 3;
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= n; ++i) {
                const int row = (j - 1) * n + (i - 1);
                for (int mj = 1; mj <= n; ++mj)
                    for (int mi = 1; mi <= n; ++mi) {
                        double want = 0.0;
                        if (mj == j) want += ex * wb1.entries(i, mi);
                        if (mi == i) want += ey * wb2.entries(j, mj);
                        CHECK(l.interior()(row, (mj - 1) * n + (mi - 1)) ==
                              doctest::Approx(want).epsilon(1e-12));
                    }
            }
    }
}

TEST_CASE("interior sampling order is x-fastest") {
    const Grid gx(0.0, 1.0, 4), gy(0.0, 2.0, 3);
    const auto s = fade::sample_interior(gx, gy, [](double x, double y) { return 10.0 * y + x; });
    REQUIRE(s.size() == 6);
    CHECK(s[0] == doctest::Approx(10.0 * gy.knot(1) + gx.knot(1)));
    CHECK(s[1] == doctest::Approx(10.0 * gy.knot(1) + gx.knot(2)));
    CHECK(s[3] == doctest::Approx(10.0 * gy.knot(2) + gx.knot(1)));
}
