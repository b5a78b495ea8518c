#include "fade/kernels.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

namespace k = fade::kernels;

namespace {

std::vector<double> random_vec(int n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = oracles::uniform(lo, hi);
    return v;
}

struct BackendGuard {
    k::Backend saved = k::active_backend();
    ~BackendGuard() { k::set_backend(saved); }
};

} // namespace

TEST_CASE("backend selection") {
    CHECK(k::backend_supported(k::Backend::Scalar));
    BackendGuard guard;
    k::set_backend(k::Backend::Scalar);
    CHECK(k::active_backend() == k::Backend::Scalar);
    if (!k::backend_supported(k::Backend::Avx2))
        CHECK_THROWS_AS(k::set_backend(k::Backend::Avx2), std::invalid_argument);
    if (!k::backend_supported(k::Backend::Neon))
        CHECK_THROWS_AS(k::set_backend(k::Backend::Neon), std::invalid_argument);
}

TEST_CASE("simd variants match the scalar reference") {
    std::vector<k::Backend> variants;
    for (k::Backend b : {k::Backend::Avx2, k::Backend::Neon})
        if (k::backend_supported(b)) variants.push_back(b);
    if (variants.empty()) return; // scalar-only host

    BackendGuard guard;
    // Ragged sizes exercise every remainder path.
    for (int n : {1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 64, 67, 129}) {
        const auto x = random_vec(n);
        const auto y0 = random_vec(n);
        const double a = oracles::uniform(-2.0, 2.0);

        const double dref = k::scalar::dot(x.data(), y0.data(), n);
        auto yref = y0;
        k::scalar::axpy(a, x.data(), yref.data(), n);
        auto sref = y0;
        k::scalar::scal(a, sref.data(), n);

        for (k::Backend b : variants) {
            CAPTURE(n);
            CAPTURE(k::backend_name(b));
            k::set_backend(b);
            const double d = k::dot(x, y0);
            CHECK(d == doctest::Approx(dref).epsilon(1e-13));
            auto y = y0;
            k::axpy(a, x, y);
            for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(yref[i]).epsilon(1e-13));
            auto s = y0;
            k::scal(a, s);
            for (int i = 0; i < n; ++i) CHECK(s[i] == doctest::Approx(sref[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("gemv and weighted_sum match the scalar reference") {
    std::vector<k::Backend> variants;
    for (k::Backend b : {k::Backend::Avx2, k::Backend::Neon})
        if (k::backend_supported(b)) variants.push_back(b);
    if (variants.empty()) return;

    BackendGuard guard;
    for (auto [rows, cols] :
         std::vector<std::pair<int, int>>{{1, 1}, {3, 5}, {7, 7}, {13, 9}, {20, 33}}) {
        const auto a = random_vec(rows * cols);
        const auto x = random_vec(cols);
        std::vector<double> yref(rows);
        k::scalar::gemv(a.data(), rows, cols, x.data(), yref.data());
        for (k::Backend b : variants) {
            k::set_backend(b);
            std::vector<double> y(rows);
            k::gemv(a.data(), rows, cols, x.data(), y.data());
            for (int i = 0; i < rows; ++i) CHECK(y[i] == doctest::Approx(yref[i]).epsilon(1e-12));
        }
    }

    for (auto [nrows, dim] :
         std::vector<std::pair<int, int>>{{1, 3}, {4, 8}, {5, 7}, {11, 2}, {16, 19}}) {
        const auto base = random_vec(nrows * dim);
        const auto coeffs = random_vec(nrows);
        auto seed = random_vec(dim);
        auto dref = seed;
        k::scalar::weighted_sum(base.data(), dim, coeffs.data(), nrows, dref.data(), dim);
        for (k::Backend b : variants) {
            k::set_backend(b);
            auto d = seed;
            k::weighted_sum(base.data(), dim, coeffs, d.data(), dim);
            for (int i = 0; i < dim; ++i) CHECK(d[i] == doctest::Approx(dref[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("weighted_sum equals an axpy chain") {
    const int nrows = 9, dim = 13;
    const auto base = random_vec(nrows * dim);
    const auto coeffs = random_vec(nrows);
    std::vector<double> a(dim, 0.25), b(dim, 0.25);
    k::weighted_sum(base.data(), dim, coeffs, a.data(), dim);
    for (int r = 0; r < nrows; ++r) k::scalar::axpy(coeffs[r], base.data() + r * dim, b.data(), dim);
    for (int i = 0; i < dim; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}
