#include "fade/frac.hpp"

#include "fade/errors.hpp"
#include "fade/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fade {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("temporal order alpha must lie in (0,1]");
}

} // namespace

std::vector<double> gl_weights(double alpha, int n) {
    check_alpha(alpha);
    if (n < 0) throw std::invalid_argument("gl_weights: negative count");
    std::vector<double> w(n + 1);
    w[0] = 1.0;
    for (int k = 1; k <= n; ++k) w[k] = (1.0 - (alpha + 1.0) / k) * w[k - 1];
    return w;
}

std::vector<double> ho3_weights(double alpha, int n) {
    check_alpha(alpha);
    if (n < 0) throw std::invalid_argument("ho3_weights: negative count");
    const std::vector<double> l = gl_weights(alpha, n);
    const std::complex<double> mu = 4.0 / std::complex<double>(7.0, std::sqrt(39.0));

    // d_q = mu^q l_q; c_p = sum_q d_q conj(d_{p-q}) is real by conjugate
    // symmetry, asserted below and then discarded.
    std::vector<std::complex<double>> d(n + 1);
    std::complex<double> mupow = 1.0;
    for (int q = 0; q <= n; ++q) {
        d[q] = mupow * l[q];
        mupow *= mu;
    }
    std::vector<double> c(n + 1), w(n + 1);
    for (int p = 0; p <= n; ++p) {
        std::complex<double> s = 0.0;
        for (int q = 0; q <= p; ++q) s += d[q] * std::conj(d[p - q]);
        if (std::abs(s.imag()) > 1e-12)
            throw NumericalError("ho3_weights: imaginary residue above tolerance");
        c[p] = s.real();
    }
    const double lead = std::pow(11.0 / 6.0, alpha);
    for (int k = 0; k <= n; ++k) {
        // w_k = lead * sum_p c_p l_{k-p}: a dot of c[0..k] with reversed l.
        double s = 0.0;
        for (int p = 0; p <= k; ++p) s += c[p] * l[k - p];
        w[k] = lead * s;
    }
    return w;
}

TemporalWeights make_temporal_weights(WeightFamily family, double alpha, int n) {
    TemporalWeights t;
    t.alpha = alpha;
    t.family = family;
    t.w = family == WeightFamily::GL1 ? gl_weights(alpha, n) : ho3_weights(alpha, n);
    t.prefix.resize(t.w.size());
    double s = 0.0;
    for (size_t k = 0; k < t.w.size(); ++k) {
        s += t.w[k];
        t.prefix[k] = s;
    }
    return t;
}

void History::push(std::span<const double> u) {
    if (static_cast<int>(u.size()) != dim_)
        throw std::invalid_argument("History::push: dimension mismatch");
    buf_.insert(buf_.end(), u.begin(), u.end());
}

void caputo_residual_rhs(const History& history, const TemporalWeights& weights,
                         std::span<double> out) {
    const int n = history.levels();
    if (n < 1) throw std::invalid_argument("caputo_residual_rhs: empty history");
    if (weights.count() < n)
        throw std::invalid_argument("caputo_residual_rhs: weight sequence shorter than history");
    if (static_cast<int>(out.size()) != history.dim())
        throw std::invalid_argument("caputo_residual_rhs: output size mismatch");

    const double s0 = weights.prefix[n - 1];
    const auto u0 = history.level(0);
    for (int i = 0; i < history.dim(); ++i) out[i] = s0 * u0[i];
    if (n == 1) return;

    // -sum_{k=1}^{n-1} w_k U^{n-k}: levels 1..n-1 paired with reversed weights.
    thread_local std::vector<double> coeffs;
    coeffs.resize(n - 1);
    for (int j = 0; j < n - 1; ++j) coeffs[j] = -weights.w[n - 1 - j];
    kernels::weighted_sum(history.level(1).data(), history.dim(), coeffs, out.data(),
                          history.dim());
}

std::vector<double> caputo_residual_rhs(const History& history, const TemporalWeights& weights) {
    std::vector<double> out(history.dim());
    caputo_residual_rhs(history, weights, out);
    return out;
}

double reciprocal_gamma(double s) {
    if (s <= 0.0 && std::abs(s - std::round(s)) < 1e-14) return 0.0;
    if (s > 0.0 && s < 172.0) return 1.0 / std::tgamma(s);
    // Large or negative arguments through lgamma to dodge overflow. Gamma is
    // negative on (-2k-1, -2k).
    const double lg = std::lgamma(s);
    const double r = std::exp(-lg);
    if (s > 0.0) return r;
    const long long n = static_cast<long long>(std::floor(-s));
    return (n % 2 == 0) ? -r : r;
}

namespace {

struct BranchValue {
    double value = 0.0;
    double rel_error = HUGE_VAL; // estimated
};

// Power series sum_k z^k / Gamma(alpha k + 1) in extended precision with a
// cancellation estimate from the largest intermediate term. Each term is
// formed independently through logs so per-term accuracy stays near the
// extended-precision epsilon.
BranchValue ml_series(double alpha, double z) {
    constexpr int kMaxTerms = 300;
    long double sum = 1.0L;
    long double max_mag = 1.0L;
    const long double log_absz = std::log(std::abs(static_cast<long double>(z)));
    const bool negative = z < 0.0;
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const long double mag =
            std::exp(k * log_absz - std::lgamma(static_cast<long double>(alpha) * k + 1.0L));
        const long double term = (negative && (k & 1)) ? -mag : mag;
        sum += term;
        max_mag = std::max(max_mag, mag);
        if (mag < 1e-18L * std::max(1.0L, std::abs(sum))) {
            converged = true;
            break;
        }
    }
    BranchValue out;
    out.value = static_cast<double>(sum);
    const long double denom = std::max(std::abs(sum), 1e-300L);
    const long double cancel = max_mag * 1e-19L / denom;
    out.rel_error = converged ? static_cast<double>(cancel) + 1e-16 : 1.0;
    return out;
}

// Algebraic expansion for large negative arguments,
// sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(1 - alpha k), truncated at the
// smallest term.
BranchValue ml_asymptotic(double alpha, double z) {
    constexpr int kMaxTerms = 200;
    const double x = -z;
    BranchValue out;
    if (!(x > 1.0)) return out; // useless regime, leave error infinite
    double sum = 0.0;
    double min_mag = HUGE_VAL;
    double prev_mag = HUGE_VAL;
    double sign = 1.0;
    double xpow = 1.0 / x;
    for (int k = 1; k <= kMaxTerms; ++k) {
        const double t = sign * xpow * reciprocal_gamma(1.0 - alpha * k);
        const double mag = std::abs(t);
        // Terms vanish exactly at the Gamma poles; only nonzero magnitudes
        // drive the optimal-truncation and convergence checks.
        if (mag != 0.0) {
            if (mag > prev_mag) break; // divergent tail reached
            prev_mag = mag;
        }
        sum += t;
        sign = -sign;
        xpow /= x;
        if (mag != 0.0) {
            min_mag = std::min(min_mag, mag);
            if (mag < 1e-17 * std::abs(sum)) break;
        }
    }
    out.value = sum;
    out.rel_error = min_mag / std::max(std::abs(sum), 1e-300) + 1e-16;
    return out;
}

// Switch point between the branches, calibrated per alpha by scanning for the
// smallest branch disagreement.
double ml_switch_point(double alpha) {
    static std::mutex mtx;
    static std::map<double, double> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;

    double best_x = 15.0;
    double best_d = HUGE_VAL;
    for (double x = 1.0; x <= 30.0; x += 0.5) {
        const BranchValue s = ml_series(alpha, -x);
        const BranchValue a = ml_asymptotic(alpha, -x);
        const double scale = std::max({std::abs(s.value), std::abs(a.value), 1e-300});
        const double d = std::abs(s.value - a.value) / scale;
        if (d < best_d) {
            best_d = d;
            best_x = x;
        }
    }
    cache[alpha] = best_x;
    return best_x;
}

} // namespace

double mittag_leffler(double alpha, double z) {
    check_alpha(alpha);
    if (z == 0.0) return 1.0;
    if (alpha == 1.0) return std::exp(z);

    const double zsw = ml_switch_point(alpha);
    BranchValue best;
    if (z >= -zsw) {
        best = ml_series(alpha, z);
        if (best.rel_error > 1e-10 && z < 0.0) {
            const BranchValue a = ml_asymptotic(alpha, z);
            if (a.rel_error < best.rel_error) best = a;
        }
    } else {
        best = ml_asymptotic(alpha, z);
        if (best.rel_error > 1e-10) {
            const BranchValue s = ml_series(alpha, z);
            if (s.rel_error < best.rel_error) best = s;
        }
    }
    if (!(best.rel_error < 1e-7))
        throw NumericalError("mittag_leffler: neither branch reached tolerance at alpha=" +
                             std::to_string(alpha) + ", z=" + std::to_string(z));
    return best.value;
}

double rl_monomial(int l, double alpha, double t) {
    if (l < 0) throw std::invalid_argument("rl_monomial: negative exponent");
    if (!(t > 0.0)) throw std::invalid_argument("rl_monomial: t must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0) && !(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("rl_monomial: order out of range");
    // Gamma(l+1) t^{l-alpha} / Gamma(l+1-alpha); the only pole is l+1-alpha = 0
    // where the reciprocal vanishes (derivative of a constant at alpha = 1).
    return std::tgamma(l + 1.0) * std::pow(t, l - alpha) * reciprocal_gamma(l + 1.0 - alpha);
}

namespace {

void check_beta(double beta) {
    if (!(beta > 1.0 && beta <= 2.0))
        throw std::invalid_argument("spatial order beta must lie in (1,2]");
}

} // namespace

double rl_bspline_deriv(int m, double beta, double x, const Grid& grid) {
    check_beta(beta);
    const int M = grid.cells;
    if (m < -1 || m > M + 1) throw std::invalid_argument("rl_bspline_deriv: member out of range");
    const double x0 = grid.knot(0);
    const double xM = grid.knot(M);
    const double h = grid.h();
    if (!(x > x0 - 1e-12 * std::max(1.0, std::abs(x0)) && x <= xM + 1e-12 * std::max(1.0, std::abs(xM))))
        throw std::invalid_argument("rl_bspline_deriv: x outside (x_0, x_M]");

    const double g4 = reciprocal_gamma(4.0 - beta) / (h * h * h);

    if (m >= 2) {
        // Accumulating terms 6,-24,36,-24,6 over the four support cells; each
        // term switches on as x passes the corresponding knot.
        static constexpr double kCoef[5] = {6.0, -24.0, 36.0, -24.0, 6.0};
        double s = 0.0;
        for (int j = 0; j < 5; ++j) {
            const double xc = grid.knot(m - 2 + j);
            if (x > xc) s += kCoef[j] * std::pow(x - xc, 3.0 - beta) * g4;
        }
        return s;
    }

    const double d = x - x0;
    if (!(d > 0.0))
        throw NumericalError("rl_bspline_deriv: singular at the lower limit for boundary members");
    const double g2 = reciprocal_gamma(2.0 - beta);
    const double g3 = reciprocal_gamma(3.0 - beta) / (h * h);
    double s = 0.0;
    if (m == -1) {
        s = (1.0 - beta) * std::pow(d, -beta) * g2 - 3.0 * std::pow(d, 1.0 - beta) * g2 / h +
            6.0 * std::pow(d, 2.0 - beta) * g3 - 6.0 * std::pow(d, 3.0 - beta) * g4;
        const double x1 = grid.knot(1);
        if (x > x1) s += 6.0 * std::pow(x - x1, 3.0 - beta) * g4;
        return s;
    }
    if (m == 0) {
        s = 4.0 * (1.0 - beta) * std::pow(d, -beta) * g2 - 12.0 * std::pow(d, 2.0 - beta) * g3 +
            18.0 * std::pow(d, 3.0 - beta) * g4;
        if (x > grid.knot(1)) s += -24.0 * std::pow(x - grid.knot(1), 3.0 - beta) * g4;
        if (x > grid.knot(2)) s += 6.0 * std::pow(x - grid.knot(2), 3.0 - beta) * g4;
        return s;
    }
    // m == 1
    s = (1.0 - beta) * std::pow(d, -beta) * g2 + 3.0 * std::pow(d, 1.0 - beta) * g2 / h +
        6.0 * std::pow(d, 2.0 - beta) * g3 - 18.0 * std::pow(d, 3.0 - beta) * g4;
    if (x > grid.knot(1)) s += 36.0 * std::pow(x - grid.knot(1), 3.0 - beta) * g4;
    if (x > grid.knot(2)) s += -24.0 * std::pow(x - grid.knot(2), 3.0 - beta) * g4;
    if (x > grid.knot(3)) s += 6.0 * std::pow(x - grid.knot(3), 3.0 - beta) * g4;
    return s;
}

double rl_modified_bspline_deriv(int k, double beta, double x, const Grid& grid) {
    const int M = grid.cells;
    if (k < 0 || k > M) throw std::invalid_argument("rl_modified_bspline_deriv: index out of range");
    if (M < 3) throw std::invalid_argument("rl_modified_bspline_deriv: need at least 3 cells");
    if (k == 0) return rl_bspline_deriv(0, beta, x, grid) + 2.0 * rl_bspline_deriv(-1, beta, x, grid);
    if (k == 1) return rl_bspline_deriv(1, beta, x, grid) - rl_bspline_deriv(-1, beta, x, grid);
    if (k == M - 1)
        return rl_bspline_deriv(M - 1, beta, x, grid) - rl_bspline_deriv(M + 1, beta, x, grid);
    if (k == M) return rl_bspline_deriv(M, beta, x, grid) + 2.0 * rl_bspline_deriv(M + 1, beta, x, grid);
    return rl_bspline_deriv(k, beta, x, grid);
}

} // namespace fade
