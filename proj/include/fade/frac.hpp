#pragma once

#include "fade/grid.hpp"

#include <span>
#include <vector>

namespace fade {

enum class WeightFamily {
    GL1, // binomial coefficients of (1-z)^alpha, first order
    HO3  // third-order generator built from the conjugate pair mu, conj(mu)
};

// Temporal fractional-difference coefficients w_0..w_n plus their prefix sums
// (needed by the memory term every step).
struct TemporalWeights {
    double alpha = 1.0;
    WeightFamily family = WeightFamily::GL1;
    std::vector<double> w;
    std::vector<double> prefix; // prefix[k] = w_0 + ... + w_k

    double w0() const { return w[0]; }
    int count() const { return static_cast<int>(w.size()); }
};

std::vector<double> gl_weights(double alpha, int n);
std::vector<double> ho3_weights(double alpha, int n);
TemporalWeights make_temporal_weights(WeightFamily family, double alpha, int n);

// Contiguous time-level storage; level k is the solution vector at step k.
// The fractional schemes need every past level.
class History {
public:
    explicit History(int dim) : dim_(dim) {}

    void push(std::span<const double> u);
    std::span<const double> level(int k) const {
        return {buf_.data() + static_cast<size_t>(k) * dim_, static_cast<size_t>(dim_)};
    }
    std::span<const double> latest() const { return level(levels() - 1); }
    int levels() const { return static_cast<int>(buf_.size() / dim_); }
    int dim() const { return dim_; }
    const double* data() const { return buf_.data(); }
    void reserve_levels(int n) { buf_.reserve(static_cast<size_t>(n) * dim_); }

private:
    int dim_;
    std::vector<double> buf_;
};

// Known-side accumulation of the discrete fractional derivative at step
// n = history.levels(): prefix[n-1] * U^0 - sum_{k=1}^{n-1} w_k U^{n-k}.
// The caller adds tau^alpha times its load vector.
std::vector<double> caputo_residual_rhs(const History& history, const TemporalWeights& weights);
void caputo_residual_rhs(const History& history, const TemporalWeights& weights,
                         std::span<double> out);

// One-parameter Mittag-Leffler function, hybrid series/asymptotic evaluator.
// Throws NumericalError if neither branch reaches an acceptable error estimate.
double mittag_leffler(double alpha, double z);

// Riemann-Liouville derivative of t^l from the origin.
double rl_monomial(int l, double alpha, double t);

// Riemann-Liouville derivative (order beta in (1,2]) of the cubic polynomial
// B-spline member m in -1..M+1, lower limit x_0, evaluated at x in (x_0, x_M].
// Members -1, 0, 1 carry negative-power terms that are singular at x_0.
double rl_bspline_deriv(int m, double beta, double x, const Grid& grid);

// Same for the end-corrected members k in 0..M.
double rl_modified_bspline_deriv(int k, double beta, double x, const Grid& grid);

// 1/Gamma(s), returning 0 at the poles (s a nonpositive integer).
double reciprocal_gamma(double s);

} // namespace fade
