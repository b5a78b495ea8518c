#pragma once

#include "fade/dq_weights.hpp"
#include "fade/operators.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace fade {

// Defaults for the sweep experiments: unit square, five cells per axis,
// tau = 1e-3, alpha = 0.5, pure diffusion with unit diffusivity.
struct StabilityDefaults {
    double tau = 1e-3;
    double alpha = 0.5;
    int m = 5;
    double extent = 1.0; // domain [0, extent]^2
    double kappa = 0.0;
    double eps = 1.0;
};

struct StabilityReport {
    std::string axis;
    double value = 0.0;          // swept parameter value
    double resolvent_norm = 0.0; // ||(I + tau^alpha K)^{-1}||_2
    int iterations = 0;
    bool converged = true;
};

// Spectral norm of (I + tau^alpha K)^{-1}, via one factorization and power
// iteration on the inverse Gram operator.
StabilityReport resolvent_norm(const SpatialOperator& k, double tau, double alpha);

// Eigenvalues of the interior block of a weight matrix.
std::vector<std::complex<double>> weight_spectrum(const WeightMatrix& w);

// Eigenvalues of -K for the 2D operator, composed from the per-axis combined
// operators kappa W1 - eps W2 without forming K.
std::vector<std::complex<double>> composed_spectrum_2d(
    const WeightMatrix& wx1, const WeightMatrix& wx2, const WeightMatrix& wy1,
    const WeightMatrix& wy2, double kappa_x, double kappa_y, double eps_x, double eps_y);

enum class SweepAxis { Kappa, Eps, GridSize, DomainExtent, Tau };

const char* sweep_axis_name(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

std::vector<StabilityReport> assumption_sweep(SweepAxis axis, std::span<const double> values,
                                              const StabilityDefaults& defaults = {});

// Operator at a sweep point (exposed for spectrum dumps).
SpatialOperator sweep_operator(SweepAxis axis, double value, const StabilityDefaults& defaults);

} // namespace fade
