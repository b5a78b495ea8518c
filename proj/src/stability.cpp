#include "fade/stability.hpp"

#include "fade/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace fade {

StabilityReport resolvent_norm(const SpatialOperator& k, double tau, double alpha) {
    if (!(tau > 0.0)) throw std::invalid_argument("resolvent_norm: tau must be positive");
    const double ta = std::pow(tau, alpha);
    DenseMatrix a = k.interior();
    for (int r = 0; r < a.rows(); ++r) {
        auto row = a.row(r);
        for (auto& v : row) v *= ta;
        a(r, r) += 1.0;
    }
    const LuSolver lu(std::move(a));
    const PowerIterationResult pi = inverse_spectral_norm(lu);
    StabilityReport rep;
    rep.resolvent_norm = pi.value;
    rep.iterations = pi.iterations;
    rep.converged = pi.converged;
    return rep;
}

namespace {

DenseMatrix interior_block(const WeightMatrix& w) {
    const int M = w.grid.cells;
    DenseMatrix b(M - 1, M - 1);
    for (int i = 1; i < M; ++i)
        for (int j = 1; j < M; ++j) b(i - 1, j - 1) = w.entries(i, j);
    return b;
}

DenseMatrix combined_axis(const WeightMatrix& w1, const WeightMatrix& w2, double kappa,
                          double eps) {
    const int M = w1.grid.cells;
    DenseMatrix c(M - 1, M - 1);
    for (int i = 1; i < M; ++i)
        for (int j = 1; j < M; ++j)
            c(i - 1, j - 1) = kappa * w1.entries(i, j) - eps * w2.entries(i, j);
    return c;
}

} // namespace

std::vector<std::complex<double>> weight_spectrum(const WeightMatrix& w) {
    return eigenvalues(interior_block(w));
}

std::vector<std::complex<double>> composed_spectrum_2d(
    const WeightMatrix& wx1, const WeightMatrix& wx2, const WeightMatrix& wy1,
    const WeightMatrix& wy2, double kappa_x, double kappa_y, double eps_x, double eps_y) {
    const auto lx = eigenvalues(combined_axis(wx1, wx2, kappa_x, eps_x));
    const auto ly = eigenvalues(combined_axis(wy1, wy2, kappa_y, eps_y));
    std::vector<std::complex<double>> out;
    out.reserve(lx.size() * ly.size());
    // K = I_y (x) C_x + C_y (x) I_x with x fastest, so the eigenvalues of -K
    // are -(lambda_x + lambda_y) over all pairs.
    for (const auto& ey : ly)
        for (const auto& ex : lx) out.push_back(-(ex + ey));
    return out;
}

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Kappa: return "kappa";
        case SweepAxis::Eps: return "eps";
        case SweepAxis::GridSize: return "M";
        case SweepAxis::DomainExtent: return "domain_extent";
        case SweepAxis::Tau: return "tau";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "kappa") return SweepAxis::Kappa;
    if (name == "eps") return SweepAxis::Eps;
    if (name == "M" || name == "m") return SweepAxis::GridSize;
    if (name == "domain_extent") return SweepAxis::DomainExtent;
    if (name == "tau") return SweepAxis::Tau;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

SpatialOperator sweep_operator(SweepAxis axis, double value, const StabilityDefaults& d) {
    double kappa = d.kappa, eps = d.eps, extent = d.extent;
    int m = d.m;
    switch (axis) {
        case SweepAxis::Kappa: kappa = value; break;
        case SweepAxis::Eps: eps = value; break;
        case SweepAxis::GridSize: m = static_cast<int>(std::lround(value)); break;
        case SweepAxis::DomainExtent: extent = value; break;
        case SweepAxis::Tau: break; // handled by the caller
    }
    const Grid g(0.0, extent, m);
    const WeightMatrix w1 = first_order_weights(SplineFamily::CubicTrig, g);
    const WeightMatrix w2 = higher_order_weights(w1, 2);
    return assemble_K_2d(kappa, kappa, eps, eps, w1, w2, w1, w2);
}

std::vector<StabilityReport> assumption_sweep(SweepAxis axis, std::span<const double> values,
                                              const StabilityDefaults& defaults) {
    std::vector<StabilityReport> out;
    out.reserve(values.size());
    for (double v : values) {
        const double tau = axis == SweepAxis::Tau ? v : defaults.tau;
        StabilityReport rep = resolvent_norm(sweep_operator(axis, v, defaults), tau, defaults.alpha);
        rep.axis = sweep_axis_name(axis);
        rep.value = v;
        out.push_back(rep);
    }
    return out;
}

} // namespace fade
