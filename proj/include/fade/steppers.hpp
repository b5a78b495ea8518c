#pragma once

#include "fade/frac.hpp"
#include "fade/linalg.hpp"
#include "fade/operators.hpp"
#include "fade/problems.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fade {

// Implicit march of the fractional-in-time scheme:
// w_0 U^n + tau^alpha K U^n = memory(U^0..U^{n-1}) + tau^alpha G^n.
// The system matrix is factored once; every past level is retained.
class FractionalStepper {
public:
    FractionalStepper(const SpatialOperator& op, TemporalWeights weights, double tau,
                      std::vector<double> u0, int expected_steps = 0);

    void step(std::span<const double> load);
    const History& history() const { return hist_; }
    int steps_taken() const { return hist_.levels() - 1; }
    double tau() const { return tau_; }

private:
    TemporalWeights weights_;
    double tau_;
    double tau_alpha_;
    LuSolver lu_;
    History hist_;
    std::vector<double> scratch_;
};

// Explicit four-stage integrator with the sqrt(2) stage coefficients.
class RungeKuttaGill {
public:
    using Rhs = std::function<void(double t, std::span<const double> u, std::span<double> du)>;

    explicit RungeKuttaGill(int dim);
    void step(const Rhs& f, double t, double tau, std::span<double> u);

private:
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

// (I - tau/2 L) U^n = (I + tau/2 L) U^{n-1} + tau f^{n-1/2}.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const SpatialOperator& L, double tau, std::vector<double> u0);

    void step(std::span<const double> f_mid);
    std::span<const double> current() const { return u_; }
    double tau() const { return tau_; }

private:
    double tau_;
    LuSolver lu_;       // I - tau/2 L
    DenseMatrix bmat_;  // I + tau/2 L
    std::vector<double> u_, scratch_;
};

struct NewtonConfig {
    double tolerance = 1e-12; // residual L2 norm
    int max_iterations = 50;
    double damping = 0.5;       // backtracking factor
    double min_step = 9.5367431640625e-7; // 2^-20
};

// Coupled real/imaginary fractional scheme with a cubic nonlinearity, damped
// Newton per step. The Jacobian couples the temporal weight and the
// second-order weight block with the pointwise nonlinear 2x2 blocks.
class NlsFractionalStepper {
public:
    NlsFractionalStepper(const DenseMatrix& d2_interior, double beta_nl, TemporalWeights weights,
                         double tau, std::vector<double> u0, std::vector<double> v0,
                         NewtonConfig config = {});

    void step();
    const History& history_re() const { return hist_u_; }
    const History& history_im() const { return hist_v_; }
    int last_newton_iterations() const { return last_iterations_; }

private:
    DenseMatrix d2_;
    double beta_nl_;
    TemporalWeights weights_;
    double tau_, tau_alpha_;
    NewtonConfig config_;
    History hist_u_, hist_v_;
    int last_iterations_ = 0;
};

enum class Scheme { FracImplicit, RkGill, CnFracSpace };

struct RunConfig {
    Scheme scheme = Scheme::FracImplicit;
    std::optional<WeightFamily> weights; // default: the problem's family
    int mx = 16;
    int my = 0; // ignored for 1D
    double tau = 1e-3;
    double t_end = 1.0;
    int dump_stride = 0; // 0: keep only the final frame (plus t=0)
    NewtonConfig newton;
};

struct Frame {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v; // imaginary part, empty unless coupled
};

struct RunResult {
    std::vector<Frame> frames; // always ends with the final time level
    std::optional<ErrorReport> errors;    // vs exact solution, when known
    std::optional<ErrorReport> errors_im; // imaginary part, coupled problems
    double wall_seconds = 0.0;
    int steps = 0;
    Grid gx;
    std::optional<Grid> gy;
};

// Samples the initial state, marches to t_end, reports errors when the
// problem knows its exact solution. Throws std::invalid_argument for
// incompatible problem/scheme pairings.
RunResult run(const ProblemSpec& problem, const RunConfig& config);

Scheme default_scheme(const ProblemSpec& problem);

} // namespace fade
