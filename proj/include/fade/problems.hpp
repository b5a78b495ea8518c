#pragma once

#include "fade/frac.hpp"
#include "fade/grid.hpp"
#include "fade/operators.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>

namespace fade {

struct ErrorReport {
    double e2 = 0.0;
    double einf = 0.0;
    std::optional<double> e_normalized; // undefined when the initial data vanish
    int mx = 0;
    int my = 0; // 0 for 1D
};

// Interior-point error norms, sums over i = 1..M-1 (and j likewise in 2D).
ErrorReport error_norms(std::span<const double> numeric, std::span<const double> exact,
                        const Grid& grid, std::span<const double> initial = {});
ErrorReport error_norms(std::span<const double> numeric, std::span<const double> exact,
                        const Grid& gx, const Grid& gy);

// Benchmark problems. All functions are evaluable on the closed domain.
struct TimeFractional1D {
    std::string id;
    double a = 0.0, b = 1.0;
    double alpha = 0.5;
    double kappa = 0.0, eps = 1.0;
    ScalarFn1 psi;     // initial u(x,0)
    ScalarFn1 g1, g2;  // boundary values at a and b
    ScalarFn2 f;       // source f(x,t)
    ScalarFn2 exact;   // may be empty
    WeightFamily default_weights = WeightFamily::GL1;
};

struct TimeFractional2D {
    std::string id;
    double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
    double alpha = 0.5;
    double kappa_x = 0.0, kappa_y = 0.0, eps_x = 1.0, eps_y = 1.0;
    ScalarFn2 psi;   // u(x,y,0)
    ScalarFn3 g;     // boundary values
    ScalarFn3 f;     // source
    ScalarFn3 exact; // may be empty
    WeightFamily default_weights = WeightFamily::HO3;
};

struct SpaceFractional2D {
    std::string id;
    double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
    double beta1 = 1.5, beta2 = 1.5;
    double eps_x = 1.0, eps_y = 1.0;
    ScalarFn2 psi;
    ScalarFn3 f;
    ScalarFn3 exact; // may be empty; boundary data are homogeneous
};

// Coupled real/imaginary diffusion system with a cubic nonlinearity and
// homogeneous Dirichlet data on a truncated line.
struct NlsProblem {
    std::string id;
    double a = -10.0, b = 10.0;
    double alpha = 1.0;
    double beta_nl = 2.0;
    ScalarFn1 psi_re, psi_im;
    ScalarFn2 exact_re, exact_im; // only for the classical mobile-soliton case
    WeightFamily default_weights = WeightFamily::GL1;
};

using ProblemSpec = std::variant<TimeFractional1D, TimeFractional2D, SpaceFractional2D, NlsProblem>;

struct ProblemParams {
    double alpha = 0.5;
    double beta1 = 1.1;
    double beta2 = 1.3;
    // NLS extras
    double nls_beta = 2.0;
    std::string nls_init = "soliton"; // soliton | collision
    std::optional<double> domain_a, domain_b;
    double collision_x1 = -6.0, collision_x2 = 6.0, collision_p = 2.0;
};

// Known ids: ex61 ex62 ex63 ex64 ex65 ex66 ex67. Throws std::invalid_argument
// for anything else.
ProblemSpec make_problem(const std::string& id, const ProblemParams& params = {});

// Partial sum of the separable series solution used by ex62; terms with even
// wave numbers vanish. k_terms counts the odd terms kept.
double truncated_series_solution_ex62(double alpha, double x, double t, int k_terms = 200);

const std::string& problem_id(const ProblemSpec& p);

} // namespace fade
