#include "fade/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fade {

namespace {

constexpr double kPi = std::numbers::pi;

double interior_sq_sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

ErrorReport error_norms(std::span<const double> numeric, std::span<const double> exact,
                        const Grid& grid, std::span<const double> initial) {
    if (numeric.size() != exact.size() || static_cast<int>(numeric.size()) != grid.interior())
        throw std::invalid_argument("error_norms: interior vector length mismatch");
    ErrorReport r;
    r.mx = grid.cells;
    double s = 0.0;
    for (size_t i = 0; i < numeric.size(); ++i) {
        const double d = numeric[i] - exact[i];
        s += d * d;
    }
    r.e2 = std::sqrt(s / grid.cells);
    r.einf = max_abs_diff(numeric, exact);
    if (!initial.empty()) {
        const double denom = interior_sq_sum(initial);
        if (denom > 0.0) r.e_normalized = std::sqrt(s / denom);
    }
    return r;
}

ErrorReport error_norms(std::span<const double> numeric, std::span<const double> exact,
                        const Grid& gx, const Grid& gy) {
    const size_t n = static_cast<size_t>(gx.interior()) * gy.interior();
    if (numeric.size() != exact.size() || numeric.size() != n)
        throw std::invalid_argument("error_norms: interior vector length mismatch");
    ErrorReport r;
    r.mx = gx.cells;
    r.my = gy.cells;
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = numeric[i] - exact[i];
        s += d * d;
    }
    r.e2 = std::sqrt(s / (static_cast<double>(gx.cells) * gy.cells));
    r.einf = max_abs_diff(numeric, exact);
    return r;
}

double truncated_series_solution_ex62(double alpha, double x, double t, int k_terms) {
    if (k_terms < 1) throw std::invalid_argument("series solution: need at least one term");
    double s = 0.0;
    for (int j = 0; j < k_terms; ++j) {
        const int k = 2 * j + 1;
        const double z = t > 0.0 ? -k * k * kPi * kPi * std::pow(t, alpha) : 0.0;
        s += 2.0 / (static_cast<double>(k) * k * k) * mittag_leffler(alpha, z) *
             std::sin(k * kPi * x);
    }
    return 16.0 / (kPi * kPi * kPi) * s;
}

namespace {

ProblemSpec make_ex61(const ProblemParams& p) {
    TimeFractional1D q;
    q.id = "ex61";
    q.a = 0.0;
    q.b = 1.0;
    q.alpha = p.alpha;
    q.kappa = 1.0;
    q.eps = 2.0;
    const double alpha = p.alpha;
    auto ml_t = [alpha](double t) {
        return t > 0.0 ? mittag_leffler(alpha, std::pow(t, alpha)) : 1.0;
    };
    q.psi = [](double x) { return std::exp(x); };
    q.g1 = ml_t;
    q.g2 = [ml_t](double t) { return std::exp(1.0) * ml_t(t); };
    q.f = [](double, double) { return 0.0; };
    q.exact = [ml_t](double x, double t) { return std::exp(x) * ml_t(t); };
    q.default_weights = WeightFamily::GL1;
    return q;
}

ProblemSpec make_ex62(const ProblemParams& p) {
    TimeFractional1D q;
    q.id = "ex62";
    q.alpha = p.alpha;
    q.kappa = 0.0;
    q.eps = 1.0;
    q.psi = [](double x) { return 4.0 * x * (1.0 - x); };
    q.g1 = [](double) { return 0.0; };
    q.g2 = [](double) { return 0.0; };
    q.f = [](double, double) { return 0.0; };
    const double alpha = p.alpha;
    q.exact = [alpha](double x, double t) {
        return truncated_series_solution_ex62(alpha, x, t);
    };
    q.default_weights = WeightFamily::HO3;
    return q;
}

ProblemSpec make_ex63(const ProblemParams& p) {
    TimeFractional1D q;
    q.id = "ex63";
    q.alpha = p.alpha;
    q.kappa = 0.0;
    q.eps = 1.0;
    q.psi = [](double) { return 0.0; };
    q.g1 = [](double) { return 0.0; };
    q.g2 = [](double) { return 0.0; };
    const double alpha = p.alpha;
    q.f = [alpha](double x, double t) {
        const double caputo_t2 = t > 0.0 ? rl_monomial(2, alpha, t) : 0.0;
        return caputo_t2 * std::sin(2.0 * kPi * x) +
               4.0 * kPi * kPi * t * t * std::sin(2.0 * kPi * x);
    };
    q.exact = [](double x, double t) { return t * t * std::sin(2.0 * kPi * x); };
    q.default_weights = WeightFamily::HO3;
    return q;
}

ProblemSpec make_ex64(const ProblemParams& p) {
    TimeFractional2D q;
    q.id = "ex64";
    q.a = q.c = -1.0;
    q.b = q.d = 1.0;
    q.alpha = p.alpha;
    q.eps_x = q.eps_y = 1.0;
    auto T = [](double s) { return std::tanh(20.0 * s); };
    auto Tpp = [](double s) {
        const double c = std::cosh(20.0 * s);
        return -800.0 * std::tanh(20.0 * s) / (c * c);
    };
    q.psi = [T](double x, double y) { return T(x) * T(y); };
    auto exact = [T](double x, double y, double t) { return (1.0 + t * t) * T(x) * T(y); };
    q.g = exact;
    q.exact = exact;
    const double alpha = p.alpha;
    q.f = [T, Tpp, alpha](double x, double y, double t) {
        const double caputo_t2 = t > 0.0 ? rl_monomial(2, alpha, t) : 0.0;
        return caputo_t2 * T(x) * T(y) - (1.0 + t * t) * (Tpp(x) * T(y) + T(x) * Tpp(y));
    };
    q.default_weights = WeightFamily::HO3;
    return q;
}

ProblemSpec make_ex65(const ProblemParams& p) {
    NlsProblem q;
    q.id = "ex65";
    q.a = p.domain_a.value_or(-10.0);
    q.b = p.domain_b.value_or(10.0);
    q.alpha = p.alpha;
    q.beta_nl = p.nls_beta;
    if (p.nls_init == "soliton") {
        q.psi_re = [](double x) { return std::cos(2.0 * x) / std::cosh(x); };
        q.psi_im = [](double x) { return std::sin(2.0 * x) / std::cosh(x); };
        if (p.alpha == 1.0 && p.nls_beta == 2.0) {
            q.exact_re = [](double x, double t) {
                return std::cos(2.0 * x - 3.0 * t) / std::cosh(x - 4.0 * t);
            };
            q.exact_im = [](double x, double t) {
                return std::sin(2.0 * x - 3.0 * t) / std::cosh(x - 4.0 * t);
            };
        }
    } else if (p.nls_init == "collision") {
        const double x1 = p.collision_x1, x2 = p.collision_x2, pp = p.collision_p;
        q.psi_re = [x1, x2, pp](double x) {
            return std::cos(pp * (x - x1)) / std::cosh(x - x1) +
                   std::cos(-pp * (x - x2)) / std::cosh(x - x2);
        };
        q.psi_im = [x1, x2, pp](double x) {
            return std::sin(pp * (x - x1)) / std::cosh(x - x1) +
                   std::sin(-pp * (x - x2)) / std::cosh(x - x2);
        };
    } else {
        throw std::invalid_argument("ex65: unknown initial condition " + p.nls_init);
    }
    q.default_weights = WeightFamily::GL1;
    return q;
}

ProblemSpec make_ex66(const ProblemParams&) {
    TimeFractional2D q;
    q.id = "ex66";
    q.a = q.c = 0.0;
    q.b = q.d = 2.0;
    q.alpha = 1.0;
    q.kappa_x = q.kappa_y = 0.8;
    q.eps_x = q.eps_y = 0.01;
    const double kx = 0.8, ky = 0.8, ex = 0.01, ey = 0.01;
    auto pulse = [kx, ky, ex, ey](double x, double y, double t) {
        const double s = 1.0 + 4.0 * t;
        const double dx = x - kx * t - 0.5;
        const double dy = y - ky * t - 0.5;
        return std::exp(-dx * dx / (ex * s) - dy * dy / (ey * s)) / s;
    };
    q.psi = [pulse](double x, double y) { return pulse(x, y, 0.0); };
    q.g = pulse;
    q.exact = pulse;
    q.f = [](double, double, double) { return 0.0; };
    q.default_weights = WeightFamily::GL1;
    return q;
}

ProblemSpec make_ex67(const ProblemParams& p) {
    SpaceFractional2D q;
    q.id = "ex67";
    q.beta1 = p.beta1;
    q.beta2 = p.beta2;
    q.eps_x = q.eps_y = 1.0;
    auto shape = [](double s) { return s * s * (1.0 - s) * (1.0 - s); };
    q.psi = [shape](double x, double y) { return shape(x) * shape(y); };
    q.exact = [shape](double x, double y, double t) {
        return std::exp(-t) * shape(x) * shape(y);
    };
    const double b1 = p.beta1, b2 = p.beta2;
    q.f = [shape, b1, b2](double x, double y, double t) {
        const double u = std::exp(-t);
        const double qx = 2.0 * u * std::pow(x, 2.0 - b1) * shape(y) * reciprocal_gamma(3.0 - b1) *
                          (1.0 - 6.0 * x / (3.0 - b1) + 12.0 * x * x / ((3.0 - b1) * (4.0 - b1)));
        const double qy = 2.0 * u * shape(x) * std::pow(y, 2.0 - b2) * reciprocal_gamma(3.0 - b2) *
                          (1.0 - 6.0 * y / (3.0 - b2) + 12.0 * y * y / ((3.0 - b2) * (4.0 - b2)));
        return -u * shape(x) * shape(y) - qx - qy;
    };
    return q;
}

} // namespace

ProblemSpec make_problem(const std::string& id, const ProblemParams& params) {
    if (id == "ex61") return make_ex61(params);
    if (id == "ex62") return make_ex62(params);
    if (id == "ex63") return make_ex63(params);
    if (id == "ex64") return make_ex64(params);
    if (id == "ex65") return make_ex65(params);
    if (id == "ex66") return make_ex66(params);
    if (id == "ex67") return make_ex67(params);
    throw std::invalid_argument("unknown problem id: " + id);
}

const std::string& problem_id(const ProblemSpec& p) {
    return std::visit([](const auto& q) -> const std::string& { return q.id; }, p);
}

} // namespace fade
