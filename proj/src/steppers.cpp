#include "fade/steppers.hpp"

#include "fade/errors.hpp"
#include "fade/kernels.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fade {

namespace {

DenseMatrix shifted_system(const DenseMatrix& k, double diag_shift, double scale) {
    DenseMatrix a = k;
    for (int r = 0; r < a.rows(); ++r) {
        auto row = a.row(r);
        kernels::scal(scale, row);
        a(r, r) += diag_shift;
    }
    return a;
}

double l2(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

void ensure_finite(std::span<const double> v, const char* who) {
    if (!std::isfinite(kernels::dot(v, v)))
        throw NumericalError(std::string(who) + ": state diverged (non-finite values)");
}

} // namespace

FractionalStepper::FractionalStepper(const SpatialOperator& op, TemporalWeights weights,
                                     double tau, std::vector<double> u0, int expected_steps)
    : weights_(std::move(weights)),
      tau_(tau),
      tau_alpha_(std::pow(tau, weights_.alpha)),
      lu_(shifted_system(op.interior(), weights_.w0(), std::pow(tau, weights_.alpha))),
      hist_(static_cast<int>(u0.size())),
      scratch_(u0.size()) {
    if (!(tau > 0.0)) throw std::invalid_argument("FractionalStepper: tau must be positive");
    if (op.dim() != static_cast<int>(u0.size()))
        throw std::invalid_argument("FractionalStepper: initial state size mismatch");
    if (expected_steps > 0) hist_.reserve_levels(expected_steps + 1);
    hist_.push(u0);
}

void FractionalStepper::step(std::span<const double> load) {
    const int n = hist_.levels(); // the level being computed
    if (weights_.count() < n + 1)
        throw std::invalid_argument("FractionalStepper: weight sequence exhausted");
    caputo_residual_rhs(hist_, weights_, scratch_);
    kernels::axpy(tau_alpha_, load, scratch_);
    lu_.solve_inplace(scratch_);
    hist_.push(scratch_);
}

RungeKuttaGill::RungeKuttaGill(int dim)
    : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

void RungeKuttaGill::step(const Rhs& f, double t, double tau, std::span<double> u) {
    const double sq2 = std::sqrt(2.0);

    f(t, u, k1_);
    kernels::scal(tau, k1_);

    std::copy(u.begin(), u.end(), tmp_.begin());
    kernels::axpy(0.5, k1_, tmp_);
    f(t + 0.5 * tau, tmp_, k2_);
    kernels::scal(tau, k2_);

    std::copy(u.begin(), u.end(), tmp_.begin());
    kernels::axpy(0.5 * (sq2 - 1.0), k1_, tmp_);
    kernels::axpy(0.5 * (2.0 - sq2), k2_, tmp_);
    f(t + 0.5 * tau, tmp_, k3_);
    kernels::scal(tau, k3_);

    std::copy(u.begin(), u.end(), tmp_.begin());
    kernels::axpy(-0.5 * sq2, k2_, tmp_);
    kernels::axpy(0.5 * (2.0 + sq2), k3_, tmp_);
    f(t + tau, tmp_, k4_);
    kernels::scal(tau, k4_);

    kernels::axpy(1.0 / 6.0, k1_, u);
    kernels::axpy((2.0 - sq2) / 6.0, k2_, u);
    kernels::axpy((2.0 + sq2) / 6.0, k3_, u);
    kernels::axpy(1.0 / 6.0, k4_, u);
    ensure_finite(u, "RungeKuttaGill");
}

CrankNicolsonStepper::CrankNicolsonStepper(const SpatialOperator& l, double tau,
                                           std::vector<double> u0)
    : tau_(tau),
      lu_(shifted_system(l.interior(), 1.0, -0.5 * tau)),
      bmat_(shifted_system(l.interior(), 1.0, 0.5 * tau)),
      u_(std::move(u0)),
      scratch_(u_.size()) {
    if (l.dim() != static_cast<int>(u_.size()))
        throw std::invalid_argument("CrankNicolsonStepper: initial state size mismatch");
}

void CrankNicolsonStepper::step(std::span<const double> f_mid) {
    bmat_.apply(u_, scratch_);
    kernels::axpy(tau_, f_mid, scratch_);
    lu_.solve_inplace(scratch_);
    std::swap(u_, scratch_);
}

NlsFractionalStepper::NlsFractionalStepper(const DenseMatrix& d2_interior, double beta_nl,
                                           TemporalWeights weights, double tau,
                                           std::vector<double> u0, std::vector<double> v0,
                                           NewtonConfig config)
    : d2_(d2_interior),
      beta_nl_(beta_nl),
      weights_(std::move(weights)),
      tau_(tau),
      tau_alpha_(std::pow(tau, weights_.alpha)),
      config_(config),
      hist_u_(static_cast<int>(u0.size())),
      hist_v_(static_cast<int>(v0.size())) {
    if (u0.size() != v0.size() || d2_.rows() != static_cast<int>(u0.size()))
        throw std::invalid_argument("NlsFractionalStepper: size mismatch");
    if (!(config_.tolerance > 0.0) || config_.max_iterations < 1)
        throw std::invalid_argument("NlsFractionalStepper: bad Newton configuration");
    hist_u_.push(u0);
    hist_v_.push(v0);
}

void NlsFractionalStepper::step() {
    const int n = static_cast<int>(d2_.rows());
    const double w0 = weights_.w0();
    const double ta = tau_alpha_;
    if (weights_.count() < hist_u_.levels() + 1)
        throw std::invalid_argument("NlsFractionalStepper: weight sequence exhausted");

    const std::vector<double> ru = caputo_residual_rhs(hist_u_, weights_);
    const std::vector<double> rv = caputo_residual_rhs(hist_v_, weights_);

    std::vector<double> u(hist_u_.latest().begin(), hist_u_.latest().end());
    std::vector<double> v(hist_v_.latest().begin(), hist_v_.latest().end());
    std::vector<double> d2u(n), d2v(n), res(2 * n), delta(2 * n);

    auto residual = [&](const std::vector<double>& uu, const std::vector<double>& vv,
                        std::vector<double>& out) {
        d2_.apply(uu, d2u);
        d2_.apply(vv, d2v);
        for (int i = 0; i < n; ++i) {
            const double r2 = uu[i] * uu[i] + vv[i] * vv[i];
            out[i] = w0 * uu[i] + ta * (d2v[i] + beta_nl_ * r2 * vv[i]) - ru[i];
            out[n + i] = w0 * vv[i] - ta * (d2u[i] + beta_nl_ * r2 * uu[i]) - rv[i];
        }
    };

    residual(u, v, res);
    double rnorm = l2(res);
    int it = 0;
    while (rnorm >= config_.tolerance) {
        if (++it > config_.max_iterations)
            throw NumericalError("NLS Newton: max iterations exceeded, residual " +
                                 std::to_string(rnorm));
        DenseMatrix jac(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                jac(i, n + j) = ta * d2_(i, j);
                jac(n + i, j) = -ta * d2_(i, j);
            }
            const double uv = u[i] * v[i];
            jac(i, i) += w0 + ta * beta_nl_ * 2.0 * uv;
            jac(i, n + i) += ta * beta_nl_ * (u[i] * u[i] + 3.0 * v[i] * v[i]);
            jac(n + i, i) += -ta * beta_nl_ * (3.0 * u[i] * u[i] + v[i] * v[i]);
            jac(n + i, n + i) += w0 - ta * beta_nl_ * 2.0 * uv;
        }
        LuSolver lu(std::move(jac));
        std::copy(res.begin(), res.end(), delta.begin());
        lu.solve_inplace(delta);

        // Backtracking on the residual norm.
        double s = 1.0;
        std::vector<double> un(n), vn(n), rtmp(2 * n);
        while (true) {
            for (int i = 0; i < n; ++i) {
                un[i] = u[i] - s * delta[i];
                vn[i] = v[i] - s * delta[n + i];
            }
            residual(un, vn, rtmp);
            const double rn = l2(rtmp);
            if (rn < rnorm) {
                u.swap(un);
                v.swap(vn);
                res.swap(rtmp);
                rnorm = rn;
                break;
            }
            if (!(s > config_.min_step))
                throw NumericalError("NLS Newton: divergence, residual stuck at " +
                                     std::to_string(rnorm));
            s *= config_.damping;
        }
    }
    last_iterations_ = it;
    hist_u_.push(u);
    hist_v_.push(v);
}

Scheme default_scheme(const ProblemSpec& problem) {
    if (std::holds_alternative<SpaceFractional2D>(problem)) return Scheme::CnFracSpace;
    if (const auto* p = std::get_if<TimeFractional2D>(&problem)) {
        if (p->alpha == 1.0) return Scheme::RkGill;
    }
    return Scheme::FracImplicit;
}

namespace {

int step_count(double t_end, double tau) {
    if (t_end == 0.0) return 0;
    if (!(tau > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("run: tau and t_end must be positive");
    const double raw = t_end / tau;
    const int n = static_cast<int>(std::llround(raw));
    if (n < 1 || std::abs(n * tau - t_end) > 1e-8 * std::max(1.0, t_end))
        throw std::invalid_argument("run: t_end must be an integer multiple of tau");
    return n;
}

struct FrameRecorder {
    std::vector<Frame>& frames;
    int stride;
    void maybe_record(int step, double t, std::span<const double> u,
                      std::span<const double> v = {}) {
        if (stride > 0 && step % stride == 0) record(t, u, v);
    }
    void record(double t, std::span<const double> u, std::span<const double> v = {}) {
        Frame f;
        f.t = t;
        f.u.assign(u.begin(), u.end());
        f.v.assign(v.begin(), v.end());
        frames.push_back(std::move(f));
    }
};

WeightFamily pick_family(const RunConfig& c, WeightFamily problem_default) {
    return c.weights.value_or(problem_default);
}

RunResult run_time_fractional_1d(const TimeFractional1D& p, const RunConfig& c) {
    const Grid g(p.a, p.b, c.mx);
    const int n_steps = step_count(c.t_end, c.tau);
    RunResult out;
    out.gx = g;
    out.steps = n_steps;

    const auto t0 = std::chrono::steady_clock::now();
    const WeightMatrix w1 = first_order_weights(SplineFamily::CubicTrig, g);
    const WeightMatrix w2 = higher_order_weights(w1, 2);
    const SpatialOperator op = assemble_K_1d(p.kappa, p.eps, w1, w2);
    std::vector<double> u0 = sample_interior(g, p.psi);

    FrameRecorder rec{out.frames, c.dump_stride};
    rec.maybe_record(0, 0.0, u0);

    if (c.scheme == Scheme::FracImplicit) {
        FractionalStepper stepper(op, make_temporal_weights(pick_family(c, p.default_weights),
                                                            p.alpha, n_steps + 1),
                                  c.tau, u0, n_steps);
        for (int n = 1; n <= n_steps; ++n) {
            const std::vector<double> load = boundary_load(op, n * c.tau, p.f, p.g1, p.g2);
            stepper.step(load);
            rec.maybe_record(n, n * c.tau, stepper.history().latest());
        }
        if (c.dump_stride <= 0 || n_steps % std::max(c.dump_stride, 1) != 0)
            rec.record(n_steps * c.tau, stepper.history().latest());
        out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (p.exact) {
            const auto exact = sample_interior(g, [&](double x) { return p.exact(x, c.t_end); });
            out.errors = error_norms(stepper.history().latest(), exact, g, u0);
        }
        return out;
    }
    if (c.scheme == Scheme::RkGill) {
        if (p.alpha != 1.0)
            throw std::invalid_argument("run: explicit scheme requires alpha = 1");
        std::vector<double> u = u0;
        std::vector<double> load;
        RungeKuttaGill rk(static_cast<int>(u.size()));
        auto rhs = [&](double t, std::span<const double> uu, std::span<double> du) {
            op.interior().apply(uu, du);
            kernels::scal(-1.0, du);
            load = boundary_load(op, t, p.f, p.g1, p.g2);
            kernels::axpy(1.0, load, du);
        };
        for (int n = 1; n <= n_steps; ++n) {
            rk.step(rhs, (n - 1) * c.tau, c.tau, u);
            rec.maybe_record(n, n * c.tau, u);
        }
        if (c.dump_stride <= 0 || n_steps % std::max(c.dump_stride, 1) != 0)
            rec.record(n_steps * c.tau, u);
        out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (p.exact) {
            const auto exact = sample_interior(g, [&](double x) { return p.exact(x, c.t_end); });
            out.errors = error_norms(u, exact, g, u0);
        }
        return out;
    }
    throw std::invalid_argument("run: scheme incompatible with a time-fractional 1D problem");
}

RunResult run_time_fractional_2d(const TimeFractional2D& p, const RunConfig& c) {
    const Grid gx(p.a, p.b, c.mx);
    const Grid gy(p.c, p.d, c.my > 0 ? c.my : c.mx);
    const int n_steps = step_count(c.t_end, c.tau);
    RunResult out;
    out.gx = gx;
    out.gy = gy;
    out.steps = n_steps;

    const auto t0 = std::chrono::steady_clock::now();
    const WeightMatrix wx1 = first_order_weights(SplineFamily::CubicTrig, gx);
    const WeightMatrix wx2 = higher_order_weights(wx1, 2);
    const WeightMatrix wy1 = first_order_weights(SplineFamily::CubicTrig, gy);
    const WeightMatrix wy2 = higher_order_weights(wy1, 2);
    const SpatialOperator op =
        assemble_K_2d(p.kappa_x, p.kappa_y, p.eps_x, p.eps_y, wx1, wx2, wy1, wy2);
    std::vector<double> u0 = sample_interior(gx, gy, p.psi);

    FrameRecorder rec{out.frames, c.dump_stride};
    rec.maybe_record(0, 0.0, u0);

    auto finish = [&](std::span<const double> u) {
        out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (p.exact) {
            const auto exact = sample_interior(
                gx, gy, [&](double x, double y) { return p.exact(x, y, c.t_end); });
            out.errors = error_norms(u, exact, gx, gy);
        }
    };

    if (c.scheme == Scheme::FracImplicit) {
        FractionalStepper stepper(op, make_temporal_weights(pick_family(c, p.default_weights),
                                                            p.alpha, n_steps + 1),
                                  c.tau, u0, n_steps);
        for (int n = 1; n <= n_steps; ++n) {
            const std::vector<double> load = boundary_load(op, n * c.tau, p.f, p.g);
            stepper.step(load);
            rec.maybe_record(n, n * c.tau, stepper.history().latest());
        }
        if (c.dump_stride <= 0 || n_steps % std::max(c.dump_stride, 1) != 0)
            rec.record(n_steps * c.tau, stepper.history().latest());
        finish(stepper.history().latest());
        return out;
    }
    if (c.scheme == Scheme::RkGill) {
        if (p.alpha != 1.0)
            throw std::invalid_argument("run: explicit scheme requires alpha = 1");
        std::vector<double> u = u0;
        std::vector<double> load;
        RungeKuttaGill rk(static_cast<int>(u.size()));
        auto rhs = [&](double t, std::span<const double> uu, std::span<double> du) {
            op.interior().apply(uu, du);
            kernels::scal(-1.0, du);
            load = boundary_load(op, t, p.f, p.g);
            kernels::axpy(1.0, load, du);
        };
        for (int n = 1; n <= n_steps; ++n) {
            rk.step(rhs, (n - 1) * c.tau, c.tau, u);
            rec.maybe_record(n, n * c.tau, u);
        }
        if (c.dump_stride <= 0 || n_steps % std::max(c.dump_stride, 1) != 0)
            rec.record(n_steps * c.tau, u);
        finish(u);
        return out;
    }
    throw std::invalid_argument("run: scheme incompatible with a time-fractional 2D problem");
}

RunResult run_space_fractional(const SpaceFractional2D& p, const RunConfig& c) {
    if (c.scheme != Scheme::CnFracSpace)
        throw std::invalid_argument("run: space-fractional problems use the Crank-Nicolson scheme");
    const Grid gx(p.a, p.b, c.mx);
    const Grid gy(p.c, p.d, c.my > 0 ? c.my : c.mx);
    const int n_steps = step_count(c.t_end, c.tau);
    RunResult out;
    out.gx = gx;
    out.gy = gy;
    out.steps = n_steps;

    const auto t0 = std::chrono::steady_clock::now();
    const WeightMatrix wbx = fractional_weights(p.beta1, gx);
    const WeightMatrix wby = fractional_weights(p.beta2, gy);
    const SpatialOperator op = assemble_frac_L_2d(p.eps_x, p.eps_y, wbx, wby);
    std::vector<double> u0 = sample_interior(gx, gy, p.psi);

    FrameRecorder rec{out.frames, c.dump_stride};
    rec.maybe_record(0, 0.0, u0);

    CrankNicolsonStepper cn(op, c.tau, u0);
    for (int n = 1; n <= n_steps; ++n) {
        const double t_mid = (n - 0.5) * c.tau;
        const auto f_mid = sample_interior(
            gx, gy, [&](double x, double y) { return p.f(x, y, t_mid); });
        cn.step(f_mid);
        rec.maybe_record(n, n * c.tau, cn.current());
    }
    if (c.dump_stride <= 0 || n_steps % std::max(c.dump_stride, 1) != 0)
        rec.record(n_steps * c.tau, cn.current());
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (p.exact) {
        const auto exact =
            sample_interior(gx, gy, [&](double x, double y) { return p.exact(x, y, c.t_end); });
        out.errors = error_norms(cn.current(), exact, gx, gy);
    }
    return out;
}

RunResult run_nls(const NlsProblem& p, const RunConfig& c) {
    const Grid g(p.a, p.b, c.mx);
    const int n_steps = step_count(c.t_end, c.tau);
    RunResult out;
    out.gx = g;
    out.steps = n_steps;

    const auto t0 = std::chrono::steady_clock::now();
    const WeightMatrix w1 = first_order_weights(SplineFamily::CubicTrig, g);
    const WeightMatrix w2 = higher_order_weights(w1, 2);
    const int n = g.interior();
    DenseMatrix d2(n, n);
    for (int i = 1; i < g.cells; ++i)
        for (int j = 1; j < g.cells; ++j) d2(i - 1, j - 1) = w2.entries(i, j);

    std::vector<double> u0 = sample_interior(g, p.psi_re);
    std::vector<double> v0 = sample_interior(g, p.psi_im);

    FrameRecorder rec{out.frames, c.dump_stride};
    rec.maybe_record(0, 0.0, u0, v0);

    std::vector<double> u = u0, v = v0;
    if (c.scheme == Scheme::FracImplicit) {
        NlsFractionalStepper stepper(d2, p.beta_nl,
                                     make_temporal_weights(pick_family(c, p.default_weights),
                                                           p.alpha, n_steps + 1),
                                     c.tau, u0, v0, c.newton);
        for (int k = 1; k <= n_steps; ++k) {
            stepper.step();
            rec.maybe_record(k, k * c.tau, stepper.history_re().latest(),
                             stepper.history_im().latest());
        }
        u.assign(stepper.history_re().latest().begin(), stepper.history_re().latest().end());
        v.assign(stepper.history_im().latest().begin(), stepper.history_im().latest().end());
    } else if (c.scheme == Scheme::RkGill) {
        if (p.alpha != 1.0)
            throw std::invalid_argument("run: explicit scheme requires alpha = 1");
        std::vector<double> w(2 * n);
        std::copy(u.begin(), u.end(), w.begin());
        std::copy(v.begin(), v.end(), w.begin() + n);
        std::vector<double> d2u(n), d2v(n);
        RungeKuttaGill rk(2 * n);
        auto rhs = [&](double, std::span<const double> ww, std::span<double> dw) {
            const std::span<const double> uu = ww.subspan(0, n);
            const std::span<const double> vv = ww.subspan(n, n);
            d2.apply(uu, d2u);
            d2.apply(vv, d2v);
            for (int i = 0; i < n; ++i) {
                const double r2 = uu[i] * uu[i] + vv[i] * vv[i];
                dw[i] = -d2v[i] - p.beta_nl * r2 * vv[i];
                dw[n + i] = d2u[i] + p.beta_nl * r2 * uu[i];
            }
        };
        for (int k = 1; k <= n_steps; ++k) {
            rk.step(rhs, (k - 1) * c.tau, c.tau, w);
            rec.maybe_record(k, k * c.tau, std::span<const double>(w.data(), n),
                             std::span<const double>(w.data() + n, n));
        }
        std::copy(w.begin(), w.begin() + n, u.begin());
        std::copy(w.begin() + n, w.end(), v.begin());
    } else {
        throw std::invalid_argument("run: scheme incompatible with the coupled problem");
    }
    if (c.dump_stride <= 0 || n_steps % std::max(c.dump_stride, 1) != 0)
        rec.record(n_steps * c.tau, u, v);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (p.exact_re && p.exact_im) {
        const auto eu = sample_interior(g, [&](double x) { return p.exact_re(x, c.t_end); });
        const auto ev = sample_interior(g, [&](double x) { return p.exact_im(x, c.t_end); });
        out.errors = error_norms(u, eu, g, u0);
        out.errors_im = error_norms(v, ev, g, v0);
    }
    return out;
}

} // namespace

RunResult run(const ProblemSpec& problem, const RunConfig& config) {
    return std::visit(
        [&](const auto& p) -> RunResult {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TimeFractional1D>) return run_time_fractional_1d(p, config);
            else if constexpr (std::is_same_v<T, TimeFractional2D>) return run_time_fractional_2d(p, config);
            else if constexpr (std::is_same_v<T, SpaceFractional2D>) return run_space_fractional(p, config);
            else return run_nls(p, config);
        },
        problem);
}

} // namespace fade
