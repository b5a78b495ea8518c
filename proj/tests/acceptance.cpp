// Acceptance suite: every gate below pins a tolerance against the reference
// values and prints one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include "fade/frac.hpp"
#include "fade/kernels.hpp"
#include "fade/problems.hpp"
#include "fade/stability.hpp"
#include "fade/steppers.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace fade;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void finish() const {
        std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!pass) ++g_failures;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4e", v);
    return buf;
}

bool within(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want);
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

RunResult run_problem(const std::string& id, const ProblemParams& pp, const RunConfig& rc) {
    return run(make_problem(id, pp), rc);
}

// ---- Criterion 1: 1D benchmark error table, three temporal orders ----
void criterion1() {
    struct Row {
        int m;
        double e2, einf;
    };
    const std::vector<std::pair<double, std::vector<Row>>> table = {
        {0.2,
         {{8, 2.4430e-3, 3.5200e-3},
          {16, 6.3696e-4, 9.2142e-4},
          {32, 1.6272e-4, 2.4362e-4},
          {64, 4.1425e-5, 6.2649e-5},
          {128, 1.0765e-5, 1.5906e-5}}},
        {0.5,
         {{8, 1.2489e-3, 1.8283e-3},
          {16, 3.2655e-4, 4.8198e-4},
          {32, 8.3679e-5, 1.2771e-4},
          {64, 2.1466e-5, 3.3008e-5},
          {128, 5.7295e-6, 8.4114e-6}}},
        {0.8,
         {{8, 9.7261e-4, 1.4452e-3},
          {16, 2.5487e-4, 3.8329e-4},
          {32, 6.5378e-5, 1.0160e-4},
          {64, 1.6774e-5, 2.6330e-5},
          {128, 4.4723e-6, 6.7183e-6}}}};

    Criterion c{"C1 frac-implicit 1D error table (three orders, five grids)"};
    for (const auto& [alpha, rows] : table) {
        ProblemParams pp;
        pp.alpha = alpha;
        const double t0 = now_seconds();
        std::vector<double> e2s, einfs;
        for (const auto& row : rows) {
            RunConfig rc;
            rc.scheme = Scheme::FracImplicit;
            rc.weights = WeightFamily::GL1;
            rc.mx = row.m;
            rc.tau = 1e-5;
            rc.t_end = 0.1;
            const auto res = run_problem("ex61", pp, rc);
            e2s.push_back(res.errors->e2);
            einfs.push_back(res.errors->einf);
            c.require(within(res.errors->e2, row.e2, 0.10),
                      "alpha=" + fmt(alpha) + " M=" + std::to_string(row.m) + " e2=" +
                          fmt(res.errors->e2) + " want " + fmt(row.e2));
            c.require(within(res.errors->einf, row.einf, 0.10),
                      "alpha=" + fmt(alpha) + " M=" + std::to_string(row.m) + " einf=" +
                          fmt(res.errors->einf) + " want " + fmt(row.einf));
        }
        for (size_t i = 0; i + 1 < e2s.size(); ++i) {
            c.require(std::log2(e2s[i] / e2s[i + 1]) >= 1.85,
                      "alpha=" + fmt(alpha) + " e2 rate below 1.85");
            c.require(std::log2(einfs[i] / einfs[i + 1]) >= 1.85,
                      "alpha=" + fmt(alpha) + " einf rate below 1.85");
        }
        const double wall = now_seconds() - t0;
        c.require(wall < 120.0, "alpha=" + fmt(alpha) + " runtime " + fmt(wall) + "s over budget");
    }
    c.finish();
}

// ---- Criterion 2: 1D manufactured problem, third-order weights ----
void criterion2() {
    Criterion c{"C2 frac-implicit manufactured 1D rows (third-order weights)"};
    const double t0 = now_seconds();
    ProblemParams pp;
    pp.alpha = 0.3;
    for (const auto& [m, want] : std::vector<std::pair<int, double>>{{16, 1.1924e-3},
                                                                     {64, 1.8925e-5}}) {
        RunConfig rc;
        rc.scheme = Scheme::FracImplicit;
        rc.weights = WeightFamily::HO3;
        rc.mx = m;
        rc.tau = 5e-3;
        rc.t_end = 1.0;
        const auto res = run_problem("ex63", pp, rc);
        c.require(within(res.errors->e2, want, 0.15),
                  "M=" + std::to_string(m) + " e2=" + fmt(res.errors->e2) + " want " + fmt(want));
    }
    const double wall = now_seconds() - t0;
    c.require(wall < 30.0, "runtime " + fmt(wall) + "s over budget");
    c.finish();
}

// ---- Criterion 3: 2D steep-front problem ----
void criterion3() {
    Criterion c{"C3 frac-implicit steep-front 2D rows (spacings 1/12, 1/24, 1/48)"};
    ProblemParams pp;
    pp.alpha = 0.5;
    // Reference rows are indexed by 1/h on [-1,1]^2: label M corresponds to
    // 2M cells. The pinned value is the 1/h = 24 row.
    const std::vector<std::pair<int, double>> rows = {
        {24, 3.3376e-1}, {48, 4.6331e-3}, {96, 3.4566e-4}};
    std::vector<double> einfs;
    double wall96 = 0.0;
    for (const auto& [cells, want] : rows) {
        RunConfig rc;
        rc.scheme = Scheme::FracImplicit;
        rc.weights = WeightFamily::HO3;
        rc.mx = rc.my = cells;
        rc.tau = 1e-2;
        rc.t_end = 0.5;
        const auto res = run_problem("ex64", pp, rc);
        einfs.push_back(res.errors->einf);
        if (cells == 96) wall96 = res.wall_seconds;
        if (cells == 48)
            c.require(within(res.errors->einf, want, 0.15),
                      "einf(h=1/24)=" + fmt(res.errors->einf) + " want " + fmt(want));
    }
    c.require(einfs[1] < einfs[0] && einfs[2] < einfs[1], "einf not strictly decreasing");
    c.require(std::log2(einfs[0] / einfs[1]) >= 2.0, "first refinement rate below 2");
    c.require(std::log2(einfs[1] / einfs[2]) >= 2.0, "second refinement rate below 2");
    c.require(wall96 <= 600.0, "largest dense solve took " + fmt(wall96) + "s");
    c.finish();
}

// ---- Criterion 4: 2D space-fractional midpoint scheme rows ----
void criterion4() {
    Criterion c{"C4 cn-fracspace 2D rows (beta 1.1/1.3)"};
    ProblemParams pp;
    pp.beta1 = 1.1;
    pp.beta2 = 1.3;
    std::vector<std::pair<int, double>> rows = {{10, 5.4217e-5}, {15, 0.0}, {20, 0.0},
                                                {25, 1.0207e-5}};
    std::vector<double> e2s;
    for (const auto& [m, want] : rows) {
        RunConfig rc;
        rc.scheme = Scheme::CnFracSpace;
        rc.mx = rc.my = m;
        rc.tau = 2.5e-4;
        rc.t_end = 0.2;
        const auto res = run_problem("ex67", pp, rc);
        e2s.push_back(res.errors->e2);
        if (want > 0.0)
            c.require(within(res.errors->e2, want, 0.15),
                      "M=" + std::to_string(m) + " e2=" + fmt(res.errors->e2) + " want " +
                          fmt(want));
    }
    const double grids[4] = {10, 15, 20, 25};
    for (int i = 0; i + 1 < 4; ++i) {
        const double rate = std::log(e2s[i] / e2s[i + 1]) / std::log(grids[i + 1] / grids[i]);
        c.require(rate > 1.6 && rate < 2.05, "rate " + fmt(rate) + " outside 1.75-1.9 band");
    }
    c.finish();
}

// ---- Criterion 5: explicit pulse transport ----
void criterion5() {
    Criterion c{"C5 rk-gill advected pulse (80x80)"};
    RunConfig rc;
    rc.scheme = Scheme::RkGill;
    rc.mx = rc.my = 80;
    rc.tau = 6.25e-3;
    rc.t_end = 1.25;
    const auto res = run_problem("ex66", {}, rc);
    c.require(res.errors->einf <= 2.0 * 2.2830e-5,
              "einf=" + fmt(res.errors->einf) + " above twice 2.2830e-5");
    c.require(res.errors->einf >= 0.5 * 2.2830e-5,
              "einf=" + fmt(res.errors->einf) + " implausibly far below the reference");

    const auto& frame = res.frames.back();
    const int nx = res.gx.interior();
    int best = 0;
    for (int i = 1; i < static_cast<int>(frame.u.size()); ++i)
        if (frame.u[i] > frame.u[best]) best = i;
    const double px = res.gx.knot(best % nx + 1);
    const double py = res.gy->knot(best / nx + 1);
    const double h = res.gx.h();
    c.require(std::abs(px - 1.5) <= h + 1e-12, "peak x at " + fmt(px));
    c.require(std::abs(py - 1.5) <= h + 1e-12, "peak y at " + fmt(py));
    c.require(within(frame.u[best], 1.0 / 6.0, 0.02),
              "peak height " + fmt(frame.u[best]) + " vs 1/6");
    c.finish();
}

// ---- Criterion 6: coupled nonlinear system, implicit vs explicit ----
void criterion6() {
    Criterion c{"C6 coupled soliton run, both schemes"};
    ProblemParams pp;
    pp.alpha = 1.0;
    RunConfig rc;
    rc.mx = 100;
    rc.tau = 2e-3;
    rc.t_end = 0.1;

    rc.scheme = Scheme::FracImplicit;
    const auto imp = run_problem("ex65", pp, rc);
    c.require(imp.errors->e2 <= 2.0 * 2.2229e-3, "implicit e2 re " + fmt(imp.errors->e2));
    c.require(imp.errors_im->e2 <= 2.0 * 2.2153e-3, "implicit e2 im " + fmt(imp.errors_im->e2));

    rc.scheme = Scheme::RkGill;
    const auto exp = run_problem("ex65", pp, rc);
    c.require(exp.errors->e2 <= 2.0 * 8.0954e-4, "explicit e2 re " + fmt(exp.errors->e2));
    c.require(exp.errors_im->e2 <= 2.0 * 8.1843e-4, "explicit e2 im " + fmt(exp.errors_im->e2));

    c.require(exp.wall_seconds < imp.wall_seconds,
              "explicit path (" + fmt(exp.wall_seconds) + "s) not faster than implicit (" +
                  fmt(imp.wall_seconds) + "s)");
    c.finish();
}

// ---- Criterion 7: property bundle ----
void criterion7() {
    Criterion c{"C7 property suite"};

    // (a) sign/partial-sum structure of the first-order weights
    for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const auto t = make_temporal_weights(WeightFamily::GL1, alpha, 500);
        bool ok = t.w[0] == 1.0;
        for (int k = 1; k <= 500; ++k) ok = ok && t.w[k] < 0.0 && t.prefix[k] > 0.0;
        c.require(ok, "weight sign/partial-sum structure failed at alpha=" + fmt(alpha));
    }

    // (b) third-order family at unit order
    {
        const auto w = ho3_weights(1.0, 6);
        const double want[4] = {11.0 / 6.0, -3.0, 1.5, -1.0 / 3.0};
        bool ok = true;
        for (int k = 0; k < 4; ++k) ok = ok && std::abs(w[k] - want[k]) < 1e-12;
        for (int k = 4; k <= 6; ++k) ok = ok && std::abs(w[k]) < 1e-12;
        c.require(ok, "unit-order degeneration of the third-order weights");
    }

    // (c) strict dominance margin of the trig table
    {
        bool ok = true;
        for (int s = 1; s <= 100; ++s) {
            const double h = 0.0099 * s;
            const auto t = knot_value_table(SplineFamily::CubicTrig, Grid(0.0, 8 * h, 8));
            ok = ok && t.center > 2.0 * t.neighbor;
        }
        c.require(ok, "diagonal dominance margin below unit spacing");
    }

    // (d) closed-form fractional derivatives vs the quadrature oracle
    {
        const Grid g(0.0, 1.0, 10);
        double max_err = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int m = -1 + trial % 13;
            const double beta = oracles::uniform(1.05, 1.95);
            const double x = oracles::uniform(0.15, 1.0);
            std::vector<double> breaks;
            for (int j = -3; j <= 13; ++j) breaks.push_back(g.knot(j));
            oracles::RlQuadrature q(
                [m, &g](double xx) { return eval_basis(SplineFamily::CubicPoly, m, xx, g); },
                g.knot(0), breaks);
            max_err = std::max(max_err, std::abs(rl_bspline_deriv(m, beta, x, g) -
                                                 q.rl_derivative(x, beta, 1e-3)));
        }
        c.require(max_err < 1e-6, "appendix-vs-quadrature max error " + fmt(max_err));
    }

    // (e) order-two limit of the fractional weights vs direct collocation
    {
        const Grid g(0.0, 1.0, 10);
        const auto wb = fractional_weights(2.0, g);
        const auto direct = oracles::direct_second_order_weights(g);
        double max_diff = 0.0;
        for (int i = 1; i < 10; ++i)
            for (int j = 0; j <= 10; ++j)
                max_diff = std::max(max_diff, std::abs(wb.entries(i, j) - direct(i, j)));
        c.require(max_diff < 1e-8, "beta->2 collocation mismatch " + fmt(max_diff));
    }

    // (f) explicit integrator order
    {
        auto decay = [](double, std::span<const double> u, std::span<double> du) {
            du[0] = -u[0];
        };
        std::vector<double> errs;
        for (const int n : {16, 32, 64}) {
            RungeKuttaGill rk(1);
            std::vector<double> u{1.0};
            const double tau = 1.0 / n;
            for (int k = 0; k < n; ++k) rk.step(decay, k * tau, tau, u);
            errs.push_back(std::abs(u[0] - std::exp(-1.0)));
        }
        const double r1 = std::log2(errs[0] / errs[1]);
        const double r2 = std::log2(errs[1] / errs[2]);
        c.require(std::abs(r1 - 4.0) < 0.3 && std::abs(r2 - 4.0) < 0.3,
                  "integrator order " + fmt(r1) + "/" + fmt(r2));
    }

    // (g) unit-order implicit scheme vs an independent backward Euler
    {
        const Grid g(0.0, 1.0, 16);
        const auto w1 = first_order_weights(SplineFamily::CubicTrig, g);
        const auto w2 = higher_order_weights(w1, 2);
        const auto op = assemble_K_1d(0.0, 1.0, w1, w2);
        const double tau = 0.02;
        const int n_steps = 50;
        ProblemParams pp;
        pp.alpha = 0.8; // data set borrowed from the manufactured problem
        const auto prob = std::get<TimeFractional1D>(make_problem("ex63", pp));

        FractionalStepper s(op, make_temporal_weights(WeightFamily::GL1, 1.0, n_steps + 1), tau,
                            sample_interior(g, prob.psi), n_steps);
        DenseMatrix a = op.interior();
        for (int i = 0; i < a.rows(); ++i) {
            for (int j = 0; j < a.cols(); ++j) a(i, j) *= tau;
            a(i, i) += 1.0;
        }
        const LuSolver lu(std::move(a));
        std::vector<double> u = sample_interior(g, prob.psi);
        double max_diff = 0.0;
        for (int n = 1; n <= n_steps; ++n) {
            const auto load = boundary_load(op, n * tau, prob.f, prob.g1, prob.g2);
            s.step(load);
            for (int i = 0; i < static_cast<int>(u.size()); ++i) u[i] += tau * load[i];
            lu.solve_inplace(u);
            for (int i = 0; i < static_cast<int>(u.size()); ++i)
                max_diff = std::max(max_diff, std::abs(u[i] - s.history().latest()[i]));
        }
        c.require(max_diff < 1e-12, "backward-Euler equivalence diff " + fmt(max_diff));
    }

    // (h) midpoint scheme time symmetry
    {
        const Grid g(0.0, 1.0, 6);
        const auto l = assemble_frac_L_2d(1.0, 1.0, fractional_weights(1.4, g),
                                          fractional_weights(1.8, g));
        std::vector<double> u0(l.dim());
        for (auto& v : u0) v = oracles::uniform(-1, 1);
        const std::vector<double> zero(l.dim(), 0.0);
        CrankNicolsonStepper fwd(l, 0.05, u0);
        fwd.step(zero);
        CrankNicolsonStepper bwd(l, -0.05,
                                 std::vector<double>(fwd.current().begin(), fwd.current().end()));
        bwd.step(zero);
        double max_diff = 0.0;
        for (int i = 0; i < l.dim(); ++i)
            max_diff = std::max(max_diff, std::abs(bwd.current()[i] - u0[i]));
        c.require(max_diff < 1e-10, "time-symmetry defect " + fmt(max_diff));
    }

    // (i) perturbation monotonicity under the verified resolvent bound
    {
        const Grid g(0.0, 1.0, 5);
        const auto w1 = first_order_weights(SplineFamily::CubicTrig, g);
        const auto w2 = higher_order_weights(w1, 2);
        const auto k = assemble_K_2d(0.0, 0.0, 1.0, 1.0, w1, w2, w1, w2);
        const double tau = 1e-3, alpha = 0.5;
        const auto rep = resolvent_norm(k, tau, alpha);
        c.require(rep.resolvent_norm <= 1.0, "resolvent above one at the defaults");

        const int dim = k.dim(), n_steps = 100;
        std::vector<double> u0(dim), pert(dim);
        for (int i = 0; i < dim; ++i) {
            u0[i] = oracles::uniform(-1, 1);
            pert[i] = oracles::uniform(-1e-3, 1e-3);
        }
        std::vector<double> u0b(dim);
        for (int i = 0; i < dim; ++i) u0b[i] = u0[i] + pert[i];
        FractionalStepper sa(k, make_temporal_weights(WeightFamily::GL1, alpha, n_steps + 1), tau,
                             u0, n_steps);
        FractionalStepper sb(k, make_temporal_weights(WeightFamily::GL1, alpha, n_steps + 1), tau,
                             u0b, n_steps);
        const std::vector<double> zero(dim, 0.0);
        double e0 = 0.0;
        for (double v : pert) e0 += v * v;
        e0 = std::sqrt(e0);
        bool ok = true;
        for (int n = 1; n <= n_steps; ++n) {
            sa.step(zero);
            sb.step(zero);
            double en = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double d = sa.history().latest()[i] - sb.history().latest()[i];
                en += d * d;
            }
            ok = ok && std::sqrt(en) <= e0 * (1.0 + 1e-12);
        }
        c.require(ok, "perturbation norm exceeded the initial defect");
    }

    c.finish();
}

// ---- Criterion 8: stability sweeps ----
void criterion8() {
    Criterion c{"C8 resolvent-norm sweeps"};
    const StabilityDefaults d;

    // Diffusion-dominant region: norm stays at or below one.
    for (double eps : {0.5, 1.0, 2.0, 4.0}) {
        for (double frac : {0.0, 0.5, 1.0}) {
            StabilityDefaults dd = d;
            dd.eps = eps;
            dd.kappa = frac * eps;
            const auto rep =
                assumption_sweep(SweepAxis::Eps, std::vector<double>{eps}, dd).front();
            c.require(rep.resolvent_norm <= 1.0 + 1e-9,
                      "norm " + fmt(rep.resolvent_norm) + " at eps=" + fmt(eps) +
                          " kappa=" + fmt(dd.kappa));
        }
    }

    // Monotone decrease as diffusivity grows.
    {
        const std::vector<double> eps{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
        const auto reports = assumption_sweep(SweepAxis::Eps, eps, d);
        for (size_t i = 0; i + 1 < reports.size(); ++i)
            c.require(reports[i + 1].resolvent_norm < reports[i].resolvent_norm,
                      "eps sweep not monotone at index " + std::to_string(i));
    }

    // Monotone decrease as the lattice refines, advection-dominant setting.
    {
        StabilityDefaults dd = d;
        dd.kappa = 500.0;
        const std::vector<double> ms{5, 8, 12, 16, 24};
        const auto reports = assumption_sweep(SweepAxis::GridSize, ms, dd);
        for (size_t i = 0; i + 1 < reports.size(); ++i)
            c.require(reports[i + 1].resolvent_norm < reports[i].resolvent_norm,
                      "grid sweep not monotone at index " + std::to_string(i));
    }

    // Vanishing time step: advection/diffusion threshold near 40.
    {
        StabilityDefaults dd = d;
        dd.tau = 1e-10;
        auto at = [&](double kappa) {
            return assumption_sweep(SweepAxis::Kappa, std::vector<double>{kappa}, dd)
                .front()
                .resolvent_norm;
        };
        double lo = 10.0, hi = 100.0;
        const bool bracket = at(lo) <= 1.0 && at(hi) > 1.0;
        c.require(bracket, "crossing not bracketed in [10,100]");
        if (bracket) {
            for (int it = 0; it < 18; ++it) {
                const double mid = 0.5 * (lo + hi);
                (at(mid) <= 1.0 ? lo : hi) = mid;
            }
            const double crossing = 0.5 * (lo + hi);
            c.require(crossing >= 30.0 && crossing <= 50.0,
                      "critical ratio " + fmt(crossing) + " outside 40 +/- 25%");
        }
    }
    c.finish();
}

} // namespace

int main() {
    std::printf("kernel backend: %s\n",
                kernels::backend_name(kernels::active_backend()));
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%s (%d criterion(s) failed)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures;
}
