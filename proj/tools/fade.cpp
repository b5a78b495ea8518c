// fade: spline differential-quadrature solver for fractional
// advection-diffusion problems.
//
// Subcommands: run, converge, stability, weights. CSV output is deterministic
// (17 significant digits) and every table carries a provenance comment line
// with the tool version and a hash of the effective configuration.

#include "fade/errors.hpp"
#include "fade/kernels.hpp"
#include "fade/problems.hpp"
#include "fade/stability.hpp"
#include "fade/steppers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// FNV-1a over the canonical (sorted) key=value representation.
std::string config_hash(std::vector<std::pair<std::string, std::string>> kv) {
    std::sort(kv.begin(), kv.end());
    unsigned long long h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [k, v] : kv) {
        mix(k);
        mix("=");
        mix(v);
        mix(";");
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

struct CsvWriter {
    std::ofstream out;
    CsvWriter(const std::filesystem::path& path, const std::string& hash) : out(path) {
        if (!out) throw std::invalid_argument("cannot open output file: " + path.string());
        out << "# fade " << kVersion << " " << hash << "\n";
    }
};

fade::WeightFamily parse_weights(const std::string& s) {
    if (s == "gl1") return fade::WeightFamily::GL1;
    if (s == "ho3") return fade::WeightFamily::HO3;
    throw std::invalid_argument("unknown weight family: " + s + " (expected gl1|ho3)");
}

fade::Scheme parse_scheme(const std::string& s) {
    if (s == "frac-implicit") return fade::Scheme::FracImplicit;
    if (s == "rk-gill") return fade::Scheme::RkGill;
    if (s == "cn-fracspace") return fade::Scheme::CnFracSpace;
    throw std::invalid_argument("unknown scheme: " + s);
}

int thread_budget(size_t points) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FADE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<size_t>(n, points));
}

struct RunOptions {
    std::string problem = "ex61";
    double alpha = 0.5;
    double beta1 = 1.1, beta2 = 1.3;
    int m = 16, mx = 0, my = 0;
    double tau = 1e-3;
    double t_end = 1.0;
    std::string weights;
    std::string scheme;
    std::string nls_init = "soliton";
    double nls_beta = 2.0;
    double domain_a = 0.0, domain_b = 0.0;
    bool domain_set = false;
    int dump_stride = 0;
    std::string out_dir = ".";
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--problem", o.problem, "Problem id (ex61..ex67)")->required();
    cmd->add_option("--alpha", o.alpha, "Temporal fractional order in (0,1]");
    cmd->add_option("--beta1", o.beta1, "Spatial fractional order, x axis");
    cmd->add_option("--beta2", o.beta2, "Spatial fractional order, y axis");
    cmd->add_option("--m", o.m, "Cells per axis (1D, or both axes when --mx/--my absent)");
    cmd->add_option("--mx", o.mx, "Cells along x");
    cmd->add_option("--my", o.my, "Cells along y");
    cmd->add_option("--tau", o.tau, "Time step");
    cmd->add_option("--t-end", o.t_end, "Final time");
    cmd->add_option("--weights", o.weights, "Temporal weight family: gl1|ho3");
    cmd->add_option("--scheme", o.scheme, "frac-implicit|rk-gill|cn-fracspace");
    cmd->add_option("--nls-init", o.nls_init, "soliton|collision");
    cmd->add_option("--nls-beta", o.nls_beta, "Cubic nonlinearity coefficient");
    auto* da = cmd->add_option("--domain-a", o.domain_a, "Domain override, left end (ex65)");
    auto* db = cmd->add_option("--domain-b", o.domain_b, "Domain override, right end (ex65)");
    cmd->add_option("--dump-stride", o.dump_stride,
                    "Write every k-th time level to solution.csv (0: final only)");
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
    cmd->callback([&o, da, db] { o.domain_set = da->count() > 0 || db->count() > 0; });
}

fade::ProblemSpec build_problem(const RunOptions& o) {
    fade::ProblemParams p;
    p.alpha = o.alpha;
    p.beta1 = o.beta1;
    p.beta2 = o.beta2;
    p.nls_beta = o.nls_beta;
    p.nls_init = o.nls_init;
    if (o.domain_set) {
        p.domain_a = o.domain_a;
        p.domain_b = o.domain_b;
    }
    return fade::make_problem(o.problem, p);
}

fade::RunConfig build_config(const RunOptions& o, const fade::ProblemSpec& prob) {
    fade::RunConfig c;
    c.mx = o.mx > 0 ? o.mx : o.m;
    c.my = o.my > 0 ? o.my : c.mx;
    c.tau = o.tau;
    c.t_end = o.t_end;
    c.dump_stride = o.dump_stride;
    c.scheme = o.scheme.empty() ? fade::default_scheme(prob) : parse_scheme(o.scheme);
    if (!o.weights.empty()) c.weights = parse_weights(o.weights);
    return c;
}

std::vector<std::pair<std::string, std::string>> run_kv(const RunOptions& o,
                                                        const std::string& cmd) {
    return {{"cmd", cmd},
            {"problem", o.problem},
            {"alpha", fmt17(o.alpha)},
            {"beta1", fmt17(o.beta1)},
            {"beta2", fmt17(o.beta2)},
            {"m", std::to_string(o.m)},
            {"mx", std::to_string(o.mx)},
            {"my", std::to_string(o.my)},
            {"tau", fmt17(o.tau)},
            {"t_end", fmt17(o.t_end)},
            {"weights", o.weights},
            {"scheme", o.scheme},
            {"nls_init", o.nls_init},
            {"nls_beta", fmt17(o.nls_beta)},
            {"dump_stride", std::to_string(o.dump_stride)}};
}

void write_solution_csv(const std::filesystem::path& path, const std::string& hash,
                        const fade::RunResult& r) {
    CsvWriter w(path, hash);
    const bool two_d = r.gy.has_value();
    const bool coupled = !r.frames.empty() && !r.frames.front().v.empty();
    w.out << "t,x" << (two_d ? ",y" : "") << ",u" << (coupled ? ",v" : "") << "\n";
    for (const auto& frame : r.frames) {
        if (two_d) {
            const int nx = r.gx.interior();
            const int ny = r.gy->interior();
            for (int j = 1; j <= ny; ++j)
                for (int i = 1; i <= nx; ++i)
                    w.out << fmt17(frame.t) << ',' << fmt17(r.gx.knot(i)) << ','
                          << fmt17(r.gy->knot(j)) << ','
                          << fmt17(frame.u[static_cast<size_t>(j - 1) * nx + (i - 1)]) << "\n";
        } else {
            for (int i = 1; i < r.gx.cells; ++i) {
                w.out << fmt17(frame.t) << ',' << fmt17(r.gx.knot(i)) << ','
                      << fmt17(frame.u[i - 1]);
                if (coupled) w.out << ',' << fmt17(frame.v[i - 1]);
                w.out << "\n";
            }
        }
    }
}

nlohmann::json error_json(const fade::ErrorReport& e) {
    nlohmann::json j;
    j["e2"] = e.e2;
    j["einf"] = e.einf;
    if (e.e_normalized) j["eN"] = *e.e_normalized;
    else j["eN"] = nullptr;
    return j;
}

int cmd_run(const RunOptions& o) {
    const fade::ProblemSpec prob = build_problem(o);
    const fade::RunConfig cfg = build_config(o, prob);
    const std::string hash = config_hash(run_kv(o, "run"));
    const fade::RunResult r = fade::run(prob, cfg);

    std::filesystem::create_directories(o.out_dir);
    write_solution_csv(std::filesystem::path(o.out_dir) / "solution.csv", hash, r);

    nlohmann::json j;
    j["problem"] = o.problem;
    j["version"] = kVersion;
    j["config_hash"] = hash;
    j["runtime_seconds"] = r.wall_seconds;
    j["steps"] = r.steps;
    if (r.errors) {
        j["errors"] = error_json(*r.errors);
        if (r.errors_im) j["errors_im"] = error_json(*r.errors_im);
    } else {
        j["errors"] = nullptr;
    }
    std::ofstream jf(std::filesystem::path(o.out_dir) / "errors.json");
    jf << j.dump(2) << "\n";
    if (r.errors)
        std::cout << "e2=" << fmt17(r.errors->e2) << " einf=" << fmt17(r.errors->einf)
                  << " runtime=" << fmt17(r.wall_seconds) << "s\n";
    else
        std::cout << "runtime=" << fmt17(r.wall_seconds) << "s (no exact solution)\n";
    return 0;
}

int cmd_converge(const RunOptions& o, const std::vector<int>& grids) {
    if (grids.empty()) throw std::invalid_argument("converge: need at least one grid");
    const fade::ProblemSpec prob = build_problem(o);
    auto kv = run_kv(o, "converge");
    std::string gl;
    for (int g : grids) gl += std::to_string(g) + ",";
    kv.emplace_back("grids", gl);
    const std::string hash = config_hash(kv);

    struct Row {
        int m;
        fade::ErrorReport e;
    };
    std::vector<Row> rows;
    for (int m : grids) {
        RunOptions oo = o;
        oo.m = m;
        oo.mx = m;
        oo.my = 0;
        const fade::RunConfig cfg = build_config(oo, prob);
        const fade::RunResult r = fade::run(prob, cfg);
        if (!r.errors)
            throw std::invalid_argument("converge: problem has no exact solution to compare against");
        rows.push_back({m, *r.errors});
    }

    std::filesystem::create_directories(o.out_dir);
    CsvWriter w(std::filesystem::path(o.out_dir) / "converge.csv", hash);
    std::ostringstream table;
    table << "M,e2,rate2,einf,rateinf\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        table << rows[i].m << ',' << fmt17(rows[i].e.e2) << ',';
        if (i > 0 && rows[i].e.e2 > 0.0 && rows[i - 1].e.e2 > 0.0)
            table << fmt17(std::log(rows[i - 1].e.e2 / rows[i].e.e2) /
                           std::log(static_cast<double>(rows[i].m) / rows[i - 1].m));
        table << ',' << fmt17(rows[i].e.einf) << ',';
        if (i > 0 && rows[i].e.einf > 0.0 && rows[i - 1].e.einf > 0.0)
            table << fmt17(std::log(rows[i - 1].e.einf / rows[i].e.einf) /
                           std::log(static_cast<double>(rows[i].m) / rows[i - 1].m));
        table << "\n";
    }
    w.out << table.str();
    std::cout << table.str();
    return 0;
}

struct StabilityOptions {
    std::string axis = "eps";
    std::vector<double> values;
    double tau = 1e-3;
    double alpha = 0.5;
    int m = 5;
    double extent = 1.0;
    double kappa = 0.0;
    double eps = 1.0;
    std::string spectrum; // "", "w1", "w2", "operator"
    std::string out_dir = ".";
};

int cmd_stability(const StabilityOptions& o) {
    fade::StabilityDefaults d;
    d.tau = o.tau;
    d.alpha = o.alpha;
    d.m = o.m;
    d.extent = o.extent;
    d.kappa = o.kappa;
    d.eps = o.eps;
    const fade::SweepAxis axis = fade::parse_sweep_axis(o.axis);

    std::vector<std::pair<std::string, std::string>> kv{
        {"cmd", "stability"}, {"axis", o.axis},     {"tau", fmt17(o.tau)},
        {"alpha", fmt17(o.alpha)}, {"m", std::to_string(o.m)}, {"extent", fmt17(o.extent)},
        {"kappa", fmt17(o.kappa)}, {"eps", fmt17(o.eps)}, {"spectrum", o.spectrum}};
    for (double v : o.values) kv.emplace_back("value", fmt17(v));
    const std::string hash = config_hash(kv);

    std::filesystem::create_directories(o.out_dir);

    if (!o.values.empty()) {
        // Sweep points are independent; FADE_THREADS caps the parallelism and
        // output order is by parameter index regardless.
        const int workers = thread_budget(o.values.size());
        std::vector<fade::StabilityReport> reports(o.values.size());
        std::atomic<size_t> next{0};
        auto work = [&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= o.values.size()) break;
                const double v = o.values[i];
                auto rep = fade::assumption_sweep(axis, std::span<const double>(&v, 1), d);
                reports[i] = rep.front();
            }
        };
        std::vector<std::future<void>> futs;
        for (int w = 1; w < workers; ++w) futs.push_back(std::async(std::launch::async, work));
        work();
        for (auto& f : futs) f.get();

        CsvWriter w(std::filesystem::path(o.out_dir) / "sweep.csv", hash);
        w.out << "param,value,resolvent_norm\n";
        for (const auto& r : reports)
            w.out << r.axis << ',' << fmt17(r.value) << ',' << fmt17(r.resolvent_norm) << "\n";
        for (const auto& r : reports)
            std::cout << r.axis << "=" << fmt17(r.value) << " -> " << fmt17(r.resolvent_norm)
                      << (r.converged ? "" : " (power iteration not converged)") << "\n";
    }

    if (!o.spectrum.empty()) {
        std::vector<std::complex<double>> spec;
        const fade::Grid g(0.0, o.extent, o.m);
        const auto w1 = fade::first_order_weights(fade::SplineFamily::CubicTrig, g);
        if (o.spectrum == "w1") {
            spec = fade::weight_spectrum(w1);
        } else if (o.spectrum == "w2") {
            spec = fade::weight_spectrum(fade::higher_order_weights(w1, 2));
        } else if (o.spectrum == "operator") {
            const auto w2 = fade::higher_order_weights(w1, 2);
            spec = fade::composed_spectrum_2d(w1, w2, w1, w2, o.kappa, o.kappa, o.eps, o.eps);
        } else {
            throw std::invalid_argument("unknown spectrum target: " + o.spectrum);
        }
        CsvWriter w(std::filesystem::path(o.out_dir) / "spectrum.csv", hash);
        w.out << "re,im\n";
        for (const auto& z : spec) w.out << fmt17(z.real()) << ',' << fmt17(z.imag()) << "\n";
    }
    return 0;
}

struct WeightsOptions {
    std::string family = "ctb";
    int order = 1;
    double beta = 0.0;
    int m = 8;
    double a = 0.0, b = 1.0;
    std::string out_dir = ".";
};

int cmd_weights(const WeightsOptions& o) {
    const fade::Grid g(o.a, o.b, o.m);
    fade::SplineFamily family;
    if (o.family == "ctb") family = fade::SplineFamily::CubicTrig;
    else if (o.family == "cubicb") family = fade::SplineFamily::CubicPoly;
    else throw std::invalid_argument("unknown family: " + o.family + " (expected ctb|cubicb)");

    fade::WeightMatrix w;
    if (o.beta > 0.0) {
        if (family != fade::SplineFamily::CubicPoly)
            throw std::invalid_argument("fractional weights require --family cubicb");
        w = fade::fractional_weights(o.beta, g);
    } else {
        w = fade::first_order_weights(family, g);
        if (o.order >= 2) w = fade::higher_order_weights(w, o.order);
        else if (o.order != 1) throw std::invalid_argument("order must be >= 1");
    }

    const std::string hash = config_hash({{"cmd", "weights"},
                                          {"family", o.family},
                                          {"order", std::to_string(o.order)},
                                          {"beta", fmt17(o.beta)},
                                          {"m", std::to_string(o.m)},
                                          {"a", fmt17(o.a)},
                                          {"b", fmt17(o.b)}});
    std::filesystem::create_directories(o.out_dir);
    CsvWriter out(std::filesystem::path(o.out_dir) / "weights.csv", hash);
    for (int i = 0; i <= o.m; ++i) {
        for (int j = 0; j <= o.m; ++j) out.out << (j ? "," : "") << fmt17(w.entries(i, j));
        out.out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spline differential-quadrature solver for fractional advection-diffusion"};
    app.set_version_flag("--version", std::string("fade ") + kVersion);
    app.set_config("--config")->configurable(false);
    app.require_subcommand(1);

    RunOptions runopt;
    auto* run = app.add_subcommand("run", "Solve one problem and write solution.csv/errors.json");
    run->configurable();
    add_run_options(run, runopt);

    RunOptions convopt;
    std::vector<int> grids;
    auto* conv = app.add_subcommand("converge", "Grid-refinement study with observed rates");
    conv->configurable();
    add_run_options(conv, convopt);
    conv->add_option("--grids", grids, "Comma-separated cell counts")->required()->delimiter(',');

    StabilityOptions stabopt;
    auto* stab = app.add_subcommand("stability", "Resolvent-norm sweeps and spectra");
    stab->configurable();
    stab->add_option("--axis", stabopt.axis, "kappa|eps|M|domain_extent|tau");
    stab->add_option("--values", stabopt.values, "Sweep values")->delimiter(',');
    stab->add_option("--tau", stabopt.tau, "Time step");
    stab->add_option("--alpha", stabopt.alpha, "Temporal order");
    stab->add_option("--m", stabopt.m, "Cells per axis");
    stab->add_option("--extent", stabopt.extent, "Square domain extent");
    stab->add_option("--kappa", stabopt.kappa, "Advection coefficient (both axes)");
    stab->add_option("--eps", stabopt.eps, "Diffusivity (both axes)");
    stab->add_option("--spectrum", stabopt.spectrum, "Also dump spectrum: w1|w2|operator");
    stab->add_option("--out-dir", stabopt.out_dir, "Output directory");

    WeightsOptions wopt;
    auto* wts = app.add_subcommand("weights", "Dump a weighted-coefficient matrix as CSV");
    wts->configurable();
    wts->add_option("--family", wopt.family, "ctb|cubicb");
    wts->add_option("--order", wopt.order, "Integer derivative order");
    wts->add_option("--beta", wopt.beta, "Fractional order (cubicb only)");
    wts->add_option("--m", wopt.m, "Cells");
    wts->add_option("--a", wopt.a, "Left endpoint");
    wts->add_option("--b", wopt.b, "Right endpoint");
    wts->add_option("--out-dir", wopt.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
        if (*run) return cmd_run(runopt);
        if (*conv) return cmd_converge(convopt, grids);
        if (*stab) return cmd_stability(stabopt);
        if (*wts) return cmd_weights(wopt);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const fade::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
