#include "fade/linalg.hpp"

#include "fade/errors.hpp"
#include "fade/kernels.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace fade {

void DenseMatrix::apply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
        throw std::invalid_argument("DenseMatrix::apply: dimension mismatch");
    kernels::gemv(d_.data(), rows_, cols_, x.data(), y.data());
}

bool TridiagonalSystem::strictly_diagonally_dominant() const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        const double lo = i > 0 ? std::abs(lower[i - 1]) : 0.0;
        const double up = i + 1 < n ? std::abs(upper[i]) : 0.0;
        if (!(std::abs(diag[i]) > lo + up)) return false;
    }
    return true;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs) {
    const int n = sys.size();
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("thomas_solve: rhs size mismatch");
    if (static_cast<int>(sys.lower.size()) != n - 1 || static_cast<int>(sys.upper.size()) != n - 1)
        throw std::invalid_argument("thomas_solve: band size mismatch");

    std::vector<double> c(n - 1), x(rhs.begin(), rhs.end());
    double piv = sys.diag[0];
    if (piv == 0.0) throw NumericalError("thomas_solve: zero pivot at index 0");
    if (n > 1) c[0] = sys.upper[0] / piv;
    x[0] /= piv;
    for (int i = 1; i < n; ++i) {
        piv = sys.diag[i] - sys.lower[i - 1] * c[i - 1];
        if (piv == 0.0)
            throw NumericalError("thomas_solve: zero pivot at index " + std::to_string(i));
        if (i < n - 1) c[i] = sys.upper[i] / piv;
        x[i] = (x[i] - sys.lower[i - 1] * x[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
    return x;
}

// The row-major buffer of A is reinterpreted as a column-major view of A^T and
// factored in place, so no transposed copy is ever made: solves of A go
// through the transposed factorization and vice versa.
struct LuSolver::Impl {
    DenseMatrix storage;
    Eigen::Map<Eigen::MatrixXd> map;
    Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu;

    explicit Impl(DenseMatrix m)
        : storage(std::move(m)),
          map(storage.data(), storage.cols(), storage.rows()),
          lu(map) {}
};

LuSolver::LuSolver(DenseMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("LuSolver: matrix must be square");
    if (m.rows() == 0) throw std::invalid_argument("LuSolver: empty matrix");
    impl_ = std::make_unique<Impl>(std::move(m));
    const auto diag = impl_->lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (diag[i] == 0.0 || !std::isfinite(diag[i]))
            throw NumericalError("LuSolver: singular system (zero pivot in factorization)");
    }
}

LuSolver::~LuSolver() = default;
LuSolver::LuSolver(LuSolver&&) noexcept = default;
LuSolver& LuSolver::operator=(LuSolver&&) noexcept = default;

int LuSolver::dim() const { return static_cast<int>(impl_->map.rows()); }

void LuSolver::solve_inplace(std::span<double> b) const {
    if (static_cast<int>(b.size()) != dim())
        throw std::invalid_argument("LuSolver::solve: size mismatch");
    Eigen::Map<Eigen::VectorXd> v(b.data(), b.size());
    v = impl_->lu.transpose().solve(v);
}

void LuSolver::solve_transpose_inplace(std::span<double> b) const {
    if (static_cast<int>(b.size()) != dim())
        throw std::invalid_argument("LuSolver::solve_transpose: size mismatch");
    Eigen::Map<Eigen::VectorXd> v(b.data(), b.size());
    v = impl_->lu.solve(v);
}

std::vector<std::complex<double>> eigenvalues(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    Eigen::MatrixXd em = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                        Eigen::RowMajor>>(m.data(), m.rows(), m.cols());
    Eigen::EigenSolver<Eigen::MatrixXd> solver(em, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigenvalues: QR iteration did not converge");
    std::vector<std::complex<double>> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

PowerIterationResult inverse_spectral_norm(const LuSolver& lu, double tol, int max_iterations) {
    const int n = lu.dim();
    std::vector<double> v(n);
    // Deterministic quasi-random start vector.
    double seed = 0.5;
    for (int i = 0; i < n; ++i) {
        seed = std::fmod(seed * 997.0 + 3.14159, 1.0);
        v[i] = seed - 0.5;
    }
    auto normalize = [&](std::vector<double>& w) {
        double s = std::sqrt(kernels::dot(w, w));
        if (!(s > 0.0) || !std::isfinite(s))
            throw NumericalError("inverse_spectral_norm: breakdown in power iteration");
        kernels::scal(1.0 / s, w);
        return s;
    };
    normalize(v);

    PowerIterationResult res;
    double lambda = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        lu.solve_transpose_inplace(v);
        lu.solve_inplace(v);
        const double nlam = normalize(v); // approximates sigma_max(A^{-1})^2
        res.iterations = it;
        if (it > 1 && std::abs(nlam - lambda) <= tol * std::abs(nlam)) {
            res.converged = true;
            lambda = nlam;
            break;
        }
        lambda = nlam;
    }
    res.value = std::sqrt(lambda);
    return res;
}

} // namespace fade
