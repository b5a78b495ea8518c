#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace fade {

// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, 0.0) {}

    double& operator()(int r, int c) { return d_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return d_[static_cast<size_t>(r) * cols_ + c]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }
    std::span<double> row(int r) { return {d_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)}; }
    std::span<const double> row(int r) const { return {d_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)}; }

    // y = this * x
    void apply(std::span<const double> x, std::span<double> y) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

// Tridiagonal system: diag has n entries, lower/upper have n-1.
struct TridiagonalSystem {
    std::vector<double> lower, diag, upper;

    int size() const { return static_cast<int>(diag.size()); }
    bool strictly_diagonally_dominant() const;
};

// Thomas elimination; O(n). Throws NumericalError with the pivot index on a
// zero pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs);

// Dense LU with partial pivoting, factored once at construction and reused
// across solves. The matrix is consumed (factorization happens in place).
class LuSolver {
public:
    explicit LuSolver(DenseMatrix m);
    ~LuSolver();
    LuSolver(LuSolver&&) noexcept;
    LuSolver& operator=(LuSolver&&) noexcept;

    int dim() const;
    void solve_inplace(std::span<double> b) const;           // A x = b
    void solve_transpose_inplace(std::span<double> b) const; // A^T x = b

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// All eigenvalues of a (generally nonsymmetric) dense matrix.
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& m);

struct PowerIterationResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Largest singular value of A^{-1} via power iteration on A^{-1} A^{-T},
// using the factorization's triangular solves only.
PowerIterationResult inverse_spectral_norm(const LuSolver& lu, double tol = 1e-10,
                                           int max_iterations = 10000);

} // namespace fade
