#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops used by the steppers and norm calculators.
// Every kernel has a scalar reference implementation plus AVX2 (x86-64) and
// NEON (aarch64) variants; the backend is picked once at runtime from CPU
// capabilities and can be overridden via set_backend() or the FADE_KERNELS
// environment variable (scalar|avx2|neon). All variants are equivalence-tested
// against the scalar reference.
namespace fade::kernels {

enum class Backend { Scalar, Avx2, Neon };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_supported(Backend b);
// Throws std::invalid_argument if the CPU cannot run the requested backend.
void set_backend(Backend b);

double dot(std::span<const double> x, std::span<const double> y);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

// x *= a
void scal(double a, std::span<double> x);

// y = A x for a row-major dense matrix A (rows x cols).
void gemv(const double* a, int rows, int cols, const double* x, double* y);

// dst += sum_k coeffs[k] * row_k where row_k = base + k*stride (dim doubles).
// This is the fractional-memory accumulation loop.
void weighted_sum(const double* base, std::ptrdiff_t stride,
                  std::span<const double> coeffs, double* dst, int dim);

// Reference implementations (always available; used by the equivalence tests).
namespace scalar {
double dot(const double* x, const double* y, int n);
void axpy(double a, const double* x, double* y, int n);
void scal(double a, double* x, int n);
void gemv(const double* a, int rows, int cols, const double* x, double* y);
void weighted_sum(const double* base, std::ptrdiff_t stride,
                  const double* coeffs, int k, double* dst, int dim);
} // namespace scalar

} // namespace fade::kernels
