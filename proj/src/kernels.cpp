#include "fade/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace fade::kernels {

namespace scalar {

double dot(const double* x, const double* y, int n) {
    double s0 = 0.0, s1 = 0.0;
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
    }
    if (i < n) s0 += x[i] * y[i];
    return s0 + s1;
}

void axpy(double a, const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, int n) {
    for (int i = 0; i < n; ++i) x[i] *= a;
}

void gemv(const double* a, int rows, int cols, const double* x, double* y) {
    for (int r = 0; r < rows; ++r) {
        y[r] = dot(a + static_cast<std::ptrdiff_t>(r) * cols, x, cols);
    }
}

void weighted_sum(const double* base, std::ptrdiff_t stride,
                  const double* coeffs, int k, double* dst, int dim) {
    int r = 0;
    for (; r + 4 <= k; r += 4) {
        const double c0 = coeffs[r], c1 = coeffs[r + 1];
        const double c2 = coeffs[r + 2], c3 = coeffs[r + 3];
        const double* p0 = base + stride * r;
        const double* p1 = p0 + stride;
        const double* p2 = p1 + stride;
        const double* p3 = p2 + stride;
        for (int i = 0; i < dim; ++i)
            dst[i] += c0 * p0[i] + c1 * p1[i] + c2 * p2[i] + c3 * p3[i];
    }
    for (; r < k; ++r) axpy(coeffs[r], base + stride * r, dst, dim);
}

} // namespace scalar

// Variant tables filled in by the per-ISA translation units.
namespace avx2 {
bool available();
double dot(const double* x, const double* y, int n);
void axpy(double a, const double* x, double* y, int n);
void scal(double a, double* x, int n);
void gemv(const double* a, int rows, int cols, const double* x, double* y);
void weighted_sum(const double* base, std::ptrdiff_t stride,
                  const double* coeffs, int k, double* dst, int dim);
} // namespace avx2

namespace neon {
bool available();
double dot(const double* x, const double* y, int n);
void axpy(double a, const double* x, double* y, int n);
void scal(double a, double* x, int n);
void gemv(const double* a, int rows, int cols, const double* x, double* y);
void weighted_sum(const double* base, std::ptrdiff_t stride,
                  const double* coeffs, int k, double* dst, int dim);
} // namespace neon

namespace {

Backend detect_backend() {
    if (const char* env = std::getenv("FADE_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2::available()) return Backend::Avx2;
        if (std::strcmp(env, "neon") == 0 && neon::available()) return Backend::Neon;
        // Unknown or unsupported request: fall through to detection.
    }
    if (avx2::available()) return Backend::Avx2;
    if (neon::available()) return Backend::Neon;
    return Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{detect_backend()};
    return slot;
}

} // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return avx2::available();
        case Backend::Neon: return neon::available();
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw std::invalid_argument(std::string("kernel backend not supported on this CPU: ") +
                                    backend_name(b));
    backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

double dot(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    switch (active_backend()) {
        case Backend::Avx2: return avx2::dot(x.data(), y.data(), n);
        case Backend::Neon: return neon::dot(x.data(), y.data(), n);
        default: return scalar::dot(x.data(), y.data(), n);
    }
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const int n = static_cast<int>(x.size());
    switch (active_backend()) {
        case Backend::Avx2: avx2::axpy(a, x.data(), y.data(), n); return;
        case Backend::Neon: neon::axpy(a, x.data(), y.data(), n); return;
        default: scalar::axpy(a, x.data(), y.data(), n); return;
    }
}

void scal(double a, std::span<double> x) {
    const int n = static_cast<int>(x.size());
    switch (active_backend()) {
        case Backend::Avx2: avx2::scal(a, x.data(), n); return;
        case Backend::Neon: neon::scal(a, x.data(), n); return;
        default: scalar::scal(a, x.data(), n); return;
    }
}

void gemv(const double* a, int rows, int cols, const double* x, double* y) {
    switch (active_backend()) {
        case Backend::Avx2: avx2::gemv(a, rows, cols, x, y); return;
        case Backend::Neon: neon::gemv(a, rows, cols, x, y); return;
        default: scalar::gemv(a, rows, cols, x, y); return;
    }
}

void weighted_sum(const double* base, std::ptrdiff_t stride,
                  std::span<const double> coeffs, double* dst, int dim) {
    const int k = static_cast<int>(coeffs.size());
    switch (active_backend()) {
        case Backend::Avx2: avx2::weighted_sum(base, stride, coeffs.data(), k, dst, dim); return;
        case Backend::Neon: neon::weighted_sum(base, stride, coeffs.data(), k, dst, dim); return;
        default: scalar::weighted_sum(base, stride, coeffs.data(), k, dst, dim); return;
    }
}

} // namespace fade::kernels
