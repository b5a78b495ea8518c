// NEON kernel variants for aarch64 (2 doubles per vector).

#include <cstddef>

#if defined(__aarch64__) || defined(_M_ARM64)
#define FADE_AARCH64 1
#else
#define FADE_AARCH64 0
#endif

#if FADE_AARCH64
#include <arm_neon.h>
#endif

namespace fade::kernels::neon {

#if FADE_AARCH64

bool available() { return true; } // NEON is baseline on aarch64

double dot(const double* x, const double* y, int n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    for (; i + 2 <= n; i += 2)
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, int n) {
    const float64x2_t va = vdupq_n_f64(a);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, int n) {
    const float64x2_t va = vdupq_n_f64(a);
    int i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void gemv(const double* a, int rows, int cols, const double* x, double* y) {
    for (int r = 0; r < rows; ++r)
        y[r] = dot(a + static_cast<std::ptrdiff_t>(r) * cols, x, cols);
}

void weighted_sum(const double* base, std::ptrdiff_t stride,
                  const double* coeffs, int k, double* dst, int dim) {
    int r = 0;
    for (; r + 4 <= k; r += 4) {
        const float64x2_t c0 = vdupq_n_f64(coeffs[r]);
        const float64x2_t c1 = vdupq_n_f64(coeffs[r + 1]);
        const float64x2_t c2 = vdupq_n_f64(coeffs[r + 2]);
        const float64x2_t c3 = vdupq_n_f64(coeffs[r + 3]);
        const double* p0 = base + stride * r;
        const double* p1 = p0 + stride;
        const double* p2 = p1 + stride;
        const double* p3 = p2 + stride;
        int i = 0;
        for (; i + 2 <= dim; i += 2) {
            float64x2_t acc = vld1q_f64(dst + i);
            acc = vfmaq_f64(acc, c0, vld1q_f64(p0 + i));
            acc = vfmaq_f64(acc, c1, vld1q_f64(p1 + i));
            acc = vfmaq_f64(acc, c2, vld1q_f64(p2 + i));
            acc = vfmaq_f64(acc, c3, vld1q_f64(p3 + i));
            vst1q_f64(dst + i, acc);
        }
        for (; i < dim; ++i)
            dst[i] += coeffs[r] * p0[i] + coeffs[r + 1] * p1[i] +
                      coeffs[r + 2] * p2[i] + coeffs[r + 3] * p3[i];
    }
    for (; r < k; ++r) axpy(coeffs[r], base + stride * r, dst, dim);
}

#else // !FADE_AARCH64

bool available() { return false; }
double dot(const double*, const double*, int) { return 0.0; }
void axpy(double, const double*, double*, int) {}
void scal(double, double*, int) {}
void gemv(const double*, int, int, const double*, double*) {}
void weighted_sum(const double*, std::ptrdiff_t, const double*, int, double*, int) {}

#endif

} // namespace fade::kernels::neon
