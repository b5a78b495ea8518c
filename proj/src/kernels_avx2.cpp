// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64; dispatch guarantees the code only runs on CPUs
// that report both features.

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define FADE_X86 1
#else
#define FADE_X86 0
#endif

#if FADE_X86
#include <immintrin.h>
#endif

namespace fade::kernels::avx2 {

#if FADE_X86

bool available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {
inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
} // namespace

double dot(const double* x, const double* y, int n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, int n) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, int n) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
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
        const __m256d c0 = _mm256_set1_pd(coeffs[r]);
        const __m256d c1 = _mm256_set1_pd(coeffs[r + 1]);
        const __m256d c2 = _mm256_set1_pd(coeffs[r + 2]);
        const __m256d c3 = _mm256_set1_pd(coeffs[r + 3]);
        const double* p0 = base + stride * r;
        const double* p1 = p0 + stride;
        const double* p2 = p1 + stride;
        const double* p3 = p2 + stride;
        int i = 0;
        for (; i + 4 <= dim; i += 4) {
            __m256d acc = _mm256_loadu_pd(dst + i);
            acc = _mm256_fmadd_pd(c0, _mm256_loadu_pd(p0 + i), acc);
            acc = _mm256_fmadd_pd(c1, _mm256_loadu_pd(p1 + i), acc);
            acc = _mm256_fmadd_pd(c2, _mm256_loadu_pd(p2 + i), acc);
            acc = _mm256_fmadd_pd(c3, _mm256_loadu_pd(p3 + i), acc);
            _mm256_storeu_pd(dst + i, acc);
        }
        for (; i < dim; ++i)
            dst[i] += coeffs[r] * p0[i] + coeffs[r + 1] * p1[i] +
                      coeffs[r + 2] * p2[i] + coeffs[r + 3] * p3[i];
    }
    for (; r < k; ++r) axpy(coeffs[r], base + stride * r, dst, dim);
}

#else // !FADE_X86

bool available() { return false; }
double dot(const double*, const double*, int) { return 0.0; }
void axpy(double, const double*, double*, int) {}
void scal(double, double*, int) {}
void gemv(const double*, int, int, const double*, double*) {}
void weighted_sum(const double*, std::ptrdiff_t, const double*, int, double*, int) {}

#endif

} // namespace fade::kernels::avx2
