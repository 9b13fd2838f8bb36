#include "kernels_impl.hpp"

#if defined(UENT_HAVE_AVX2)

#include <immintrin.h>

namespace uent::kernels::detail {

namespace {

// Two complex doubles per __m256d, lanes [re0, im0, re1, im1].

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (ar + i*ai) * v for each complex lane pair.
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
    const __m256d swapped = _mm256_permute_pd(v, 0x5);
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        yv = _mm256_add_pd(yv, cmul(ar, ai, xv));
        _mm256_storeu_pd(ys + 2 * i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(cplx a, cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    double* xs = reinterpret_cast<double*>(x);
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        _mm256_storeu_pd(xs + 2 * i, cmul(ar, ai, xv));
    }
    for (; i < n; ++i) x[i] *= a;
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
    // re = sum xr*yr + xi*yi, lanes of x*y
    // im = sum xr*yi - xi*yr, lanes of x*swap(y) with odd lanes negated
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        const __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc_im);
    }
    const __m256d odd_neg = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    double re = hsum(acc_re);
    double im = hsum(_mm256_xor_pd(acc_im, odd_neg));
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

double norm2sq_avx2(const cplx* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const double* xs = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return out;
}

}  // namespace

const Ops avx2_ops = {axpy_avx2, scal_avx2, dotc_avx2, norm2sq_avx2};

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace uent::kernels::detail

#endif  // UENT_HAVE_AVX2
