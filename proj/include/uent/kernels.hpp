#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Complex double-precision array kernels used by the dense linear algebra
// and the convex-roof objective. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant; the active backend is
// picked once at startup from CPU capabilities and can be overridden for
// equivalence testing.
namespace uent::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string_view backend_name();

// Returns false (and leaves the backend unchanged) if the requested backend
// is not supported on this CPU.
bool set_backend(Backend b);

// y[i] += a * x[i]
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);

// x[i] *= a
void scal(cplx a, cplx* x, std::size_t n);

// sum_i conj(x[i]) * y[i]
cplx dotc(const cplx* x, const cplx* y, std::size_t n);

// sum_i |x[i]|^2
double norm2sq(const cplx* x, std::size_t n);

// Row-major C (m x n) = A (m x k) * B (k x n). C must not alias A or B.
void matmul(const cplx* a, const cplx* b, cplx* c,
            std::size_t m, std::size_t k, std::size_t n);

// Row-major C (m x n) = A (m x k) * B^dagger with B given as n x k.
// C must not alias A or B.
void matmul_nh(const cplx* a, const cplx* b, cplx* c,
               std::size_t m, std::size_t k, std::size_t n);

}  // namespace uent::kernels
