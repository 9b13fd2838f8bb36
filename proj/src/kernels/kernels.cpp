#include "kernels_impl.hpp"

#include <atomic>
#include <cstring>

namespace uent::kernels {

namespace {

using detail::Ops;

const Ops* detect() {
#if defined(UENT_HAVE_AVX2)
    if (detail::cpu_has_avx2()) return &detail::avx2_ops;
#endif
    return &detail::scalar_ops;
}

std::atomic<const Ops*> g_ops{detect()};

Backend backend_of(const Ops* ops) {
#if defined(UENT_HAVE_AVX2)
    if (ops == &detail::avx2_ops) return Backend::avx2;
#endif
    (void)ops;
    return Backend::scalar;
}

}  // namespace

Backend active_backend() { return backend_of(g_ops.load(std::memory_order_relaxed)); }

std::string_view backend_name() {
    switch (active_backend()) {
        case Backend::avx2: return "avx2";
        case Backend::scalar: return "scalar";
    }
    return "scalar";
}

bool set_backend(Backend b) {
    if (b == Backend::scalar) {
        g_ops.store(&detail::scalar_ops, std::memory_order_relaxed);
        return true;
    }
#if defined(UENT_HAVE_AVX2)
    if (b == Backend::avx2 && detail::cpu_has_avx2()) {
        g_ops.store(&detail::avx2_ops, std::memory_order_relaxed);
        return true;
    }
#endif
    return false;
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    g_ops.load(std::memory_order_relaxed)->axpy(a, x, y, n);
}

void scal(cplx a, cplx* x, std::size_t n) {
    g_ops.load(std::memory_order_relaxed)->scal(a, x, n);
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
    return g_ops.load(std::memory_order_relaxed)->dotc(x, y, n);
}

double norm2sq(const cplx* x, std::size_t n) {
    return g_ops.load(std::memory_order_relaxed)->norm2sq(x, n);
}

void matmul(const cplx* a, const cplx* b, cplx* c,
            std::size_t m, std::size_t k, std::size_t n) {
    std::memset(c, 0, sizeof(cplx) * m * n);
    const Ops* ops = g_ops.load(std::memory_order_relaxed);
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        const cplx* arow = a + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            ops->axpy(arow[l], b + l * n, crow, n);
        }
    }
}

void matmul_nh(const cplx* a, const cplx* b, cplx* c,
               std::size_t m, std::size_t k, std::size_t n) {
    const Ops* ops = g_ops.load(std::memory_order_relaxed);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        cplx* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            // conj(dotc(a_row, b_row)) == sum_l a[i][l] * conj(b[j][l])
            crow[j] = std::conj(ops->dotc(arow, b + j * k, k));
        }
    }
}

}  // namespace uent::kernels
