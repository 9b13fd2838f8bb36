#pragma once

#include "uent/kernels.hpp"

namespace uent::kernels::detail {

struct Ops {
    void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
    void (*scal)(cplx, cplx*, std::size_t);
    cplx (*dotc)(const cplx*, const cplx*, std::size_t);
    double (*norm2sq)(const cplx*, std::size_t);
};

extern const Ops scalar_ops;

#if defined(UENT_HAVE_AVX2)
extern const Ops avx2_ops;
bool cpu_has_avx2();
#endif

}  // namespace uent::kernels::detail
