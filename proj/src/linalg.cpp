#include "uent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uent::linalg {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double ComplexMatrix::hermiticity_defect() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

double Spectrum::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

std::vector<double> Spectrum::clipped_density() const {
    for (double v : values) {
        if (v < -eps_psd) throw std::domain_error("spectrum has a negative eigenvalue beyond tolerance");
    }
    const double total = sum();
    if (std::abs(total - 1.0) > eps_trace) throw std::domain_error("spectrum trace differs from 1 beyond tolerance");
    std::vector<double> out(values.size());
    double clipped_sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = std::clamp(values[i], 0.0, 1.0);
        clipped_sum += out[i];
    }
    for (double& v : out) v /= clipped_sum;
    return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim)
        throw std::length_error("tensor_product: dimension overflow beyond configured maximum");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const cplx f = a(i1, j1);
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
                cplx* dst = out.data() + (i1 * b.rows() + i2) * out.cols() + j1 * b.cols();
                const cplx* src = b.data() + i2 * b.cols();
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2) dst[j2] = f * src[j2];
            }
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("partial_trace: matrix not square");
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (total != rho.rows()) throw std::invalid_argument("partial_trace: dims do not match matrix size");
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    for (std::size_t i = 0; i + 1 < keep.size(); ++i)
        if (keep[i] >= keep[i + 1]) throw std::invalid_argument("partial_trace: keep indices not strictly increasing");
    if (keep.back() >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");

    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

    // Row-major strides of each subsystem index within the composite index.
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

    std::size_t keep_dim = 1, traced_dim = 1;
    for (std::size_t i : keep) keep_dim *= dims[i];
    for (std::size_t i : traced) traced_dim *= dims[i];

    // Composite offset of each kept (resp. traced) multi-index.
    auto offsets = [&](const std::vector<std::size_t>& subsys, std::size_t count) {
        std::vector<std::size_t> out(count, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::size_t rem = flat, off = 0;
            for (std::size_t i = subsys.size(); i-- > 0;) {
                const std::size_t d = dims[subsys[i]];
                off += (rem % d) * stride[subsys[i]];
                rem /= d;
            }
            out[flat] = off;
        }
        return out;
    };
    const std::vector<std::size_t> keep_off = offsets(keep, keep_dim);
    const std::vector<std::size_t> traced_off = offsets(traced, traced_dim);

    ComplexMatrix out(keep_dim, keep_dim);
    for (std::size_t i = 0; i < keep_dim; ++i)
        for (std::size_t j = 0; j < keep_dim; ++j) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t) {
                acc += rho(keep_off[i] + traced_off[t], keep_off[j] + traced_off[t]);
            }
            out(i, j) = acc;
        }
    return out;
}

void jacobi_hermitian(cplx* a, cplx* v, double* evals, std::size_t n) {
    // v starts as identity; rotations accumulate into it.
    for (std::size_t i = 0; i < n * n; ++i) v[i] = 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(at(i, i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
    if (scale == 0.0) {
        for (std::size_t i = 0; i < n; ++i) evals[i] = 0.0;
        return;
    }
    const double stop = 1e-15 * scale;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = at(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop) continue;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const cplx phase = apq / mag;

                const double tau = (app - aqq) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = std::conj(phase) * (t * c);

                // Columns p,q of A and V: col_p' = c*col_p + s*col_q,
                // col_q' = -conj(s)*col_p + c*col_q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp + s * akq;
                    at(k, q) = -std::conj(s) * akp + c * akq;
                    const cplx vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp + s * vkq;
                    v[k * n + q] = -std::conj(s) * vkp + c * vkq;
                }
                // Rows p,q: row_p' = c*row_p + conj(s)*row_q,
                // row_q' = -s*row_p + c*row_q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk + std::conj(s) * aqk;
                    at(q, k) = -s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                at(p, p) = cplx(at(p, p).real(), 0.0);
                at(q, q) = cplx(at(q, q).real(), 0.0);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) evals[i] = at(i, i).real();
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    if (!h.all_finite()) throw std::invalid_argument("hermitian_eigensystem: non-finite entries");
    if (h.hermiticity_defect() > eps_herm)
        throw std::invalid_argument("hermitian_eigensystem: input not Hermitian within tolerance");

    const std::size_t n = h.rows();
    ComplexMatrix work(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            work(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    ComplexMatrix vecs(n, n);
    std::vector<double> evals(n);
    jacobi_hermitian(work.data(), vecs.data(), evals.data(), n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return evals[i] > evals[j]; });

    Eigensystem out;
    out.spectrum.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.spectrum.values[j] = evals[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vecs(i, order[j]);
    }
    return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& h) {
    Eigensystem es = hermitian_eigensystem(h);
    const std::size_t n = h.rows();
    for (double v : es.spectrum.values) {
        if (v < -eps_psd) throw std::domain_error("hermitian_sqrt: negative eigenvalue beyond tolerance");
    }
    // V * diag(sqrt(clipped)) * V^dagger
    ComplexMatrix scaled = es.vectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = std::sqrt(std::max(es.spectrum.values[j], 0.0));
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= r;
    }
    ComplexMatrix out(n, n);
    kernels::matmul_nh(scaled.data(), es.vectors.data(), out.data(), n, n, n);
    return out;
}

}  // namespace uent::linalg
