#include "uent/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "uent/rng.hpp"

namespace uent::states {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) p *= d;
    return p;
}

// Composite row-major strides per subsystem.
std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
    return s;
}

}  // namespace

std::size_t PureState::dim() const { return product(dims); }

double PureState::norm_sq() const {
    return kernels::norm2sq(amplitudes.data(), amplitudes.size());
}

void PureState::validate() const {
    if (amplitudes.size() != dim())
        throw std::invalid_argument("pure state: amplitude count does not match dims");
    for (const cplx& a : amplitudes)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("pure state: non-finite amplitude");
    const double n = norm_sq();
    if (std::abs(n - 1.0) > 1e-10)
        throw std::invalid_argument("pure state: squared norm deviates from 1 by " +
                                    std::to_string(n - 1.0));
}

std::size_t DensityMatrix::dim() const { return product(dims); }

double DensityMatrix::purity() const {
    double acc = 0.0;
    const std::size_t n = matrix.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += std::norm(matrix(i, j));
    return acc;
}

void DensityMatrix::validate() const {
    if (matrix.rows() != matrix.cols()) throw std::invalid_argument("density matrix: not square");
    if (matrix.rows() != dim())
        throw std::invalid_argument("density matrix: dims do not match matrix size");
    if (!matrix.all_finite()) throw std::invalid_argument("density matrix: non-finite entries");
    const double herm = matrix.hermiticity_defect();
    if (herm > linalg::eps_herm)
        throw std::invalid_argument("density matrix: hermiticity defect " + std::to_string(herm));
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > linalg::eps_trace)
        throw std::invalid_argument("density matrix: trace deviates from 1 by " +
                                    std::to_string(tr - 1.0));
    const auto es = linalg::hermitian_eigensystem(matrix);
    const double lo = es.spectrum.values.back();
    if (lo < -linalg::eps_psd)
        throw std::invalid_argument("density matrix: negative eigenvalue " + std::to_string(lo));
}

void SchmidtParams::validate() const {
    double s = 0.0;
    for (double l : lambdas) {
        if (l < 0.0) throw std::invalid_argument("schmidt params: negative coefficient");
        s += l * l;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw std::invalid_argument("schmidt params: squared coefficients sum to " +
                                    std::to_string(s));
    if (phi < 0.0 || phi >= 2.0 * std::numbers::pi)
        throw std::invalid_argument("schmidt params: phase outside [0, 2pi)");
}

void PartitionSpec::validate(std::size_t n_parties) const {
    if (others.empty()) throw std::invalid_argument("partition: no B parties");
    std::vector<std::size_t> all = others;
    all.push_back(focus);
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("partition: duplicate party index");
    if (all.back() >= n_parties) throw std::invalid_argument("partition: party index out of range");
}

PureState build_generalized_schmidt(const SchmidtParams& p) {
    p.validate();
    PureState psi;
    psi.dims = {2, 2, 2};
    psi.amplitudes.assign(8, 0.0);
    psi.amplitudes[0] = p.lambdas[0];                                    // |000>
    psi.amplitudes[4] = p.lambdas[1] * std::polar(1.0, p.phi);           // |100>
    psi.amplitudes[5] = p.lambdas[2];                                    // |101>
    psi.amplitudes[6] = p.lambdas[3];                                    // |110>
    psi.amplitudes[7] = p.lambdas[4];                                    // |111>
    psi.validate();
    return psi;
}

PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed) {
    if (n_qubits == 0 || n_qubits > max_pure_qubits)
        throw std::length_error("haar_random_pure: qubit count outside [1, " +
                                std::to_string(max_pure_qubits) + "]");
    rng::Xoshiro256 gen(seed);
    rng::NormalSampler normal(gen);
    PureState psi;
    psi.dims.assign(n_qubits, 2);
    psi.amplitudes.resize(std::size_t{1} << n_qubits);
    for (cplx& a : psi.amplitudes) a = cplx(normal(), normal());
    const double inv = 1.0 / std::sqrt(kernels::norm2sq(psi.amplitudes.data(), psi.amplitudes.size()));
    kernels::scal(inv, psi.amplitudes.data(), psi.amplitudes.size());
    return psi;
}

DensityMatrix ginibre_mixed(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim) throw std::invalid_argument("ginibre_mixed: rank out of range");
    if (dim > linalg::max_dim) throw std::length_error("ginibre_mixed: dimension too large");
    rng::Xoshiro256 gen(seed);
    rng::NormalSampler normal(gen);
    ComplexMatrix g(dim, rank);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = cplx(normal(), normal());
    ComplexMatrix rho(dim, dim);
    kernels::matmul_nh(g.data(), g.data(), rho.data(), dim, rank, dim);
    const double tr = rho.trace().real();
    kernels::scal(1.0 / tr, rho.data(), dim * dim);
    // Exact Hermitian symmetrization; matmul_nh leaves rounding asymmetry.
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx m = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = m;
            rho(j, i) = std::conj(m);
        }
    for (std::size_t i = 0; i < dim; ++i) rho(i, i) = cplx(rho(i, i).real(), 0.0);

    DensityMatrix out;
    out.dims = {dim};
    out.matrix = std::move(rho);
    return out;
}

DensityMatrix density(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rho(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    DensityMatrix out;
    out.dims = psi.dims;
    out.matrix = std::move(rho);
    return out;
}

DensityMatrix reduce(const PureState& psi, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw std::invalid_argument("reduce: keep set is empty");
    for (std::size_t i = 0; i + 1 < keep.size(); ++i)
        if (keep[i] >= keep[i + 1])
            throw std::invalid_argument("reduce: keep indices not strictly increasing");
    if (keep.back() >= psi.dims.size()) throw std::invalid_argument("reduce: keep index out of range");

    // Reorder amplitudes into a (kept x traced) matrix, then take its Gram
    // matrix: rho_keep = M M^dagger.
    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < psi.dims.size(); ++i)
        if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

    const auto str = strides(psi.dims);
    std::size_t keep_dim = 1, traced_dim = 1;
    for (std::size_t i : keep) keep_dim *= psi.dims[i];
    for (std::size_t i : traced) traced_dim *= psi.dims[i];

    auto offsets = [&](const std::vector<std::size_t>& subsys, std::size_t count) {
        std::vector<std::size_t> out(count, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::size_t rem = flat, off = 0;
            for (std::size_t i = subsys.size(); i-- > 0;) {
                const std::size_t d = psi.dims[subsys[i]];
                off += (rem % d) * str[subsys[i]];
                rem /= d;
            }
            out[flat] = off;
        }
        return out;
    };
    const auto keep_off = offsets(keep, keep_dim);
    const auto traced_off = offsets(traced, traced_dim);

    std::vector<cplx> m(keep_dim * traced_dim);
    for (std::size_t i = 0; i < keep_dim; ++i)
        for (std::size_t t = 0; t < traced_dim; ++t)
            m[i * traced_dim + t] = psi.amplitudes[keep_off[i] + traced_off[t]];

    ComplexMatrix rho(keep_dim, keep_dim);
    kernels::matmul_nh(m.data(), m.data(), rho.data(), keep_dim, traced_dim, keep_dim);

    DensityMatrix out;
    for (std::size_t i : keep) out.dims.push_back(psi.dims[i]);
    out.matrix = std::move(rho);
    return out;
}

DensityMatrix reduce(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    DensityMatrix out;
    out.matrix = linalg::partial_trace(rho.matrix, rho.dims, keep);
    for (std::size_t i : keep) out.dims.push_back(rho.dims[i]);
    return out;
}

PureState permute_subsystems(const PureState& psi, const std::vector<std::size_t>& perm) {
    if (perm.size() != psi.dims.size())
        throw std::invalid_argument("permute_subsystems: permutation size mismatch");
    std::vector<std::size_t> new_dims(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) new_dims[i] = psi.dims[perm[i]];

    const auto old_str = strides(psi.dims);
    const auto new_str = strides(new_dims);
    PureState out;
    out.dims = new_dims;
    out.amplitudes.resize(psi.amplitudes.size());
    const std::size_t d = psi.dim();
    for (std::size_t idx = 0; idx < d; ++idx) {
        std::size_t rem = idx, old_idx = 0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const std::size_t digit = rem / new_str[i];
            rem %= new_str[i];
            old_idx += digit * old_str[perm[i]];
        }
        out.amplitudes[idx] = psi.amplitudes[old_idx];
    }
    return out;
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& perm) {
    if (perm.size() != rho.dims.size())
        throw std::invalid_argument("permute_subsystems: permutation size mismatch");
    std::vector<std::size_t> new_dims(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) new_dims[i] = rho.dims[perm[i]];

    const auto old_str = strides(rho.dims);
    const auto new_str = strides(new_dims);
    const std::size_t d = rho.dim();
    std::vector<std::size_t> map(d);
    for (std::size_t idx = 0; idx < d; ++idx) {
        std::size_t rem = idx, old_idx = 0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const std::size_t digit = rem / new_str[i];
            rem %= new_str[i];
            old_idx += digit * old_str[perm[i]];
        }
        map[idx] = old_idx;
    }
    DensityMatrix out;
    out.dims = new_dims;
    out.matrix = ComplexMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out.matrix(i, j) = rho.matrix(map[i], map[j]);
    return out;
}

}  // namespace uent::states
