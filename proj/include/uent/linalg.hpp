#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "uent/kernels.hpp"

namespace uent::linalg {

using cplx = std::complex<double>;

// Input tolerances.
inline constexpr double eps_herm = 1e-9;
inline constexpr double eps_psd = 1e-9;
inline constexpr double eps_trace = 1e-9;
// Output tolerances.
inline constexpr double eps_eig = 1e-10;
inline constexpr double eps_orth = 1e-10;
// Hilbert-space dimension cap.
inline constexpr std::size_t max_dim = 1024;

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    cplx trace() const;
    ComplexMatrix adjoint() const;
    bool all_finite() const;

    // max_ij |a_ij - conj(a_ji)|
    double hermiticity_defect() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Real eigenvalues sorted descending.
struct Spectrum {
    std::vector<double> values;

    double sum() const;
    // Validates the density-spectrum invariants (values >= -eps_psd, sum
    // within eps_trace of 1), clips to [0, 1] and renormalizes to unit sum.
    std::vector<double> clipped_density() const;
};

struct Eigensystem {
    Spectrum spectrum;
    ComplexMatrix vectors;  // column j is the eigenvector of spectrum.values[j]
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// dims: per-subsystem dimensions in tensor order; keep: strictly increasing
// subsystem indices retained in the output.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

Eigensystem hermitian_eigensystem(const ComplexMatrix& h);

ComplexMatrix hermitian_sqrt(const ComplexMatrix& h);

// Cyclic Jacobi on a Hermitian matrix given as a raw row-major n x n buffer.
// `a` is destroyed, `v` receives the eigenvector columns, `evals` the
// unsorted eigenvalues. No allocation; usable from hot loops.
void jacobi_hermitian(cplx* a, cplx* v, double* evals, std::size_t n);

}  // namespace uent::linalg
