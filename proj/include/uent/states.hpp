#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "uent/linalg.hpp"

namespace uent::states {

using linalg::ComplexMatrix;
using linalg::cplx;

inline constexpr std::size_t max_pure_qubits = 10;

struct PureState {
    std::vector<std::size_t> dims;
    std::vector<cplx> amplitudes;

    std::size_t dim() const;
    double norm_sq() const;
    // Throws if the amplitude count or normalization is off.
    void validate() const;
};

struct DensityMatrix {
    std::vector<std::size_t> dims;
    ComplexMatrix matrix;

    std::size_t dim() const;
    // Hermitian within eps_herm, PSD within eps_psd, unit trace within
    // eps_trace. Throws with the offending quantity named.
    void validate() const;
    double purity() const;
};

// Five-amplitude canonical form of a three-qubit pure state.
struct SchmidtParams {
    std::array<double, 5> lambdas{};
    double phi = 0.0;

    void validate() const;  // sum lambda_i^2 == 1 within 1e-12, phi in [0, 2pi)
};

// Bipartition: `focus` is the single party A, `others` the ordered B_j's.
struct PartitionSpec {
    std::size_t focus = 0;
    std::vector<std::size_t> others;

    void validate(std::size_t n_parties) const;
};

PureState build_generalized_schmidt(const SchmidtParams& p);

PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed);

DensityMatrix ginibre_mixed(std::size_t dim, std::size_t rank, std::uint64_t seed);

DensityMatrix density(const PureState& psi);

// Partial trace over the complement of `keep` (strictly increasing indices).
DensityMatrix reduce(const PureState& psi, const std::vector<std::size_t>& keep);
DensityMatrix reduce(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

// Relabel subsystems: new subsystem i is old subsystem perm[i].
PureState permute_subsystems(const PureState& psi, const std::vector<std::size_t>& perm);
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& perm);

}  // namespace uent::states
