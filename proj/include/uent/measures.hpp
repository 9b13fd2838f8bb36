#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uent/entropy.hpp"
#include "uent/states.hpp"

namespace uent::measures {

// Settings for the convex-roof search over pure-state decompositions.
struct RoofOptions {
    int restarts = 32;
    int max_iterations = 2000;        // per Nelder-Mead run
    int polish_rounds = 8;            // simplex re-inits per restart
    double simplex_tolerance = 1e-10;
    double restart_agreement = 1e-6;  // best-two spread for converged=true
    int ensemble_multiplier = 1;      // ensemble size = multiplier * rank^2 (<= 4)
    int threads = 1;                  // concurrent restarts
    std::uint64_t seed = 0x75656e74u;
    bool allow_fast_path = true;
};

struct DecompositionEnsemble {
    std::vector<double> weights;
    std::vector<states::PureState> members;

    // max-norm error of sum_i w_i |psi_i><psi_i| against rho
    double reconstruction_error(const states::DensityMatrix& rho) const;
};

struct RoofResult {
    double value = 0.0;
    DecompositionEnsemble ensemble;
    bool converged = false;
    int restarts_used = 0;
    double restart_spread = 0.0;
};

enum class RoofDirection { minimize, maximize };

// Entanglement of a pure state across the partition: entropy of the reduced
// state on the focus side.
double pure_state_ue(const states::PureState& psi, const states::PartitionSpec& part,
                     const entropy::EntropyParams& p);

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const states::DensityMatrix& rho);

// Closed form concurrence(rho)^2 / 2 for the (q,s) = (2,1) measure.
double tsallis2_two_qubit(const states::DensityMatrix& rho);

// Optimizes sum_i p_i E(psi_i) over pure-state decompositions of rho,
// parametrized by left-isometries acting on the weighted eigenvectors.
RoofResult convex_roof(const states::DensityMatrix& rho, const states::PartitionSpec& part,
                       const entropy::EntropyParams& p, RoofDirection direction,
                       const RoofOptions& opts = {});

// Dispatching two-qubit measures. At (q,s) = (2,1) the closed form is used
// only after validate_fast_path has passed in this process.
double ue_two_qubit(const states::DensityMatrix& rho, const entropy::EntropyParams& p,
                    const RoofOptions& opts = {});
double ueoa_two_qubit(const states::DensityMatrix& rho, const entropy::EntropyParams& p,
                      const RoofOptions& opts = {});

struct FastPathReport {
    int n_states = 0;
    double max_abs_err = 0.0;
    bool passed = false;
};

// One-time comparison of the (2,1) closed form against the optimizer on
// random rank-2 and rank-3 two-qubit states; arms the fast path on success.
FastPathReport validate_fast_path(int n_states = 200, double tol = 5e-4,
                                  const RoofOptions& opts = {});

bool fast_path_validated();

// Outcome of the most recent validation run in this process, if any.
std::optional<FastPathReport> last_fast_path_report();

}  // namespace uent::measures
