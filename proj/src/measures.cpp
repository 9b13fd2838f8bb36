#include "uent/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>

#include "uent/optimize.hpp"
#include "uent/rng.hpp"

namespace uent::measures {

using linalg::ComplexMatrix;
using linalg::cplx;
using states::DensityMatrix;
using states::PartitionSpec;
using states::PureState;

namespace {

constexpr double kRankCutoff = 1e-12;
constexpr double kMemberCutoff = 1e-14;

void require_two_qubit(const DensityMatrix& rho, const char* who) {
    if (rho.dim() != 4 || rho.matrix.rows() != 4)
        throw std::invalid_argument(std::string(who) + ": expected a 4x4 two-qubit density matrix");
}

bool is_identity_perm(const std::vector<std::size_t>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != i) return false;
    return true;
}

// Shared state for one convex-roof problem: the support of rho and the
// scratch buffers for the isometry-parametrized objective.
struct RoofProblem {
    std::size_t d = 0, da = 0, db = 0, r = 0, m = 0;
    std::vector<double> mu;     // support eigenvalues
    std::vector<cplx> bt;       // r x d rows: sqrt(mu_j) * eigenvector_j
    entropy::EntropyParams params;
    bool tsallis2 = false;      // (q,s) == (2,1) closed member entropy

    std::size_t n_params() const { return m * m; }
};

struct RoofScratch {
    std::vector<cplx> h, w, t, v, psi;
    std::vector<double> evals, member_spec;
    std::vector<cplx> rho_a;

    explicit RoofScratch(const RoofProblem& pb)
        : h(pb.m * pb.m), w(pb.m * pb.m), t(pb.m * pb.r), v(pb.m * pb.r),
          psi(pb.m * pb.d), evals(pb.m), member_spec(pb.da),
          rho_a(pb.da * pb.da) {}
};

// Fills scratch.psi with the m unnormalized ensemble members (rows) for the
// Hermitian generator encoded in params.
void assemble_members(const RoofProblem& pb, std::span<const double> x, RoofScratch& s) {
    const std::size_t m = pb.m, r = pb.r;
    // Hermitian generator H: diagonal then (re, im) per upper off-diagonal.
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m; ++i) s.h[i * m + i] = x[idx++];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double re = x[idx++], im = x[idx++];
            s.h[i * m + j] = cplx(re, im);
            s.h[j * m + i] = cplx(re, -im);
        }
    linalg::jacobi_hermitian(s.h.data(), s.w.data(), s.evals.data(), m);
    // First r columns of exp(iH) = W diag(e^{i eval}) W^dagger.
    for (std::size_t k = 0; k < m; ++k) {
        const cplx phase = std::polar(1.0, s.evals[k]);
        for (std::size_t j = 0; j < r; ++j)
            s.t[k * r + j] = phase * std::conj(s.w[j * m + k]);
    }
    kernels::matmul(s.w.data(), s.t.data(), s.v.data(), m, m, r);
    // Member i (row of psi) = sum_j V[i][j] * bt_row_j.
    kernels::matmul(s.v.data(), pb.bt.data(), s.psi.data(), m, r, pb.d);
}

// Average entanglement of the ensemble encoded in params (always the value
// to MINIMIZE; maximization negates outside).
double roof_objective(const RoofProblem& pb, std::span<const double> x, RoofScratch& s) {
    assemble_members(pb, x, s);
    const std::size_t da = pb.da, db = pb.db;
    double total = 0.0;
    for (std::size_t i = 0; i < pb.m; ++i) {
        const cplx* member = s.psi.data() + i * pb.d;
        const double p = kernels::norm2sq(member, pb.d);
        if (p < kMemberCutoff) continue;
        if (da == 2) {
            const double a = kernels::norm2sq(member, db);
            const double b = kernels::norm2sq(member + db, db);
            const cplx c = kernels::dotc(member + db, member, db);  // rho_A[0][1]
            const double det = a * b - std::norm(c);
            if (pb.tsallis2) {
                total += 2.0 * det / p;
                continue;
            }
            const double disc = std::sqrt(std::max((a - b) * (a - b) + 4.0 * std::norm(c), 0.0));
            double l0 = std::clamp(0.5 * (a + b + disc) / p, 0.0, 1.0);
            double l1 = std::clamp(0.5 * (a + b - disc) / p, 0.0, 1.0);
            const double norm = l0 + l1;
            if (norm > 0.0) {
                l0 /= norm;
                l1 /= norm;
            }
            const double spec[2] = {l0, l1};
            total += p * entropy::unified_entropy_core(spec, pb.params);
        } else {
            kernels::matmul_nh(member, member, s.rho_a.data(), da, db, da);
            std::vector<cplx> vecs(da * da);
            linalg::jacobi_hermitian(s.rho_a.data(), vecs.data(), s.member_spec.data(), da);
            double sum = 0.0;
            for (double& lv : s.member_spec) {
                lv = std::clamp(lv / p, 0.0, 1.0);
                sum += lv;
            }
            if (sum > 0.0)
                for (double& lv : s.member_spec) lv /= sum;
            total += p * entropy::unified_entropy_core(s.member_spec, pb.params);
        }
    }
    return total;
}

struct RestartOutcome {
    double objective = 0.0;
    std::vector<double> x;
};

}  // namespace

double DecompositionEnsemble::reconstruction_error(const DensityMatrix& rho) const {
    const std::size_t d = rho.dim();
    ComplexMatrix acc(d, d);
    for (std::size_t k = 0; k < members.size(); ++k) {
        const auto& amps = members[k].amplitudes;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                acc(i, j) += weights[k] * amps[i] * std::conj(amps[j]);
    }
    return linalg::max_abs_diff(acc, rho.matrix);
}

double pure_state_ue(const PureState& psi, const PartitionSpec& part,
                     const entropy::EntropyParams& p) {
    psi.validate();
    part.validate(psi.dims.size());
    if (part.others.size() + 1 != psi.dims.size())
        throw std::invalid_argument("pure_state_ue: partition must cover all parties");
    const DensityMatrix rho_a = states::reduce(psi, {part.focus});
    return entropy::unified_entropy(linalg::hermitian_eigensystem(rho_a.matrix).spectrum, p);
}

double concurrence(const DensityMatrix& rho) {
    require_two_qubit(rho, "concurrence");
    const ComplexMatrix& r = rho.matrix;
    // Spin-flipped conjugate: rho~[i][j] = yy_i conj(rho[3-i][3-j]) yy_j.
    static const double yy[4] = {-1.0, 1.0, 1.0, -1.0};
    ComplexMatrix flipped(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            flipped(i, j) = yy[i] * yy[j] * std::conj(r(3 - i, 3 - j));

    const ComplexMatrix s = linalg::hermitian_sqrt(r);
    ComplexMatrix m = s * flipped * s;
    // m is Hermitian PSD up to rounding; symmetrize before the eigensolve.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    const auto es = linalg::hermitian_eigensystem(m);
    double roots[4];
    for (int i = 0; i < 4; ++i) roots[i] = std::sqrt(std::max(es.spectrum.values[i], 0.0));
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double tsallis2_two_qubit(const DensityMatrix& rho) {
    require_two_qubit(rho, "tsallis2_two_qubit");
    const double c = concurrence(rho);
    return 0.5 * c * c;
}

RoofResult convex_roof(const DensityMatrix& rho, const PartitionSpec& part,
                       const entropy::EntropyParams& p, RoofDirection direction,
                       const RoofOptions& opts) {
    rho.validate();
    p.validate();
    part.validate(rho.dims.size());
    if (part.others.size() + 1 != rho.dims.size())
        throw std::invalid_argument("convex_roof: partition must cover all parties");
    if (rho.dim() > 16)
        throw std::length_error("convex_roof: bipartite dimension above the supported limit (16)");

    // Canonical order: focus first, B parties in their given order.
    std::vector<std::size_t> perm{part.focus};
    perm.insert(perm.end(), part.others.begin(), part.others.end());
    const DensityMatrix canon = is_identity_perm(perm) ? rho : states::permute_subsystems(rho, perm);

    RoofProblem pb;
    pb.d = canon.dim();
    pb.da = canon.dims[0];
    pb.db = pb.d / pb.da;
    pb.params = p;
    pb.tsallis2 = (p.q == 2.0 && p.s == 1.0);

    const auto es = linalg::hermitian_eigensystem(canon.matrix);
    for (std::size_t j = 0; j < pb.d; ++j)
        if (es.spectrum.values[j] > kRankCutoff) pb.mu.push_back(es.spectrum.values[j]);
    pb.r = pb.mu.size();
    if (pb.r == 0) throw std::domain_error("convex_roof: state has no support");

    const int mult = std::clamp(opts.ensemble_multiplier, 1, 4);
    pb.m = static_cast<std::size_t>(mult) * pb.r * pb.r;
    pb.bt.resize(pb.r * pb.d);
    for (std::size_t j = 0; j < pb.r; ++j) {
        const double w = std::sqrt(pb.mu[j]);
        for (std::size_t i = 0; i < pb.d; ++i) pb.bt[j * pb.d + i] = w * es.vectors(i, j);
    }

    const std::vector<std::size_t> inverse_perm = [&] {
        std::vector<std::size_t> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
        return inv;
    }();

    auto build_result = [&](std::span<const double> x, bool converged, int restarts_used,
                            double spread) {
        RoofScratch scratch(pb);
        assemble_members(pb, x, scratch);
        RoofResult out;
        out.converged = converged;
        out.restarts_used = restarts_used;
        out.restart_spread = spread;
        double value = 0.0;
        for (std::size_t i = 0; i < pb.m; ++i) {
            const cplx* member = scratch.psi.data() + i * pb.d;
            const double w = kernels::norm2sq(member, pb.d);
            if (w < kRankCutoff) continue;
            PureState member_state;
            member_state.dims = canon.dims;
            member_state.amplitudes.assign(member, member + pb.d);
            kernels::scal(1.0 / std::sqrt(w), member_state.amplitudes.data(), pb.d);
            if (!is_identity_perm(perm))
                member_state = states::permute_subsystems(member_state, inverse_perm);
            PartitionSpec member_part;
            member_part.focus = part.focus;
            member_part.others = part.others;
            value += w * pure_state_ue(member_state, member_part, p);
            out.ensemble.weights.push_back(w);
            out.ensemble.members.push_back(std::move(member_state));
        }
        out.value = value;
        return out;
    };

    if (pb.r == 1) {
        // Unique decomposition; nothing to optimize.
        std::vector<double> x(pb.n_params(), 0.0);
        return build_result(x, true, 0, 0.0);
    }

    const double sign = (direction == RoofDirection::maximize) ? -1.0 : 1.0;
    const int restarts = std::max(opts.restarts, 1);
    std::vector<RestartOutcome> outcomes(restarts);

    auto run_restart = [&](int t) {
        RoofScratch scratch(pb);
        auto objective = [&](std::span<const double> x) {
            return sign * roof_objective(pb, x, scratch);
        };
        std::vector<double> x(pb.n_params(), 0.0);
        if (t > 0) {
            std::uint64_t mix = opts.seed;
            mix = rng::splitmix64(mix) ^ static_cast<std::uint64_t>(t);
            rng::Xoshiro256 gen(mix);
            rng::NormalSampler normal(gen);
            for (double& xi : x) xi = normal();
        }
        optimize::NelderMeadOptions nm;
        nm.max_iterations = opts.max_iterations;
        nm.spread_tolerance = opts.simplex_tolerance;
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> best_x = x;
        for (int round = 0; round < std::max(opts.polish_rounds, 1); ++round) {
            nm.initial_step = (round == 0) ? 0.7 : 0.15;
            const auto res = optimize::nelder_mead(objective, x, nm);
            const double improvement = best - res.value;
            if (res.value < best) {
                best = res.value;
                best_x = res.x;
            }
            x = res.x;
            if (improvement < 1e-12) break;
        }
        outcomes[t] = {best, std::move(best_x)};
    };

    const int n_threads = std::clamp(opts.threads, 1, restarts);
    if (n_threads <= 1) {
        for (int t = 0; t < restarts; ++t) run_restart(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < restarts; t = next.fetch_add(1)) run_restart(t);
            });
        for (auto& th : pool) th.join();
    }

    int best_idx = 0;
    for (int t = 1; t < restarts; ++t)
        if (outcomes[t].objective < outcomes[best_idx].objective) best_idx = t;
    double second = std::numeric_limits<double>::infinity();
    for (int t = 0; t < restarts; ++t)
        if (t != best_idx) second = std::min(second, outcomes[t].objective);
    const double spread = (restarts > 1) ? second - outcomes[best_idx].objective : 0.0;

    return build_result(outcomes[best_idx].x, spread <= opts.restart_agreement, restarts, spread);
}

namespace {

std::atomic<bool> g_fast_path_ok{false};
std::mutex g_fast_path_mutex;
std::optional<FastPathReport> g_fast_path_report;

DensityMatrix as_two_qubit(const DensityMatrix& rho) {
    DensityMatrix out;
    out.dims = {2, 2};
    out.matrix = rho.matrix;
    return out;
}

double roof_two_qubit(const DensityMatrix& rho, const entropy::EntropyParams& p,
                      RoofDirection dir, const RoofOptions& opts) {
    PartitionSpec part;
    part.focus = 0;
    part.others = {1};
    return convex_roof(as_two_qubit(rho), part, p, dir, opts).value;
}

}  // namespace

bool fast_path_validated() { return g_fast_path_ok.load(std::memory_order_relaxed); }

std::optional<FastPathReport> last_fast_path_report() {
    std::lock_guard<std::mutex> lock(g_fast_path_mutex);
    return g_fast_path_report;
}

double ue_two_qubit(const DensityMatrix& rho, const entropy::EntropyParams& p,
                    const RoofOptions& opts) {
    require_two_qubit(rho, "ue_two_qubit");
    if (p.q == 2.0 && p.s == 1.0 && opts.allow_fast_path && fast_path_validated())
        return tsallis2_two_qubit(rho);
    return roof_two_qubit(rho, p, RoofDirection::minimize, opts);
}

double ueoa_two_qubit(const DensityMatrix& rho, const entropy::EntropyParams& p,
                      const RoofOptions& opts) {
    require_two_qubit(rho, "ueoa_two_qubit");
    return roof_two_qubit(rho, p, RoofDirection::maximize, opts);
}

FastPathReport validate_fast_path(int n_states, double tol, const RoofOptions& opts) {
    FastPathReport report;
    report.n_states = n_states;
    const entropy::EntropyParams p{2.0, 1.0};
    RoofOptions roof_opts = opts;
    roof_opts.allow_fast_path = false;
    constexpr std::uint64_t kValidationSeed = 0x7561746873756974ull;
    for (int i = 0; i < n_states; ++i) {
        const std::size_t rank = 2 + (i % 2);
        DensityMatrix rho =
            states::ginibre_mixed(4, rank, kValidationSeed ^ static_cast<std::uint64_t>(i));
        rho.dims = {2, 2};
        const double closed = tsallis2_two_qubit(rho);
        const double roof = roof_two_qubit(rho, p, RoofDirection::minimize, roof_opts);
        report.max_abs_err = std::max(report.max_abs_err, std::abs(closed - roof));
    }
    report.passed = report.max_abs_err <= tol;
    if (report.passed) g_fast_path_ok.store(true, std::memory_order_relaxed);
    {
        std::lock_guard<std::mutex> lock(g_fast_path_mutex);
        g_fast_path_report = report;
    }
    return report;
}

}  // namespace uent::measures
