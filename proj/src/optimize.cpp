#include "uent/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uent::optimize {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

    const double nd = static_cast<double>(n);
    const double refl = 1.0;
    const double expa = 1.0 + 2.0 / nd;
    const double contr = 0.75 - 1.0 / (2.0 * nd);
    const double shrink = 1.0 - 1.0 / nd;

    const std::size_t nv = n + 1;
    std::vector<std::vector<double>> simplex(nv, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 1; i < nv; ++i) simplex[i][i - 1] += opts.initial_step;

    std::vector<double> fv(nv);
    int evals = 0;
    for (std::size_t i = 0; i < nv; ++i) {
        fv[i] = f(simplex[i]);
        ++evals;
    }

    std::vector<std::size_t> order(nv);
    std::vector<double> centroid(n), cand(n), cand2(n);

    NelderMeadResult result;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[nv - 1];
        const std::size_t second_worst = order[nv - 2];

        if (fv[worst] - fv[best] < opts.spread_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < nv; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= nd;

        for (std::size_t j = 0; j < n; ++j)
            cand[j] = centroid[j] + refl * (centroid[j] - simplex[worst][j]);
        const double fr = f(cand);
        ++evals;

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < n; ++j)
                cand2[j] = centroid[j] + expa * (cand[j] - centroid[j]);
            const double fe = f(cand2);
            ++evals;
            if (fe < fr) {
                simplex[worst] = cand2;
                fv[worst] = fe;
            } else {
                simplex[worst] = cand;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second_worst]) {
            simplex[worst] = cand;
            fv[worst] = fr;
            continue;
        }

        bool shrink_needed = false;
        if (fr < fv[worst]) {
            // outside contraction
            for (std::size_t j = 0; j < n; ++j)
                cand2[j] = centroid[j] + contr * (cand[j] - centroid[j]);
            const double fc = f(cand2);
            ++evals;
            if (fc <= fr) {
                simplex[worst] = cand2;
                fv[worst] = fc;
            } else {
                shrink_needed = true;
            }
        } else {
            // inside contraction
            for (std::size_t j = 0; j < n; ++j)
                cand2[j] = centroid[j] - contr * (centroid[j] - simplex[worst][j]);
            const double fc = f(cand2);
            ++evals;
            if (fc < fv[worst]) {
                simplex[worst] = cand2;
                fv[worst] = fc;
            } else {
                shrink_needed = true;
            }
        }
        if (shrink_needed) {
            for (std::size_t i = 0; i < nv; ++i) {
                if (i == best) continue;
                for (std::size_t j = 0; j < n; ++j)
                    simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
                fv[i] = f(simplex[i]);
                ++evals;
            }
        }
    }

    const std::size_t argbest =
        static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    result.x = simplex[argbest];
    result.value = fv[argbest];
    result.iterations = iter;
    result.evaluations = evals;
    return result;
}

}  // namespace uent::optimize
