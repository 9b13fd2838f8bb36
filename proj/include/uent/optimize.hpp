#pragma once

#include <functional>
#include <span>
#include <vector>

namespace uent::optimize {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double spread_tolerance = 1e-10;
    double initial_step = 0.7;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

// Downhill simplex with the dimension-adaptive expansion/contraction/shrink
// coefficients; terminates when the worst-to-best objective spread falls
// below spread_tolerance.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0,
                             const NelderMeadOptions& opts);

}  // namespace uent::optimize
