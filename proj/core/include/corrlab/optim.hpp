#pragma once

#include <functional>

#include <Eigen/Core>

namespace corrlab {

struct SimplexOptions {
    int max_evals = 10000;
    double ftol = 1e-10;  // stop when the simplex f-spread drops below this
    double step = 0.5;    // initial simplex edge length
};

struct SimplexResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int evals = 0;
};

// Nelder-Mead downhill simplex on an unconstrained objective. Bound
// handling is the caller's job (map parameters through softmax/sigmoid).
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const SimplexOptions& opt = {});

} // namespace corrlab
