#include "corrlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace corrlab {

double gaussian_maxcorr(const GaussianPair& g) {
    return std::min(std::abs(g.rho0), 1.0);
}

double gaussian_icf(const GaussianPair& g, double beta, Unit unit) {
    beta = std::clamp(beta, 0.0, 1.0);
    const double b0 = std::min(std::abs(g.rho0), 1.0);
    if (beta >= 1.0) return 0.0;
    if (b0 >= 1.0) return std::numeric_limits<double>::infinity();
    const double ratio = ((1.0 + b0) / (1.0 - b0)) / ((1.0 + beta) / (1.0 - beta));
    const double nats = 0.5 * std::max(std::log(ratio), 0.0);
    return nats * nats_to(unit);
}

double continuous_icf_lower(double h_joint_nats, double rho0, double beta) {
    beta = std::clamp(beta, 0.0, 1.0);
    const double b0 = std::min(std::abs(rho0), 1.0);
    if (beta >= b0) return 0.0;
    const double two_pi_e = 2.0 * M_PI * std::exp(1.0);
    const double bound =
        h_joint_nats -
        0.5 * std::log(two_pi_e * two_pi_e * (1.0 - b0) * (1.0 - b0) * (1.0 + beta) / (1.0 - beta));
    return std::max(bound, 0.0);
}

} // namespace corrlab
