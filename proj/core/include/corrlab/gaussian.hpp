#pragma once

#include "corrlab/unit.hpp"

namespace corrlab {

// A jointly Gaussian pair, identified up to affine maps by its correlation
// coefficient.
struct GaussianPair {
    double rho0 = 0.0; // in [-1, 1]
};

// For jointly Gaussian pairs |rho| = theta (both directions) = rho_m.
double gaussian_maxcorr(const GaussianPair& g);

// Closed form: C_beta = 1/2 log+ [ ((1+b0)/(1-b0)) / ((1+beta)/(1-beta)) ]
// with b0 = |rho0|. Nats by default; +infinity when b0 = 1 and beta < 1.
double gaussian_icf(const GaussianPair& g, double beta, Unit unit = Unit::nats);

// Lower bound on C_beta of an absolutely continuous pair with joint
// differential entropy h_joint (nats) and correlation coefficient rho0:
// h(X,Y) - 1/2 log[(2 pi e (1-b0))^2 (1+beta)/(1-beta)], floored at 0,
// and 0 whenever beta >= b0. Tight for jointly Gaussian pairs.
double continuous_icf_lower(double h_joint_nats, double rho0, double beta);

} // namespace corrlab
