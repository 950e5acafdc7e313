#pragma once

#include <vector>

#include "corrlab/dist.hpp"
#include "corrlab/unit.hpp"

namespace corrlab {

struct OptimizerConfig {
    int restarts = 16;
    long long max_evals = 200000; // channel evaluations per beta point
    double penalty_weight = 100.0;
    double constraint_tol = 1e-6;
    unsigned long long seed = 1;
};

// One evaluated point of the information-correlation function. `value` is
// an upper bound on the true infimum, achieved by `witness`;
// constraint_residual = rho_m(X;Y|W) - beta (<= constraint_tol).
struct IcfPoint {
    double beta = 0.0;
    double value = 0.0;     // bits, after the monotone post-pass
    double raw_value = 0.0; // bits, per-point optimizer output
    Channel witness;
    double constraint_residual = 0.0;
};

struct BetaCurve {
    std::vector<IcfPoint> points; // increasing beta, non-increasing value
};

// Binary and quaternary entropy in bits, with 0 log 0 := 0.
double h2(double p);
double h4(double a, double b, double c, double d);

// H(X,Y) in bits.
double entropy_xy(const JointDist2& d);

// I(X;Y) in bits, clamped to >= 0.
double mutual_information(const JointDist2& d);

// I(X,Y;W) in bits for W drawn from the channel.
double mi_xy_w(const JointDist2& d, const Channel& ch);

struct IcfEval {
    double objective = 0.0; // I(X,Y;W) bits
    double rho_w = 0.0;     // rho_m(X;Y|W) over supported w
};

IcfEval icf_evaluate(const JointDist2& d, const Channel& ch);

// Best feasible channel found for min I(X,Y;W) s.t. rho_m(X;Y|W) <= beta.
// Search space: |W| = |X||Y|. Returns immediately with the constant channel
// when beta >= rho_m(X;Y). The result is an upper bound on the infimum.
IcfPoint icf_minimize(const JointDist2& d, double beta, const OptimizerConfig& cfg = {});

// icf_minimize over a sorted beta grid, with each point's witness re-used
// as a candidate for the next point and a running-minimum post-pass. Grid
// points may be evaluated concurrently (capped by CORRLAB_THREADS).
BetaCurve icf_curve(const JointDist2& d, const std::vector<double>& betas,
                    const OptimizerConfig& cfg = {});

// C_0: minimum I(X,Y;W) over W making X and Y conditionally independent.
double wyner_common_info(const JointDist2& d, const OptimizerConfig& cfg = {});

struct GkEndpoint {
    double icf_left_limit_estimate = 0.0; // optimizer value at beta = 0.999
    double gk = 0.0;                      // gk_common_info(d), bits
};

// Probes beta = 1 - eps for eps in {.1, .01, .001} and pairs the last
// value with the combinatorial Gacs-Korner value.
GkEndpoint gk_endpoint_check(const JointDist2& d, const OptimizerConfig& cfg = {});

// Closed-form upper bound on C_beta for the doubly symmetric binary source:
// 1 + H2(p0) - H4(a, b, p0/2, p0/2) for beta < 1 - 2 p0, else 0, with
// a,b = (1 - p0 +- sqrt((1 - 2 p0 - beta)/(1 - beta))) / 2.
double dsbs_icf_upper(double p0, double beta);

// Objective of the product of the two per-pair witnesses on d1 (x) d2.
// Equals the sum of the per-pair objectives by construction.
double icf_additivity_upper(const JointDist2& d1, const JointDist2& d2, double beta,
                            const OptimizerConfig& cfg = {});

} // namespace corrlab
