#pragma once

#include <vector>

#include "corrlab/dist.hpp"
#include "corrlab/icf.hpp"

namespace corrlab {

// Outcome of one outer-bound check: margin >= 0 (up to tolerance) passes.
struct CheckResult {
    bool pass = false;
    double margin = 0.0;
};

struct IcfCheckResult {
    bool pass = false;
    double worst_margin = 0.0; // max over beta of C(tgt) - C(src), bits
    double worst_beta = 0.0;
};

struct InnerResult {
    enum class Status { yes, no, unknown };
    Status status = Status::unknown;
    ProductChannelPair witness; // valid when status == yes
};

struct BoundVerdict {
    CheckResult mc;
    CheckResult mi;
    IcfCheckResult icf;
    InnerResult inner;
};

// One row of the binary simulation-region table: for a fixed source cell
// mass p, the q-intervals passing each bound. Intervals are [lo, hi]; NaN
// endpoints mean no grid point passed.
struct Fig1Row {
    double p = 0.0;
    double inner_lo = 0.0, inner_hi = 0.0;
    double icf_lo = 0.0, icf_hi = 0.0;
    double mc_lo = 0.0, mc_hi = 0.0;
    double mi_lo = 0.0, mi_hi = 0.0;
};

// rho_m(tgt) <= rho_m(src)?
CheckResult mc_outer_check(const JointDist2& src, const JointDist2& tgt);

// I(tgt) <= I(src)?
CheckResult mi_outer_check(const JointDist2& src, const JointDist2& tgt);

// C_beta(tgt) <= C_beta(src) for every beta in the grid, with a two-sided
// slack (both sides are optimizer upper-bound estimates). A target with
// rho_m(tgt) > rho_m(src) fails outright: C_beta(tgt) is positive while
// C_beta(src) vanishes on [rho_m(src), rho_m(tgt)).
IcfCheckResult icf_outer_check(const JointDist2& src, const JointDist2& tgt,
                               const std::vector<double>& betas, const OptimizerConfig& cfg,
                               double slack_bits = 0.02);

// Exhaustive sweep over product channel pairs P_{U|X} x P_{V|Y} for a
// binary source: achievable iff some pair matches the target marginals
// (exactly, by construction) and hits P_{UV}(0,0) = q within 1e-3.
InnerResult inner_search_binary(const JointDist2& src, double pu0, double pv0, double q,
                                double grid_step = 1e-3);

// Exact achievable range of q = P_{UV}(0,0) over binary product channels
// matching the target marginals. Returns false when the marginals cannot
// be matched.
bool binary_inner_q_range(const JointDist2& src, double pu0, double pv0, double* q_min,
                          double* q_max);

// All four checks for one source/target pair.
BoundVerdict nisim_verdict(const JointDist2& src, const JointDist2& tgt,
                           const std::vector<double>& betas, const OptimizerConfig& cfg);

// The binary sweep behind the simulation-region figure: source
// (P_X(0), P_Y(0)) = (1/4, 1/4) with cell mass p, target marginals
// (1/2, 1/2) with cell mass q. mc/mi scan q at q_step, the ICF comparison
// at icf_q_step (it runs a full curve per distinct target).
std::vector<Fig1Row> fig1_rows(const std::vector<double>& p_grid, double q_step,
                               double icf_q_step, const OptimizerConfig& cfg);

} // namespace corrlab
