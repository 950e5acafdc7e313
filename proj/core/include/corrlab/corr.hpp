#pragma once

#include <vector>

#include <Eigen/Core>

#include "corrlab/dist.hpp"
#include "corrlab/unit.hpp"

namespace corrlab {

// Variances below this are treated as degenerate (constant variable).
inline constexpr double kVarTol = 1e-14;

// All five dependence measures of one distribution. Satisfies
// 0 <= |pearson| <= theta_* <= maxcorr <= 1.
struct CorrelationReport {
    double pearson = 0.0;
    double theta_xy = 0.0; // correlation ratio of X on Y
    double theta_yx = 0.0; // correlation ratio of Y on X
    double maxcorr = 0.0;
};

// The normalized joint-pmf matrix Q(x,y) = P(x,y) / sqrt(P(x) P(y)),
// restricted to rows/columns of positive marginal mass. Its largest
// singular value is 1; the second largest is the maximal correlation.
struct QMatrix {
    Eigen::MatrixXd entries;
    std::vector<int> kept_x; // original row indices that survived
    std::vector<int> kept_y;
};

struct Moments2 {
    double mean_x = 0.0, mean_y = 0.0;
    double var_x = 0.0, var_y = 0.0;
    double cov_xy = 0.0;
};

// Expected conditional moments given U, i.e. E[var(X|U)] etc.
struct CondMoments {
    double e_var_x = 0.0, e_var_y = 0.0;
    double e_cov_xy = 0.0;
};

Moments2 moments(const JointDist2& d);
CondMoments cond_moments(const JointDist3& d);

// E[var(X | Y)] under the joint law; the residual the correlation ratio
// measures against.
double e_var_x_given_y(const JointDist2& d);
double e_var_x_given_yu(const JointDist3& d);

double pearson(const JointDist2& d);
double cond_pearson(const JointDist3& d);

// theta(X;Y) = sqrt(1 - E[var(X|Y)] / var(X)); use transpose(d) for the
// other direction.
double corr_ratio(const JointDist2& d);
double cond_corr_ratio(const JointDist3& d);

// Minimum mean square error of estimating X from (Y, U): E[var(X|Y,U)].
double mmse(const JointDist3& d);

QMatrix q_matrix(const JointDist2& d);

// Maximal correlation as the second singular value of the Q matrix,
// clamped to [0,1]; 0 when Q has a single row or column.
double maxcorr_svd(const JointDist2& d);

// Closed form for 2x2 alphabets with all marginal masses positive:
// rho_m^2 = sum_xy P(x,y)^2 / (P(x) P(y)) - 1.
double maxcorr_binary_formula(const JointDist2& d);

// max over u with P_U(u) > 0 of the per-slice maximal correlation.
double cond_maxcorr(const JointDist3& d);

// Independent oracle: alternating maximization over score functions
// f(X), g(Y) under the conditional-expectation operator, multi-start.
double maxcorr_bruteforce(const JointDist2& d, int restarts = 8, int iters = 200,
                          unsigned long long seed = 1);

CorrelationReport report(const JointDist2& d);
CorrelationReport cond_report(const JointDist3& d);

// Full report of the slice P_{X,Y | U=u}.
CorrelationReport event_conditional(const JointDist3& d, int u);

// Component index of every supported cell of the bipartite support graph
// (-1 for cells of zero mass). Cells in one component share the common
// part of X and Y.
Eigen::MatrixXi support_components(const JointDist2& d, int* n_components = nullptr);

// Gacs-Korner common information: entropy of the connected-component mass
// distribution of the support graph.
double gk_common_info(const JointDist2& d, Unit unit = Unit::bits);

} // namespace corrlab
