#pragma once

#include <vector>

#include <Eigen/Core>

#include "corrlab/errors.hpp"

namespace corrlab {

// Absolute tolerance used for "is this a pmf" checks and for treating an
// event as unsupported.
inline constexpr double kMassTol = 1e-12;

// An ordered finite alphabet of real-valued symbols. The labels carry the
// numeric embedding needed by Pearson correlation and the correlation
// ratio; purely structural measures (maximal correlation, common
// information) ignore them.
struct Alphabet {
    std::vector<double> labels;

    int size() const { return static_cast<int>(labels.size()); }

    // Labels 0, 1, ..., n-1. The default embedding when a file omits labels.
    static Alphabet iota(int n);
};

// A joint pmf over X x Y. pmf(i, j) = P(x_i, y_j).
struct JointDist2 {
    Alphabet x;
    Alphabet y;
    Eigen::MatrixXd pmf;

    int nx() const { return static_cast<int>(pmf.rows()); }
    int ny() const { return static_cast<int>(pmf.cols()); }
};

// A joint pmf over X x Y x U, stored as one X-by-Y matrix per value of U.
struct JointDist3 {
    Alphabet x;
    Alphabet y;
    Alphabet u;
    std::vector<Eigen::MatrixXd> pmf; // pmf[u](i, j) = P(x_i, y_j, u)

    int nx() const { return pmf.empty() ? 0 : static_cast<int>(pmf[0].rows()); }
    int ny() const { return pmf.empty() ? 0 : static_cast<int>(pmf[0].cols()); }
    int nu() const { return static_cast<int>(pmf.size()); }
};

// A conditional pmf K(w | x, y). Rows index the input cell (x * in_y + y),
// columns index w; every row is a pmf over w.
struct Channel {
    int in_x = 0;
    int in_y = 0;
    int out_w = 0;
    Eigen::MatrixXd kernel; // (in_x * in_y) x out_w

    int cell(int x, int y) const { return x * in_y + y; }

    // W is a single constant symbol regardless of the input.
    static Channel constant(int nx, int ny);
    // W reveals the input cell: w = x * ny + y deterministically.
    static Channel cell_identity(int nx, int ny);
};

// A pair of one-sided channels (U from X alone, V from Y alone), stored as
// channels whose Y-input (resp. X-input) is a singleton.
struct ProductChannelPair {
    Channel u_given_x;
    Channel v_given_y;
};

// Throw NegativeMass / NotNormalized / ShapeMismatch if the invariants do
// not hold. Entries in (-kMassTol, 0) and totals within kMassTol of 1 are
// accepted; use normalized() to clean them up.
void validate(const JointDist2& d);
void validate(const JointDist3& d);
void validate(const Channel& ch);

// Clamp tiny negatives to zero and rescale total mass to exactly 1.
JointDist2 normalized(JointDist2 d);
JointDist3 normalized(JointDist3 d);

Eigen::VectorXd marginal_x(const JointDist2& d);
Eigen::VectorXd marginal_y(const JointDist2& d);
Eigen::VectorXd marginal_u(const JointDist3& d);

// Sum out U.
JointDist2 marginal_xy(const JointDist3& d);

// P_{X,Y | U=u}. Throws ZeroConditioningMass if P_U(u) <= kMassTol.
JointDist2 condition_on_u(const JointDist3& d, int u);

JointDist2 transpose(const JointDist2& d);
JointDist3 transpose_xy(const JointDist3& d);

// Independent product over (X1,X2) x (Y1,Y2). Pair symbols are flattened
// as x1 * nx2 + x2 (same for y) and relabeled with fresh integer labels.
JointDist2 product_pair(const JointDist2& a, const JointDist2& b);

// Joint law of (X, Y, W) with W drawn from the channel: p(x,y,w) =
// d(x,y) * K(w|x,y). The U-coordinate of the result is W.
JointDist3 attach_channel(const JointDist2& d, const Channel& ch);

// Product of two channels acting on product inputs; cell and output
// flattening match product_pair.
Channel product_channel(const Channel& a, const Channel& b);

// Doubly symmetric binary source with crossover probability p0:
// [[(1-p0)/2, p0/2], [p0/2, (1-p0)/2]], labels {0,1}.
JointDist2 make_dsbs(double p0);

// Binary joint pmf from (P_X(0), P_Y(0), P_XY(0,0)). Throws Infeasible if
// any implied cell mass is negative.
JointDist2 make_binary(double px0, double py0, double p00);

} // namespace corrlab
