#include "corrlab/icf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include <Eigen/SVD>

#include "corrlab/corr.hpp"
#include "corrlab/optim.hpp"

namespace corrlab {

namespace {

double xlog2x(double t) { return t > 0.0 ? t * std::log2(t) : 0.0; }

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

int thread_cap() {
    if (const char* env = std::getenv("CORRLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Maximal correlation of one unnormalized 2x2 mass block, with the same
// row/column support rule as q_matrix. Scale-invariant.
double block_maxcorr_2x2(double m00, double m01, double m10, double m11, double total) {
    const double rx0 = m00 + m01, rx1 = m10 + m11;
    const double cy0 = m00 + m10, cy1 = m01 + m11;
    const double cut = kMassTol * total;
    const int rows = (rx0 > cut) + (rx1 > cut);
    const int cols = (cy0 > cut) + (cy1 > cut);
    if (rows < 2 || cols < 2) return 0.0;
    double s = -1.0;
    s += m00 * m00 / (rx0 * cy0);
    s += m01 * m01 / (rx0 * cy1);
    s += m10 * m10 / (rx1 * cy0);
    s += m11 * m11 / (rx1 * cy1);
    return std::sqrt(std::clamp(s, 0.0, 1.0));
}

// Maximal correlation of one unnormalized slice of arbitrary size.
double block_maxcorr(const Eigen::MatrixXd& m, double total) {
    if (m.rows() == 2 && m.cols() == 2)
        return block_maxcorr_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1), total);
    const Eigen::VectorXd rx = m.rowwise().sum();
    const Eigen::VectorXd cy = m.colwise().sum().transpose();
    const double cut = kMassTol * total;
    std::vector<int> rows, cols;
    for (int i = 0; i < m.rows(); ++i)
        if (rx(i) > cut) rows.push_back(i);
    for (int j = 0; j < m.cols(); ++j)
        if (cy(j) > cut) cols.push_back(j);
    if (rows.size() < 2 || cols.size() < 2) return 0.0;
    Eigen::MatrixXd q(rows.size(), cols.size());
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b)
            q(static_cast<int>(a), static_cast<int>(b)) =
                m(rows[a], cols[b]) / std::sqrt(rx(rows[a]) * cy(cols[b]));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
    return std::clamp(svd.singularValues()(1), 0.0, 1.0);
}

IcfEval eval_channel_raw(const JointDist2& d, const Channel& ch) {
    const int nx = d.nx(), ny = d.ny(), nw = ch.out_w;
    Eigen::VectorXd pw = Eigen::VectorXd::Zero(nw);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double p = d.pmf(i, j);
            if (p <= 0.0) continue;
            for (int w = 0; w < nw; ++w) pw(w) += p * ch.kernel(ch.cell(i, j), w);
        }

    // I(X,Y;W) = sum_{x,y} P(x,y) sum_w K(w|x,y) log K(w|x,y)/P_W(w).
    double mi = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double p = d.pmf(i, j);
            if (p <= 0.0) continue;
            const int c = ch.cell(i, j);
            for (int w = 0; w < nw; ++w) {
                const double k = ch.kernel(c, w);
                if (k > 0.0 && pw(w) > 0.0) mi += p * k * std::log2(k / pw(w));
            }
        }

    double rho = 0.0;
    Eigen::MatrixXd slice(nx, ny);
    for (int w = 0; w < nw; ++w) {
        if (pw(w) <= kMassTol) continue; // unsupported output
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) slice(i, j) = d.pmf(i, j) * ch.kernel(ch.cell(i, j), w);
        rho = std::max(rho, block_maxcorr(slice, pw(w)));
    }
    return {std::max(mi, 0.0), rho};
}

struct Candidate {
    Channel ch;
    double obj = std::numeric_limits<double>::infinity();
    double rho = 1.0;
    bool feasible = false;
};

// Shared state of one icf_minimize run.
struct Search {
    const JointDist2& d;
    double beta;
    const OptimizerConfig& cfg;
    long long used = 0;
    Candidate best; // best feasible so far

    Search(const JointDist2& dist, double b, const OptimizerConfig& c)
        : d(dist), beta(b), cfg(c) {}

    bool budget_left() const { return used < cfg.max_evals; }

    Candidate evaluate(const Channel& ch) {
        ++used;
        const IcfEval e = eval_channel_raw(d, ch);
        Candidate cand{ch, e.objective, e.rho_w, e.rho_w <= beta + cfg.constraint_tol};
        if (cand.feasible && cand.obj < best.obj) best = cand;
        return cand;
    }

    double penalized(const Channel& ch) {
        const Candidate c = evaluate(ch);
        const double excess = std::max(0.0, c.rho - beta);
        return c.obj + cfg.penalty_weight * excess * excess;
    }
};

Channel channel_from_logits(int nx, int ny, int nw, const Eigen::VectorXd& logits) {
    Channel ch;
    ch.in_x = nx;
    ch.in_y = ny;
    ch.out_w = nw;
    ch.kernel.resize(nx * ny, nw);
    for (int c = 0; c < nx * ny; ++c) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int w = 0; w < nw; ++w) mx = std::max(mx, logits(c * nw + w));
        double total = 0.0;
        for (int w = 0; w < nw; ++w) {
            const double e = std::exp(std::clamp(logits(c * nw + w) - mx, -60.0, 0.0));
            ch.kernel(c, w) = e;
            total += e;
        }
        ch.kernel.row(c) /= total;
    }
    return ch;
}

// Round near-zero kernel entries to exact zero and renormalize. Slices of
// the attached law change support, which is what makes hard conditional
// independence reachable from soft interior points.
Channel project_channel(Channel ch, double tau) {
    for (int c = 0; c < ch.kernel.rows(); ++c) {
        double total = 0.0;
        int argmax = 0;
        for (int w = 0; w < ch.out_w; ++w) {
            if (ch.kernel(c, w) > ch.kernel(c, argmax)) argmax = w;
            if (ch.kernel(c, w) < tau) ch.kernel(c, w) = 0.0;
            total += ch.kernel(c, w);
        }
        if (total <= 0.0) {
            ch.kernel.row(c).setZero();
            ch.kernel(c, argmax) = 1.0;
        } else {
            ch.kernel.row(c) /= total;
        }
    }
    return ch;
}

void evaluate_with_projections(Search& s, const Channel& ch) {
    s.evaluate(ch);
    for (double tau : {1e-9, 1e-6, 1e-4, 1e-3, 1e-2}) {
        if (!s.budget_left()) return;
        s.evaluate(project_channel(ch, tau));
    }
}

// W = connected component of the support graph; always feasible once beta
// dominates the largest within-component correlation.
Channel component_channel(const JointDist2& d) {
    int n = 0;
    const Eigen::MatrixXi comp = support_components(d, &n);
    Channel ch;
    ch.in_x = d.nx();
    ch.in_y = d.ny();
    ch.out_w = std::max(n, 1);
    ch.kernel = Eigen::MatrixXd::Zero(d.nx() * d.ny(), ch.out_w);
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j)
            ch.kernel(ch.cell(i, j), std::max(comp(i, j), 0)) = 1.0;
    return ch;
}

// One-parameter family of two-output channels that splits the mass of two
// chosen cells across W = {0, 1} and leaves the other cells balanced. With
// cells = the diagonal this is the symmetric two-slice construction whose
// optimum is the closed-form DSBS bound. Swept on a 1e-4 grid, then the
// feasibility boundary rho_m(X;Y|W)(a) = beta is pinned down by bisection
// so the best point is hit to machine precision (the constraint is active
// at the optimum and a raw grid point misses it by O(grid step)).
void sweep_two_slice(Search& s, int i1, int j1, int i2, int j2) {
    const JointDist2& d = s.d;
    const double m1 = d.pmf(i1, j1), m2 = d.pmf(i2, j2);
    const double total = m1 + m2;
    if (total <= kMassTol) return;
    const double lo = std::max(0.0, m1 - m2);
    const double hi = std::min(total, 2.0 * m1);
    if (hi < lo) return;

    Channel ch;
    ch.in_x = d.nx();
    ch.in_y = d.ny();
    ch.out_w = 2;
    ch.kernel = Eigen::MatrixXd::Constant(d.nx() * d.ny(), 2, 0.5);

    auto eval_at = [&](double a) {
        const double b = total - a;
        // slice 0 holds (a, b) on the two split cells, slice 1 the rest
        ch.kernel(ch.cell(i1, j1), 0) = m1 > kMassTol ? 0.5 * a / m1 : 0.5;
        ch.kernel(ch.cell(i1, j1), 1) = 1.0 - ch.kernel(ch.cell(i1, j1), 0);
        ch.kernel(ch.cell(i2, j2), 0) = m2 > kMassTol ? 0.5 * b / m2 : 0.5;
        ch.kernel(ch.cell(i2, j2), 1) = 1.0 - ch.kernel(ch.cell(i2, j2), 0);
        return s.evaluate(ch);
    };

    // 1e-4 grid at the default budget; coarser when the budget is tight
    // (the bisection refinement below supplies the precision either way).
    const double budget_share = 0.25 * static_cast<double>(s.cfg.max_evals);
    const double step = std::max(1e-4, (hi - lo) / std::max(budget_share, 16.0));
    const int n = static_cast<int>(std::floor((hi - lo) / step)) + 1;
    std::vector<double> grid(static_cast<size_t>(n + 1));
    std::vector<double> rho(static_cast<size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        if (!s.budget_left()) return;
        grid[static_cast<size_t>(k)] = std::min(lo + k * step, hi);
        rho[static_cast<size_t>(k)] = eval_at(grid[static_cast<size_t>(k)]).rho;
    }

    // Aim for the middle of the tolerance band so accepted points do not
    // sit exactly on the feasibility boundary.
    const double target = s.beta + 0.5 * s.cfg.constraint_tol;
    auto bisect_crossing = [&](double a_out, double a_in) {
        for (int it = 0; it < 80 && s.budget_left(); ++it) {
            const double mid = 0.5 * (a_out + a_in);
            if (eval_at(mid).rho > target)
                a_out = mid;
            else
                a_in = mid;
        }
        eval_at(a_in);
    };

    for (int k = 0; k <= n && s.budget_left(); ++k) {
        const bool feas_k = rho[static_cast<size_t>(k)] <= target;
        if (k + 1 <= n) {
            const bool feas_n = rho[static_cast<size_t>(k + 1)] <= target;
            if (feas_k != feas_n) {
                if (feas_k)
                    bisect_crossing(grid[static_cast<size_t>(k + 1)], grid[static_cast<size_t>(k)]);
                else
                    bisect_crossing(grid[static_cast<size_t>(k)], grid[static_cast<size_t>(k + 1)]);
            }
        }
        // An infeasible local minimum of rho may still dip under beta
        // between grid points (e.g. beta = 0 touching a rank-1 slice);
        // ternary-search it to machine precision.
        if (k > 0 && k < n && !feas_k &&
            rho[static_cast<size_t>(k)] <= rho[static_cast<size_t>(k - 1)] &&
            rho[static_cast<size_t>(k)] <= rho[static_cast<size_t>(k + 1)]) {
            double a_lo = grid[static_cast<size_t>(k - 1)], a_hi = grid[static_cast<size_t>(k + 1)];
            for (int it = 0; it < 120 && s.budget_left(); ++it) {
                const double u = a_lo + (a_hi - a_lo) / 3.0;
                const double v = a_hi - (a_hi - a_lo) / 3.0;
                if (eval_at(u).rho < eval_at(v).rho)
                    a_hi = v;
                else
                    a_lo = u;
            }
            eval_at(0.5 * (a_lo + a_hi));
        }
    }
}

// Channels whose two slices are both product distributions, so that
// rho_m(X;Y|W) = 0 exactly: slice 0 = (r,1-r) x (c,1-c) with the unique
// mixing weight that leaves the complement rank one. This is the family
// that contains the binary Wyner optimum; feasible at every beta.
void sweep_binary_rank1(Search& s) {
    const JointDist2& d = s.d;
    const double p00 = d.pmf(0, 0), p01 = d.pmf(0, 1), p10 = d.pmf(1, 0), p11 = d.pmf(1, 1);
    const double det = p00 * p11 - p01 * p10;

    Channel ch;
    ch.in_x = 2;
    ch.in_y = 2;
    ch.out_w = 2;
    ch.kernel.resize(4, 2);

    // Returns the objective of the (r, c) member, or +inf if the mixing
    // weight or the complementary slice leaves the simplex.
    auto eval_at = [&](double r, double c) {
        const double s0[4] = {r * c, r * (1.0 - c), (1.0 - r) * c, (1.0 - r) * (1.0 - c)};
        const double trace = c * (p11 * r - p01 * (1.0 - r)) +
                             (1.0 - c) * (p00 * (1.0 - r) - p10 * r);
        if (std::abs(trace) < 1e-14) return std::numeric_limits<double>::infinity();
        const double lambda = det / trace;
        if (lambda < 1e-10 || lambda > 1.0 - 1e-10)
            return std::numeric_limits<double>::infinity();
        const double p[4] = {p00, p01, p10, p11};
        for (int cell = 0; cell < 4; ++cell)
            if (p[cell] - lambda * s0[cell] < -1e-12)
                return std::numeric_limits<double>::infinity();
        for (int cell = 0; cell < 4; ++cell) {
            const double k0 = p[cell] > kMassTol ? std::clamp(lambda * s0[cell] / p[cell], 0.0, 1.0)
                                                 : 0.5;
            ch.kernel(cell, 0) = k0;
            ch.kernel(cell, 1) = 1.0 - k0;
        }
        return s.evaluate(ch).obj;
    };

    const int per_axis = 81;
    double best_r = -1.0, best_c = -1.0;
    double best_obj = std::numeric_limits<double>::infinity();
    for (int i = 0; i < per_axis && s.budget_left(); ++i)
        for (int j = 0; j < per_axis && s.budget_left(); ++j) {
            const double r = (i + 0.5) / per_axis;
            const double c = (j + 0.5) / per_axis;
            const double obj = eval_at(r, c);
            if (obj < best_obj) {
                best_obj = obj;
                best_r = r;
                best_c = c;
            }
        }
    if (best_r < 0.0 || !s.budget_left()) return;

    Eigen::VectorXd theta(2);
    theta << std::log(best_r / (1.0 - best_r)), std::log(best_c / (1.0 - best_c));
    SimplexOptions opt;
    opt.max_evals = static_cast<int>(
        std::min<long long>(1500, std::max<long long>(0, s.cfg.max_evals - s.used)));
    opt.step = 0.4;
    if (opt.max_evals < 10) return;
    nelder_mead(
        [&](const Eigen::VectorXd& th) {
            return eval_at(1.0 / (1.0 + std::exp(-th(0))), 1.0 / (1.0 + std::exp(-th(1))));
        },
        theta, opt);
}

// Exhaustive coarse grid over all two-output channels of a 2x2 source
// (4 free parameters), followed by a local simplex polish of the best
// penalized point.
void sweep_binary_w2(Search& s) {
    const int per_axis = std::clamp(
        static_cast<int>(std::floor(std::pow(0.15 * static_cast<double>(s.cfg.max_evals), 0.25))),
        5, 21);
    const double step = 1.0 / (per_axis - 1);

    Channel ch;
    ch.in_x = 2;
    ch.in_y = 2;
    ch.out_w = 2;
    ch.kernel.resize(4, 2);

    Eigen::VectorXd best_t(4);
    double best_pen = std::numeric_limits<double>::infinity();
    Eigen::VectorXd t(4);
    for (int a = 0; a < per_axis; ++a)
        for (int b = 0; b < per_axis; ++b)
            for (int c = 0; c < per_axis; ++c)
                for (int e = 0; e < per_axis; ++e) {
                    if (!s.budget_left()) return;
                    t << a * step, b * step, c * step, e * step;
                    for (int cell = 0; cell < 4; ++cell) {
                        ch.kernel(cell, 0) = t(cell);
                        ch.kernel(cell, 1) = 1.0 - t(cell);
                    }
                    const Candidate cand = s.evaluate(ch);
                    const double excess = std::max(0.0, cand.rho - s.beta);
                    const double pen = cand.obj + s.cfg.penalty_weight * excess * excess;
                    if (pen < best_pen) {
                        best_pen = pen;
                        best_t = t;
                    }
                }

    // polish through a sigmoid map so the simplex stays in bounds
    Eigen::VectorXd theta(4);
    for (int k = 0; k < 4; ++k) {
        const double v = std::clamp(best_t(k), 1e-6, 1.0 - 1e-6);
        theta(k) = std::clamp(std::log(v / (1.0 - v)), -12.0, 12.0);
    }
    auto obj = [&](const Eigen::VectorXd& th) {
        Channel cand = ch;
        for (int cell = 0; cell < 4; ++cell) {
            const double v = 1.0 / (1.0 + std::exp(-th(cell)));
            cand.kernel(cell, 0) = v;
            cand.kernel(cell, 1) = 1.0 - v;
        }
        return s.penalized(cand);
    };
    SimplexOptions opt;
    opt.max_evals = static_cast<int>(std::min<long long>(4000, std::max<long long>(0, s.cfg.max_evals - s.used)));
    opt.step = 0.8;
    if (opt.max_evals > 10) {
        const SimplexResult res = nelder_mead(obj, theta, opt);
        Channel cand = ch;
        for (int cell = 0; cell < 4; ++cell) {
            const double v = 1.0 / (1.0 + std::exp(-res.x(cell)));
            cand.kernel(cell, 0) = v;
            cand.kernel(cell, 1) = 1.0 - v;
        }
        evaluate_with_projections(s, cand);
    }
}

void multi_start_simplex(Search& s) {
    const int nx = s.d.nx(), ny = s.d.ny();
    const int nw = nx * ny;
    const int dim = nx * ny * nw;
    const Channel seed_ch = s.best.feasible ? s.best.ch : Channel::cell_identity(nx, ny);

    for (int r = 0; r < s.cfg.restarts && s.budget_left(); ++r) {
        std::mt19937_64 rng(mix_seed(s.cfg.seed, 1000 + static_cast<uint64_t>(r)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::VectorXd logits(dim);
        if (r % 4 == 0) {
            // perturb the incumbent; pad with noise if its |W| is smaller
            for (int c = 0; c < nx * ny; ++c)
                for (int w = 0; w < nw; ++w) {
                    const double k = w < seed_ch.out_w ? seed_ch.kernel(c, w) : 0.0;
                    logits(c * nw + w) = std::log(std::max(k, 1e-8)) + 0.3 * gauss(rng);
                }
        } else {
            for (int k = 0; k < dim; ++k) logits(k) = 1.5 * gauss(rng);
        }

        auto obj = [&](const Eigen::VectorXd& L) {
            return s.penalized(channel_from_logits(nx, ny, nw, L));
        };
        const long long remaining = s.cfg.max_evals - s.used;
        SimplexOptions opt;
        opt.max_evals = static_cast<int>(std::max<long long>(
            0, remaining / std::max(1, s.cfg.restarts - r)));
        opt.step = 0.7;
        if (opt.max_evals < 2 * dim) break;
        const SimplexResult res = nelder_mead(obj, logits, opt);
        evaluate_with_projections(s, channel_from_logits(nx, ny, nw, res.x));
    }
}

// Swap the Y labels of a 2x2 distribution (kernel rows 0<->1 and 2<->3).
Channel unswap_y_2x2(Channel ch) {
    ch.kernel.row(0).swap(ch.kernel.row(1));
    ch.kernel.row(2).swap(ch.kernel.row(3));
    return ch;
}

} // namespace

double h2(double p) {
    if (p < -kMassTol || p > 1.0 + kMassTol)
        throw OutOfRange("h2 argument must lie in [0, 1]");
    p = std::clamp(p, 0.0, 1.0);
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double h4(double a, double b, double c, double d) {
    for (double t : {a, b, c, d})
        if (t < -kMassTol || t > 1.0 + kMassTol)
            throw OutOfRange("h4 arguments must lie in [0, 1]");
    if (std::abs(a + b + c + d - 1.0) > 1e-9)
        throw OutOfRange("h4 arguments must sum to 1");
    return -xlog2x(std::max(a, 0.0)) - xlog2x(std::max(b, 0.0)) - xlog2x(std::max(c, 0.0)) -
           xlog2x(std::max(d, 0.0));
}

double entropy_xy(const JointDist2& d) {
    double h = 0.0;
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j) h -= xlog2x(d.pmf(i, j));
    return std::max(h, 0.0);
}

double mutual_information(const JointDist2& d) {
    const Eigen::VectorXd px = marginal_x(d);
    const Eigen::VectorXd py = marginal_y(d);
    double mi = 0.0;
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j) {
            const double p = d.pmf(i, j);
            if (p > 0.0) mi += p * std::log2(p / (px(i) * py(j)));
        }
    return std::max(mi, 0.0);
}

double mi_xy_w(const JointDist2& d, const Channel& ch) {
    if (ch.in_x != d.nx() || ch.in_y != d.ny())
        throw ShapeMismatch("channel input sizes do not match the distribution");
    return eval_channel_raw(d, ch).objective;
}

IcfEval icf_evaluate(const JointDist2& d, const Channel& ch) {
    if (ch.in_x != d.nx() || ch.in_y != d.ny())
        throw ShapeMismatch("channel input sizes do not match the distribution");
    return eval_channel_raw(d, ch);
}

IcfPoint icf_minimize(const JointDist2& d, double beta, const OptimizerConfig& cfg) {
    if (beta < -kMassTol || beta > 1.0 + kMassTol)
        throw OutOfRange("beta must lie in [0, 1]");
    beta = std::clamp(beta, 0.0, 1.0);

    IcfPoint point;
    point.beta = beta;

    const double rho_d = maxcorr_svd(d);
    if (beta >= rho_d - 1e-9) {
        // C_beta = 0 from rho_m(X;Y) <= beta on; the constant channel is a witness.
        point.value = 0.0;
        point.raw_value = 0.0;
        point.witness = Channel::constant(d.nx(), d.ny());
        point.constraint_residual = rho_d - beta;
        return point;
    }

    // Canonical Y-orientation for 2x2 sources keeps the search identical
    // under relabeling, so symmetric inputs get bit-identical values.
    JointDist2 work = d;
    bool swapped = false;
    if (d.nx() == 2 && d.ny() == 2 &&
        d.pmf(0, 0) + d.pmf(1, 1) < d.pmf(0, 1) + d.pmf(1, 0)) {
        work.pmf.col(0).swap(work.pmf.col(1));
        swapped = true;
    }

    Search s(work, beta, cfg);

    s.evaluate(Channel::cell_identity(work.nx(), work.ny()));
    s.evaluate(component_channel(work));
    if (work.nx() == 2 && work.ny() == 2) {
        sweep_two_slice(s, 0, 0, 1, 1);
        sweep_two_slice(s, 0, 1, 1, 0);
        sweep_binary_rank1(s);
        sweep_binary_w2(s);
    }
    multi_start_simplex(s);

    if (!s.best.feasible)
        throw OptimizerBudgetExceeded("no feasible channel found within the evaluation budget");

    point.value = std::max(0.0, s.best.obj);
    point.raw_value = point.value;
    point.witness = swapped ? unswap_y_2x2(s.best.ch) : s.best.ch;
    point.constraint_residual = s.best.rho - beta;
    return point;
}

BetaCurve icf_curve(const JointDist2& d, const std::vector<double>& betas,
                    const OptimizerConfig& cfg) {
    for (size_t i = 0; i < betas.size(); ++i) {
        if (betas[i] < -kMassTol || betas[i] > 1.0 + kMassTol)
            throw OutOfRange("beta grid must lie in [0, 1]");
        if (i > 0 && betas[i] < betas[i - 1])
            throw OutOfRange("beta grid must be sorted ascending");
    }

    BetaCurve curve;
    curve.points.resize(betas.size());

    const int n_threads =
        std::max(1, std::min<int>(thread_cap(), static_cast<int>(betas.size())));
    auto run_range = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            OptimizerConfig point_cfg = cfg;
            point_cfg.seed = cfg.seed ^ static_cast<unsigned long long>(i);
            curve.points[i] = icf_minimize(d, betas[i], point_cfg);
        }
    };
    if (n_threads == 1) {
        run_range(0, betas.size());
    } else {
        std::vector<std::thread> workers;
        const size_t chunk = (betas.size() + static_cast<size_t>(n_threads) - 1) /
                             static_cast<size_t>(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            const size_t lo = static_cast<size_t>(t) * chunk;
            const size_t hi = std::min(betas.size(), lo + chunk);
            if (lo >= hi) break;
            workers.emplace_back(run_range, lo, hi);
        }
        for (auto& w : workers) w.join();
    }

    // The constraint only loosens along the grid, so the previous witness
    // stays feasible; carrying it forward enforces the running minimum.
    for (size_t i = 1; i < curve.points.size(); ++i) {
        IcfPoint& cur = curve.points[i];
        const IcfPoint& prev = curve.points[i - 1];
        if (cur.value > prev.value) {
            const IcfEval e = icf_evaluate(d, prev.witness);
            cur.value = prev.value;
            cur.witness = prev.witness;
            cur.constraint_residual = e.rho_w - cur.beta;
        }
    }
    return curve;
}

double wyner_common_info(const JointDist2& d, const OptimizerConfig& cfg) {
    return icf_minimize(d, 0.0, cfg).value;
}

GkEndpoint gk_endpoint_check(const JointDist2& d, const OptimizerConfig& cfg) {
    GkEndpoint out;
    for (double eps : {0.1, 0.01, 0.001})
        out.icf_left_limit_estimate = icf_minimize(d, 1.0 - eps, cfg).value;
    out.gk = gk_common_info(d);
    return out;
}

double dsbs_icf_upper(double p0, double beta) {
    if (p0 < -kMassTol || p0 > 0.5 + kMassTol)
        throw OutOfRange("dsbs crossover must lie in [0, 0.5]");
    if (beta < -kMassTol || beta > 1.0 + kMassTol)
        throw OutOfRange("beta must lie in [0, 1]");
    p0 = std::clamp(p0, 0.0, 0.5);
    beta = std::clamp(beta, 0.0, 1.0);
    if (beta >= 1.0 - 2.0 * p0) return 0.0;
    const double root = std::sqrt((1.0 - 2.0 * p0 - beta) / (1.0 - beta));
    const double a = 0.5 * (1.0 - p0 + root);
    const double b = 0.5 * (1.0 - p0 - root);
    return 1.0 + h2(p0) - h4(a, b, p0 / 2.0, p0 / 2.0);
}

double icf_additivity_upper(const JointDist2& d1, const JointDist2& d2, double beta,
                            const OptimizerConfig& cfg) {
    const Channel w1 = icf_minimize(d1, beta, cfg).witness;
    const Channel w2 = icf_minimize(d2, beta, cfg).witness;
    return mi_xy_w(product_pair(d1, d2), product_channel(w1, w2));
}

} // namespace corrlab
