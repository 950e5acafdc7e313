#include "corrlab/nisim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "corrlab/corr.hpp"

namespace corrlab {

namespace {

constexpr double kPassTol = 1e-9;
constexpr double kInnerTol = 1e-3;

// Feasible range of P(U=0|X=0) when P(U=0|X=1) is solved from the
// marginal constraint px0*a0 + px1*a1 = pu0. Returns false if empty.
bool crossover_range(double px0, double px1, double pu0, double* lo, double* hi) {
    if (px1 <= kMassTol) {
        // degenerate input: the marginal fixes a0 alone
        if (px0 <= kMassTol) return false;
        const double a0 = pu0 / px0;
        if (a0 < -1e-9 || a0 > 1.0 + 1e-9) return false;
        *lo = *hi = std::clamp(a0, 0.0, 1.0);
        return true;
    }
    // a1(a0) = (pu0 - px0*a0)/px1 must lie in [0,1]
    double lo_a0 = 0.0, hi_a0 = 1.0;
    if (px0 > kMassTol) {
        const double at_a1_0 = pu0 / px0;            // a0 when a1 = 0
        const double at_a1_1 = (pu0 - px1) / px0;    // a0 when a1 = 1
        lo_a0 = std::max(lo_a0, std::min(at_a1_0, at_a1_1));
        hi_a0 = std::min(hi_a0, std::max(at_a1_0, at_a1_1));
    } else {
        // a0 unconstrained; need pu0/px1 in [0,1]
        const double a1 = pu0 / px1;
        if (a1 < -1e-9 || a1 > 1.0 + 1e-9) return false;
    }
    if (lo_a0 > hi_a0 + 1e-12) return false;
    *lo = std::clamp(lo_a0, 0.0, 1.0);
    *hi = std::clamp(hi_a0, 0.0, 1.0);
    return true;
}

double solve_partner(double px0, double px1, double pu0, double a0) {
    if (px1 <= kMassTol) return 0.5; // irrelevant, X=1 has no mass
    return std::clamp((pu0 - px0 * a0) / px1, 0.0, 1.0);
}

double q_of(const JointDist2& src, double a0, double a1, double g0, double g1) {
    const double ax[2] = {a0, a1};
    const double gy[2] = {g0, g1};
    double q = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) q += src.pmf(i, j) * ax[i] * gy[j];
    return q;
}

Channel one_sided_channel(double k0, double k1) {
    Channel ch;
    ch.in_x = 2;
    ch.in_y = 1;
    ch.out_w = 2;
    ch.kernel.resize(2, 2);
    ch.kernel << k0, 1.0 - k0, k1, 1.0 - k1;
    return ch;
}

} // namespace

CheckResult mc_outer_check(const JointDist2& src, const JointDist2& tgt) {
    const double margin = maxcorr_svd(src) - maxcorr_svd(tgt);
    return {margin >= -kPassTol, margin};
}

CheckResult mi_outer_check(const JointDist2& src, const JointDist2& tgt) {
    const double margin = mutual_information(src) - mutual_information(tgt);
    return {margin >= -kPassTol, margin};
}

IcfCheckResult icf_outer_check(const JointDist2& src, const JointDist2& tgt,
                               const std::vector<double>& betas, const OptimizerConfig& cfg,
                               double slack_bits) {
    IcfCheckResult out;
    const double rho_src = maxcorr_svd(src);
    const double rho_tgt = maxcorr_svd(tgt);

    // C_beta(tgt) > 0 = C_beta(src) on [rho_m(src), rho_m(tgt)), so a
    // larger target correlation is an exact failure of this bound.
    if (rho_tgt > rho_src + kPassTol) {
        out.pass = false;
        out.worst_beta = rho_src;
        OptimizerConfig probe = cfg;
        out.worst_margin = icf_minimize(tgt, rho_src, probe).value;
        return out;
    }

    const BetaCurve src_curve = icf_curve(src, betas, cfg);
    const BetaCurve tgt_curve = icf_curve(tgt, betas, cfg);
    out.pass = true;
    out.worst_margin = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < betas.size(); ++i) {
        const double margin = tgt_curve.points[i].value - src_curve.points[i].value;
        if (margin > out.worst_margin) {
            out.worst_margin = margin;
            out.worst_beta = betas[i];
        }
        if (margin > slack_bits) out.pass = false;
    }
    return out;
}

bool binary_inner_q_range(const JointDist2& src, double pu0, double pv0, double* q_min,
                          double* q_max) {
    if (src.nx() != 2 || src.ny() != 2)
        throw NotBinary("inner bound search needs a 2x2 source");
    const Eigen::VectorXd px = marginal_x(src);
    const Eigen::VectorXd py = marginal_y(src);
    double a_lo, a_hi, g_lo, g_hi;
    if (!crossover_range(px(0), px(1), pu0, &a_lo, &a_hi)) return false;
    if (!crossover_range(py(0), py(1), pv0, &g_lo, &g_hi)) return false;

    // q is bilinear in (a0, g0) over a rectangle, so extremes sit at corners.
    *q_min = std::numeric_limits<double>::infinity();
    *q_max = -std::numeric_limits<double>::infinity();
    for (double a0 : {a_lo, a_hi})
        for (double g0 : {g_lo, g_hi}) {
            const double q = q_of(src, a0, solve_partner(px(0), px(1), pu0, a0), g0,
                                  solve_partner(py(0), py(1), pv0, g0));
            *q_min = std::min(*q_min, q);
            *q_max = std::max(*q_max, q);
        }
    return true;
}

InnerResult inner_search_binary(const JointDist2& src, double pu0, double pv0, double q,
                                double grid_step) {
    if (src.nx() != 2 || src.ny() != 2)
        throw NotBinary("inner bound search needs a 2x2 source");
    InnerResult out;
    out.status = InnerResult::Status::no;

    const Eigen::VectorXd px = marginal_x(src);
    const Eigen::VectorXd py = marginal_y(src);
    double a_lo, a_hi, g_lo, g_hi;
    if (!crossover_range(px(0), px(1), pu0, &a_lo, &a_hi) ||
        !crossover_range(py(0), py(1), pv0, &g_lo, &g_hi))
        return out;

    const int na = std::max(1, static_cast<int>(std::round((a_hi - a_lo) / grid_step))) + 1;
    const int ng = std::max(1, static_cast<int>(std::round((g_hi - g_lo) / grid_step))) + 1;
    double best_err = std::numeric_limits<double>::infinity();
    double best[4] = {0, 0, 0, 0};
    for (int ia = 0; ia < na; ++ia) {
        const double a0 = na == 1 ? a_lo : a_lo + (a_hi - a_lo) * ia / (na - 1);
        const double a1 = solve_partner(px(0), px(1), pu0, a0);
        for (int ig = 0; ig < ng; ++ig) {
            const double g0 = ng == 1 ? g_lo : g_lo + (g_hi - g_lo) * ig / (ng - 1);
            const double g1 = solve_partner(py(0), py(1), pv0, g0);
            const double err = std::abs(q_of(src, a0, a1, g0, g1) - q);
            if (err < best_err) {
                best_err = err;
                best[0] = a0;
                best[1] = a1;
                best[2] = g0;
                best[3] = g1;
            }
        }
    }
    if (best_err <= kInnerTol) {
        out.status = InnerResult::Status::yes;
        out.witness.u_given_x = one_sided_channel(best[0], best[1]);
        out.witness.v_given_y = one_sided_channel(best[2], best[3]);
    }
    return out;
}

BoundVerdict nisim_verdict(const JointDist2& src, const JointDist2& tgt,
                           const std::vector<double>& betas, const OptimizerConfig& cfg) {
    BoundVerdict v;
    v.mc = mc_outer_check(src, tgt);
    v.mi = mi_outer_check(src, tgt);
    v.icf = icf_outer_check(src, tgt, betas, cfg);
    if (src.nx() == 2 && src.ny() == 2 && tgt.nx() == 2 && tgt.ny() == 2) {
        const Eigen::VectorXd pu = marginal_x(tgt);
        const Eigen::VectorXd pv = marginal_y(tgt);
        v.inner = inner_search_binary(src, pu(0), pv(0), tgt.pmf(0, 0));
    } else {
        v.inner.status = InnerResult::Status::unknown;
    }
    return v;
}

std::vector<Fig1Row> fig1_rows(const std::vector<double>& p_grid, double q_step,
                               double icf_q_step, const OptimizerConfig& cfg) {
    std::vector<double> betas;
    for (int k = 0; k <= 20; ++k) betas.push_back(k * 0.05);

    const int n_fine = static_cast<int>(std::round(0.5 / q_step));
    const int n_coarse = static_cast<int>(std::round(0.5 / icf_q_step));

    // Target curves depend only on q, and q and 1/2 - q give the same
    // distribution up to relabeling; cache per canonical key.
    std::map<long long, BetaCurve> tgt_cache;
    auto tgt_curve = [&](double q) -> const BetaCurve& {
        const double canon = std::max(q, 0.5 - q);
        const long long key = std::llround(canon * 1e9);
        auto it = tgt_cache.find(key);
        if (it == tgt_cache.end())
            it = tgt_cache.emplace(key, icf_curve(make_binary(0.5, 0.5, canon), betas, cfg)).first;
        return it->second;
    };

    std::vector<Fig1Row> rows;
    rows.reserve(p_grid.size());
    for (size_t pi = 0; pi < p_grid.size(); ++pi) {
        const double p = p_grid[pi];
        const JointDist2 src = make_binary(0.25, 0.25, p);
        const double rho_src = maxcorr_svd(src);
        const double mi_src = mutual_information(src);

        Fig1Row row;
        row.p = p;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.mc_lo = row.mi_lo = row.icf_lo = row.inner_lo = nan;
        row.mc_hi = row.mi_hi = row.icf_hi = row.inner_hi = nan;

        auto extend = [](double q, double* lo, double* hi) {
            if (std::isnan(*lo)) {
                *lo = *hi = q;
            } else {
                *lo = std::min(*lo, q);
                *hi = std::max(*hi, q);
            }
        };

        for (int k = 0; k <= n_fine; ++k) {
            const double q = k * q_step;
            const JointDist2 tgt = make_binary(0.5, 0.5, q);
            if (maxcorr_svd(tgt) <= rho_src + kPassTol) extend(q, &row.mc_lo, &row.mc_hi);
            if (mutual_information(tgt) <= mi_src + kPassTol) extend(q, &row.mi_lo, &row.mi_hi);
        }

        OptimizerConfig row_cfg = cfg;
        row_cfg.seed = cfg.seed ^ (0x5151ull * (pi + 1));
        const BetaCurve src_curve = icf_curve(src, betas, row_cfg);
        for (int k = 0; k <= n_coarse; ++k) {
            const double q = k * icf_q_step;
            const JointDist2 tgt = make_binary(0.5, 0.5, q);
            if (maxcorr_svd(tgt) > rho_src + kPassTol) continue; // exact positivity failure
            const BetaCurve& tc = tgt_curve(q);
            bool ok = true;
            for (size_t i = 0; i < betas.size() && ok; ++i)
                ok = tc.points[i].value <= src_curve.points[i].value + 0.02;
            if (ok) extend(q, &row.icf_lo, &row.icf_hi);
        }

        double q_min = 0.0, q_max = 0.0;
        if (binary_inner_q_range(src, 0.5, 0.5, &q_min, &q_max)) {
            row.inner_lo = q_min;
            row.inner_hi = q_max;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace corrlab
