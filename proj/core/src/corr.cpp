#include "corrlab/corr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/SVD>

namespace corrlab {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Mean and variance of the X labels under one column/row of joint mass
// `w` (not necessarily normalized); returns the conditional variance and
// writes the conditional mean.
double cond_var(const Eigen::VectorXd& w, const std::vector<double>& labels, double mass,
                double* mean_out) {
    double m = 0.0;
    for (int i = 0; i < w.size(); ++i) m += w(i) * labels[static_cast<size_t>(i)];
    m /= mass;
    double v = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        const double c = labels[static_cast<size_t>(i)] - m;
        v += w(i) * c * c;
    }
    if (mean_out) *mean_out = m;
    return v / mass;
}

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

Moments2 moments(const JointDist2& d) {
    Moments2 m;
    double exy = 0.0;
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j) {
            const double p = d.pmf(i, j);
            m.mean_x += p * d.x.labels[static_cast<size_t>(i)];
            m.mean_y += p * d.y.labels[static_cast<size_t>(j)];
            exy += p * d.x.labels[static_cast<size_t>(i)] * d.y.labels[static_cast<size_t>(j)];
        }
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j) {
            const double p = d.pmf(i, j);
            const double cx = d.x.labels[static_cast<size_t>(i)] - m.mean_x;
            const double cy = d.y.labels[static_cast<size_t>(j)] - m.mean_y;
            m.var_x += p * cx * cx;
            m.var_y += p * cy * cy;
        }
    m.cov_xy = exy - m.mean_x * m.mean_y;
    return m;
}

CondMoments cond_moments(const JointDist3& d) {
    CondMoments out;
    for (const auto& slice : d.pmf) {
        const double pu = slice.sum();
        if (pu <= kMassTol) continue;
        JointDist2 s;
        s.x = d.x;
        s.y = d.y;
        s.pmf = slice / pu;
        const Moments2 m = moments(s);
        out.e_var_x += pu * m.var_x;
        out.e_var_y += pu * m.var_y;
        out.e_cov_xy += pu * m.cov_xy;
    }
    return out;
}

double e_var_x_given_y(const JointDist2& d) {
    double acc = 0.0;
    for (int j = 0; j < d.ny(); ++j) {
        const double py = d.pmf.col(j).sum();
        if (py <= kMassTol) continue;
        acc += py * cond_var(d.pmf.col(j), d.x.labels, py, nullptr);
    }
    return acc;
}

double e_var_x_given_yu(const JointDist3& d) {
    double acc = 0.0;
    for (const auto& slice : d.pmf)
        for (int j = 0; j < slice.cols(); ++j) {
            const double pyu = slice.col(j).sum();
            if (pyu <= kMassTol) continue;
            acc += pyu * cond_var(slice.col(j), d.x.labels, pyu, nullptr);
        }
    return acc;
}

double pearson(const JointDist2& d) {
    const Moments2 m = moments(d);
    if (m.var_x <= kVarTol || m.var_y <= kVarTol) return 0.0;
    return m.cov_xy / (std::sqrt(m.var_x) * std::sqrt(m.var_y));
}

double cond_pearson(const JointDist3& d) {
    const CondMoments m = cond_moments(d);
    if (m.e_var_x * m.e_var_y <= kVarTol) return 0.0;
    return m.e_cov_xy / (std::sqrt(m.e_var_x) * std::sqrt(m.e_var_y));
}

double corr_ratio(const JointDist2& d) {
    const Moments2 m = moments(d);
    if (m.var_x <= kVarTol) return 0.0;
    return clamp01(std::sqrt(std::max(0.0, 1.0 - e_var_x_given_y(d) / m.var_x)));
}

double cond_corr_ratio(const JointDist3& d) {
    const CondMoments m = cond_moments(d);
    if (m.e_var_x <= kVarTol) return 0.0;
    return clamp01(std::sqrt(std::max(0.0, 1.0 - e_var_x_given_yu(d) / m.e_var_x)));
}

double mmse(const JointDist3& d) { return e_var_x_given_yu(d); }

QMatrix q_matrix(const JointDist2& d) {
    const Eigen::VectorXd px = marginal_x(d);
    const Eigen::VectorXd py = marginal_y(d);
    QMatrix q;
    for (int i = 0; i < d.nx(); ++i)
        if (px(i) > kMassTol) q.kept_x.push_back(i);
    for (int j = 0; j < d.ny(); ++j)
        if (py(j) > kMassTol) q.kept_y.push_back(j);
    if (q.kept_x.empty() || q.kept_y.empty())
        throw DegenerateSupport("distribution has no supported row or column");
    q.entries.resize(static_cast<int>(q.kept_x.size()), static_cast<int>(q.kept_y.size()));
    for (size_t a = 0; a < q.kept_x.size(); ++a)
        for (size_t b = 0; b < q.kept_y.size(); ++b) {
            const int i = q.kept_x[a], j = q.kept_y[b];
            q.entries(static_cast<int>(a), static_cast<int>(b)) =
                d.pmf(i, j) / std::sqrt(px(i) * py(j));
        }
    return q;
}

double maxcorr_svd(const JointDist2& d) {
    const QMatrix q = q_matrix(d);
    if (q.entries.rows() < 2 || q.entries.cols() < 2) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q.entries);
    return clamp01(svd.singularValues()(1));
}

double maxcorr_binary_formula(const JointDist2& d) {
    if (d.nx() != 2 || d.ny() != 2)
        throw NotBinary("binary maximal-correlation formula needs 2x2 alphabets");
    const Eigen::VectorXd px = marginal_x(d);
    const Eigen::VectorXd py = marginal_y(d);
    if (px.minCoeff() <= kMassTol || py.minCoeff() <= kMassTol)
        throw NotBinary("binary formula needs all four marginal masses positive");
    double s = -1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += d.pmf(i, j) * d.pmf(i, j) / (px(i) * py(j));
    return std::sqrt(clamp01(s));
}

double cond_maxcorr(const JointDist3& d) {
    double best = 0.0;
    for (int u = 0; u < d.nu(); ++u) {
        if (d.pmf[static_cast<size_t>(u)].sum() <= kMassTol) continue;
        best = std::max(best, maxcorr_svd(condition_on_u(d, u)));
    }
    return best;
}

double maxcorr_bruteforce(const JointDist2& d, int restarts, int iters,
                          unsigned long long seed) {
    const Eigen::VectorXd px = marginal_x(d);
    const Eigen::VectorXd py = marginal_y(d);
    const int nx = d.nx(), ny = d.ny();

    // Center and scale a score vector to zero mean / unit variance under
    // the marginal; returns false for a degenerate (constant) score.
    auto standardize = [](Eigen::VectorXd& f, const Eigen::VectorXd& p) {
        const double mean = f.dot(p);
        f.array() -= mean;
        double var = 0.0;
        for (int i = 0; i < f.size(); ++i) var += p(i) * f(i) * f(i);
        if (var <= kVarTol) return false;
        f /= std::sqrt(var);
        return true;
    };

    double best = 0.0;
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(r)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::VectorXd g(ny);
        for (int j = 0; j < ny; ++j) g(j) = gauss(rng);
        if (!standardize(g, py)) continue;

        Eigen::VectorXd f(nx);
        double prev = -1.0;
        for (int it = 0; it < iters; ++it) {
            // f(x) <- E[g(Y) | X=x], then renormalize.
            for (int i = 0; i < nx; ++i) {
                if (px(i) <= kMassTol) {
                    f(i) = 0.0;
                    continue;
                }
                f(i) = d.pmf.row(i).dot(g) / px(i);
            }
            if (!standardize(f, px)) break;
            // g(y) <- E[f(X) | Y=y].
            for (int j = 0; j < ny; ++j) {
                if (py(j) <= kMassTol) {
                    g(j) = 0.0;
                    continue;
                }
                g(j) = d.pmf.col(j).dot(f) / py(j);
            }
            if (!standardize(g, py)) break;
            double rho = 0.0;
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j) rho += d.pmf(i, j) * f(i) * g(j);
            rho = std::abs(rho);
            best = std::max(best, rho);
            if (rho - prev < 1e-12 && it > 0) break;
            prev = rho;
        }
    }
    return clamp01(best);
}

CorrelationReport report(const JointDist2& d) {
    CorrelationReport r;
    r.pearson = pearson(d);
    r.theta_xy = corr_ratio(d);
    r.theta_yx = corr_ratio(transpose(d));
    r.maxcorr = maxcorr_svd(d);
    return r;
}

CorrelationReport cond_report(const JointDist3& d) {
    CorrelationReport r;
    r.pearson = cond_pearson(d);
    r.theta_xy = cond_corr_ratio(d);
    r.theta_yx = cond_corr_ratio(transpose_xy(d));
    r.maxcorr = cond_maxcorr(d);
    return r;
}

CorrelationReport event_conditional(const JointDist3& d, int u) {
    return report(condition_on_u(d, u));
}

Eigen::MatrixXi support_components(const JointDist2& d, int* n_components) {
    const int nx = d.nx(), ny = d.ny();
    // Union-find over x-nodes [0,nx) and y-nodes [nx, nx+ny).
    std::vector<int> parent(static_cast<size_t>(nx + ny));
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            if (d.pmf(i, j) > kMassTol) unite(i, nx + j);

    Eigen::MatrixXi comp = Eigen::MatrixXi::Constant(nx, ny, -1);
    std::vector<int> root_to_comp(static_cast<size_t>(nx + ny), -1);
    int next = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            if (d.pmf(i, j) > kMassTol) {
                const int root = find(i);
                if (root_to_comp[static_cast<size_t>(root)] < 0)
                    root_to_comp[static_cast<size_t>(root)] = next++;
                comp(i, j) = root_to_comp[static_cast<size_t>(root)];
            }
    if (n_components) *n_components = next;
    return comp;
}

double gk_common_info(const JointDist2& d, Unit unit) {
    int n = 0;
    const Eigen::MatrixXi comp = support_components(d, &n);
    std::vector<double> mass(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j)
            if (comp(i, j) >= 0) mass[static_cast<size_t>(comp(i, j))] += d.pmf(i, j);
    double h = 0.0;
    for (double m : mass)
        if (m > 0.0) h -= m * std::log2(m);
    return std::max(0.0, h) * bits_to(unit);
}

} // namespace corrlab
