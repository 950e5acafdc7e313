#include "corrlab/optim.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace corrlab {

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const SimplexOptions& opt) {
    const int n = static_cast<int>(start.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return objective(x);
    };

    std::vector<Eigen::VectorXd> pts(static_cast<size_t>(n + 1), start);
    std::vector<double> f(static_cast<size_t>(n + 1));
    for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i + 1)](i) += opt.step;
    for (int i = 0; i <= n; ++i) f[static_cast<size_t>(i)] = eval(pts[static_cast<size_t>(i)]);

    std::vector<int> order(static_cast<size_t>(n + 1));
    std::iota(order.begin(), order.end(), 0);

    while (evals < opt.max_evals) {
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return f[static_cast<size_t>(a)] < f[static_cast<size_t>(b)]; });
        const int best = order.front(), worst = order.back();
        const int second_worst = order[static_cast<size_t>(n - 1)];
        if (f[static_cast<size_t>(worst)] - f[static_cast<size_t>(best)] < opt.ftol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[static_cast<size_t>(i)];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + alpha * (centroid - pts[static_cast<size_t>(worst)]);
        const double fr = eval(reflected);
        if (fr < f[static_cast<size_t>(best)]) {
            const Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
            const double fe = eval(expanded);
            if (fe < fr) {
                pts[static_cast<size_t>(worst)] = expanded;
                f[static_cast<size_t>(worst)] = fe;
            } else {
                pts[static_cast<size_t>(worst)] = reflected;
                f[static_cast<size_t>(worst)] = fr;
            }
            continue;
        }
        if (fr < f[static_cast<size_t>(second_worst)]) {
            pts[static_cast<size_t>(worst)] = reflected;
            f[static_cast<size_t>(worst)] = fr;
            continue;
        }
        const bool outside = fr < f[static_cast<size_t>(worst)];
        const Eigen::VectorXd contracted =
            outside ? centroid + rho * (reflected - centroid)
                    : centroid + rho * (pts[static_cast<size_t>(worst)] - centroid);
        const double fc = eval(contracted);
        if (fc < std::min(fr, f[static_cast<size_t>(worst)])) {
            pts[static_cast<size_t>(worst)] = contracted;
            f[static_cast<size_t>(worst)] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (int i = 0; i <= n; ++i) {
            if (i == best) continue;
            pts[static_cast<size_t>(i)] =
                pts[static_cast<size_t>(best)] + sigma * (pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(best)]);
            f[static_cast<size_t>(i)] = eval(pts[static_cast<size_t>(i)]);
            if (evals >= opt.max_evals) break;
        }
    }

    SimplexResult res;
    const size_t best = static_cast<size_t>(*std::min_element(
        order.begin(), order.end(),
        [&](int a, int b) { return f[static_cast<size_t>(a)] < f[static_cast<size_t>(b)]; }));
    res.x = pts[best];
    res.f = f[best];
    res.evals = evals;
    return res;
}

} // namespace corrlab
