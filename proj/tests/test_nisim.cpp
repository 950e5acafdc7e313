#include <doctest.h>

#include <cmath>

#include "corrlab/corr.hpp"
#include "corrlab/icf.hpp"
#include "corrlab/nisim.hpp"
#include "helpers.hpp"

using namespace corrlab;

namespace {

OptimizerConfig quick_cfg() {
    OptimizerConfig cfg;
    cfg.restarts = 2;
    cfg.max_evals = 12000;
    cfg.seed = 5;
    return cfg;
}

JointDist2 independent_uniform_2x2() {
    JointDist2 d;
    d.x = Alphabet::iota(2);
    d.y = Alphabet::iota(2);
    d.pmf = Eigen::MatrixXd::Constant(2, 2, 0.25);
    return d;
}

} // namespace

TEST_CASE("mc_outer_check") {
    const JointDist2 src = make_dsbs(0.1);
    const CheckResult ind = mc_outer_check(src, independent_uniform_2x2());
    CHECK(ind.pass);
    CHECK(ind.margin == doctest::Approx(0.8).epsilon(1e-9));

    CHECK_FALSE(mc_outer_check(independent_uniform_2x2(), make_dsbs(0.3)).pass);

    const CheckResult both = mc_outer_check(make_dsbs(0.1), make_dsbs(0.2));
    CHECK(both.pass);
    CHECK(both.margin == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("mi_outer_check") {
    const JointDist2 src = make_dsbs(0.1);
    CHECK(mi_outer_check(src, independent_uniform_2x2()).pass);
    const CheckResult self = mi_outer_check(src, src);
    CHECK(self.pass);
    CHECK(self.margin == doctest::Approx(0.0));

    JointDist2 diag;
    diag.x = Alphabet::iota(2);
    diag.y = Alphabet::iota(2);
    diag.pmf = Eigen::MatrixXd::Identity(2, 2) / 2;
    CHECK_FALSE(mi_outer_check(src, diag).pass); // 1 bit > 1 - h2(.1)
}

TEST_CASE("icf_outer_check") {
    const OptimizerConfig cfg = quick_cfg();
    const std::vector<double> betas = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

    const JointDist2 src = make_dsbs(0.1);
    CHECK(icf_outer_check(src, src, betas, cfg).pass);
    CHECK(icf_outer_check(src, independent_uniform_2x2(), betas, cfg).pass);

    // a less noisy target has the larger curve, e.g. at beta = 0
    const IcfCheckResult fail = icf_outer_check(src, make_dsbs(0.05), betas, cfg);
    CHECK_FALSE(fail.pass);
    CHECK(fail.worst_margin > 0.02);
}

TEST_CASE("inner_search_binary") {
    const JointDist2 src = make_dsbs(0.1);

    // independent target via constant channels
    const InnerResult ind = inner_search_binary(src, 0.5, 0.5, 0.25, 1e-2);
    CHECK(ind.status == InnerResult::Status::yes);

    // identity channels reproduce the source itself
    const Eigen::VectorXd pu = marginal_x(src);
    const InnerResult self = inner_search_binary(src, pu(0), pu(0), src.pmf(0, 0), 1e-2);
    CHECK(self.status == InnerResult::Status::yes);
    // witness channels have valid rows
    CHECK_NOTHROW(validate(self.witness.u_given_x));
    CHECK_NOTHROW(validate(self.witness.v_given_y));

    // q outside the Frechet window is impossible
    CHECK(inner_search_binary(src, 0.5, 0.5, 0.6, 1e-2).status == InnerResult::Status::no);

    auto rng = testutil::rng_for(1);
    CHECK_THROWS_AS(inner_search_binary(testutil::random_dist2(rng, 3, 3), 0.5, 0.5, 0.25),
                    NotBinary);
}

TEST_CASE("binary_inner_q_range brackets the sweep") {
    auto rng = testutil::rng_for(107);
    for (int trial = 0; trial < 20; ++trial) {
        const JointDist2 src = testutil::random_dist2(rng, 2, 2, 1e-2);
        double lo = 0.0, hi = 0.0;
        REQUIRE(binary_inner_q_range(src, 0.5, 0.5, &lo, &hi));
        CHECK(lo <= hi);
        // every corner q is achievable per the sweep; outside is not
        CHECK(inner_search_binary(src, 0.5, 0.5, 0.5 * (lo + hi), 5e-3).status ==
              InnerResult::Status::yes);
        CHECK(inner_search_binary(src, 0.5, 0.5, hi + 0.05, 5e-3).status ==
              InnerResult::Status::no);
    }
}

TEST_CASE("self simulation always passes") {
    const OptimizerConfig cfg = quick_cfg();
    const JointDist2 src = make_dsbs(0.2);
    const BoundVerdict v = nisim_verdict(src, src, {0.0, 0.3, 0.6, 1.0}, cfg);
    CHECK(v.mc.pass);
    CHECK(v.mi.pass);
    CHECK(v.icf.pass);
    CHECK(v.inner.status == InnerResult::Status::yes);
}

TEST_CASE("inner achievable implies all outer bounds pass") {
    auto rng = testutil::rng_for(109);
    const OptimizerConfig cfg = quick_cfg();
    const std::vector<double> betas = {0.0, 0.25, 0.5, 0.75, 1.0};
    int tested = 0;
    for (int trial = 0; trial < 12 && tested < 6; ++trial) {
        const JointDist2 src = testutil::random_dist2(rng, 2, 2, 1e-2);
        // pick a random target achievable by construction
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double a0 = unif(rng), a1 = unif(rng), g0 = unif(rng), g1 = unif(rng);
        JointDist2 tgt;
        tgt.x = Alphabet::iota(2);
        tgt.y = Alphabet::iota(2);
        tgt.pmf = Eigen::MatrixXd::Zero(2, 2);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                const double au = x == 0 ? a0 : a1;
                const double gv = y == 0 ? g0 : g1;
                tgt.pmf(0, 0) += src.pmf(x, y) * au * gv;
                tgt.pmf(0, 1) += src.pmf(x, y) * au * (1 - gv);
                tgt.pmf(1, 0) += src.pmf(x, y) * (1 - au) * gv;
                tgt.pmf(1, 1) += src.pmf(x, y) * (1 - au) * (1 - gv);
            }
        const BoundVerdict v = nisim_verdict(src, tgt, betas, cfg);
        if (v.inner.status != InnerResult::Status::yes) continue;
        ++tested;
        CHECK(v.mc.pass);
        CHECK(v.mi.pass);
        CHECK(v.icf.pass);
    }
    CHECK(tested > 0);
}

TEST_CASE("fig1 rows: symmetry, nesting, and known cases") {
    OptimizerConfig cfg = quick_cfg();
    const double q_step = 0.005, icf_q_step = 0.05;
    const std::vector<double> p_grid = {1.0 / 16.0, 0.25};
    const std::vector<Fig1Row> rows = fig1_rows(p_grid, q_step, icf_q_step, cfg);
    REQUIRE(rows.size() == 2);

    // independent source: every bound collapses to the independent target
    const Fig1Row& ind = rows[0];
    CHECK(ind.mc_lo == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(ind.mc_hi == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(ind.mi_lo == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(ind.inner_lo == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(ind.inner_hi == doctest::Approx(0.25).epsilon(1e-6));

    // perfectly correlated source: rho_m = 1 so the mc bound accepts all q
    const Fig1Row& corr = rows[1];
    CHECK(corr.mc_lo == doctest::Approx(0.0));
    CHECK(corr.mc_hi == doctest::Approx(0.5));

    for (const Fig1Row& r : rows) {
        // symmetry about q = 1/4
        CHECK(std::abs((r.mc_lo + r.mc_hi) - 0.5) < 1e-3);
        CHECK(std::abs((r.mi_lo + r.mi_hi) - 0.5) < 1e-3);
        CHECK(std::abs((r.icf_lo + r.icf_hi) - 0.5) < 1e-3);
        CHECK(std::abs((r.inner_lo + r.inner_hi) - 0.5) < 1e-3);
        // nesting: inner within icf within mc; inner within mi
        CHECK(r.icf_lo >= r.mc_lo - 1e-3);
        CHECK(r.icf_hi <= r.mc_hi + 1e-3);
        CHECK(r.inner_lo >= r.icf_lo - icf_q_step - 1e-3);
        CHECK(r.inner_hi <= r.icf_hi + icf_q_step + 1e-3);
        CHECK(r.inner_lo >= r.mi_lo - 1e-3);
        CHECK(r.inner_hi <= r.mi_hi + 1e-3);
    }
}
