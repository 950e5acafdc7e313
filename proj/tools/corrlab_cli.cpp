// Command-line front-end: subcommands corr, icf, gaussian, nisim.
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 optimizer budget.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "corrlab/corr.hpp"
#include "corrlab/dist.hpp"
#include "corrlab/dist_io.hpp"
#include "corrlab/gaussian.hpp"
#include "corrlab/icf.hpp"
#include "corrlab/nisim.hpp"
#include "corrlab/unit.hpp"
#include "corrlab/version.hpp"

namespace {

using namespace corrlab;

// All numeric output at 12 significant digits.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) {
        try {
            out.push_back(std::stod(spec));
        } catch (...) {
            throw OutOfRange("malformed grid spec: " + spec);
        }
        return out;
    }
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw OutOfRange("grid spec must be start:step:end");
    double start, step, end;
    try {
        start = std::stod(spec.substr(0, c1));
        step = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        end = std::stod(spec.substr(c2 + 1));
    } catch (...) {
        throw OutOfRange("malformed grid spec: " + spec);
    }
    if (step <= 0.0 || end < start - 1e-12)
        throw OutOfRange("grid spec needs step > 0 and end >= start");
    for (int k = 0;; ++k) {
        const double v = start + k * step;
        if (v > end + 1e-12) break;
        out.push_back(std::min(v, end));
    }
    return out;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ParseError("cannot write output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

struct OptimizerFlags {
    int restarts = 16;
    long long max_evals = 200000;
    double constraint_tol = 1e-6;
    double penalty = 100.0;
    unsigned long long seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--restarts", restarts, "optimizer restarts per beta point");
        cmd->add_option("--max-evals", max_evals, "channel-evaluation budget per beta point");
        cmd->add_option("--tol", constraint_tol, "constraint tolerance on rho_m(X;Y|W) - beta");
        cmd->add_option("--penalty", penalty, "exterior penalty weight");
        cmd->add_option("--seed", seed, "RNG seed (outputs are deterministic per seed)");
    }
    OptimizerConfig config() const {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.max_evals = max_evals;
        cfg.constraint_tol = constraint_tol;
        cfg.penalty_weight = penalty;
        cfg.seed = seed;
        return cfg;
    }
};

void print_report(std::ostream& os, const char* prefix, const CorrelationReport& r) {
    os << prefix << "pearson\t" << fmt(r.pearson) << "\n";
    os << prefix << "theta_xy\t" << fmt(r.theta_xy) << "\n";
    os << prefix << "theta_yx\t" << fmt(r.theta_yx) << "\n";
    os << prefix << "maxcorr_svd\t" << fmt(r.maxcorr) << "\n";
}

int run_corr(const std::string& input, const std::string& out_path, bool verify, int restarts,
             int iters, unsigned long long seed, const std::string& dump_path) {
    const AnyDist any = read_dist(input);
    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# corrlab corr " << kVersion << " seed=" << seed << " input=" << input << "\n";

    if (std::holds_alternative<JointDist2>(any)) {
        const JointDist2& d = std::get<JointDist2>(any);
        print_report(os, "", report(d));
        if (verify)
            os << "maxcorr_bruteforce\t" << fmt(maxcorr_bruteforce(d, restarts, iters, seed))
               << "\n";
        if (!dump_path.empty()) write_dist(d, dump_path);
        return 0;
    }

    const JointDist3& d = std::get<JointDist3>(any);
    const JointDist2 xy = marginal_xy(d);
    print_report(os, "", report(xy));
    if (verify)
        os << "maxcorr_bruteforce\t" << fmt(maxcorr_bruteforce(xy, restarts, iters, seed)) << "\n";
    const CorrelationReport c = cond_report(d);
    os << "cond_pearson\t" << fmt(c.pearson) << "\n";
    os << "cond_theta_xy\t" << fmt(c.theta_xy) << "\n";
    os << "cond_theta_yx\t" << fmt(c.theta_yx) << "\n";
    os << "cond_maxcorr\t" << fmt(c.maxcorr) << "\n";
    os << "# event-conditional, one row per supported u\n";
    os << "u\tp_u\tpearson\ttheta_xy\ttheta_yx\tmaxcorr\n";
    const Eigen::VectorXd pu = marginal_u(d);
    for (int u = 0; u < d.nu(); ++u) {
        if (pu(u) <= kMassTol) continue;
        const CorrelationReport e = event_conditional(d, u);
        os << u << "\t" << fmt(pu(u)) << "\t" << fmt(e.pearson) << "\t" << fmt(e.theta_xy)
           << "\t" << fmt(e.theta_yx) << "\t" << fmt(e.maxcorr) << "\n";
    }
    if (!dump_path.empty()) write_dist(d, dump_path);
    return 0;
}

int run_icf(const std::string& input, double dsbs_p0, bool has_dsbs,
            const std::string& grid_spec, const std::string& out_path,
            const std::string& witness_dir, const OptimizerFlags& flags) {
    if (input.empty() == !has_dsbs)
        throw OutOfRange("icf needs exactly one of an input file or --dsbs");
    const JointDist2 d = has_dsbs ? make_dsbs(dsbs_p0) : read_dist2(input);
    const std::vector<double> betas = parse_grid(grid_spec);
    const OptimizerConfig cfg = flags.config();
    const BetaCurve curve = icf_curve(d, betas, cfg);

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# corrlab icf " << kVersion << " seed=" << cfg.seed << " restarts=" << cfg.restarts
       << " max_evals=" << cfg.max_evals << " constraint_tol=" << fmt(cfg.constraint_tol)
       << " penalty=" << fmt(cfg.penalty_weight) << " input="
       << (has_dsbs ? "dsbs:" + fmt(dsbs_p0) : input) << "\n";
    os << "beta\tvalue_bits\traw_value_bits\tconstraint_residual\twitness";
    if (has_dsbs) os << "\tclosed_form_bits";
    os << "\n";
    for (size_t i = 0; i < curve.points.size(); ++i) {
        const IcfPoint& pt = curve.points[i];
        std::string witness = "-";
        if (!witness_dir.empty()) {
            witness = witness_dir + "/witness_" + std::to_string(i) + ".json";
            write_channel(pt.witness, witness);
        }
        os << fmt(pt.beta) << "\t" << fmt(pt.value) << "\t" << fmt(pt.raw_value) << "\t"
           << fmt(pt.constraint_residual) << "\t" << witness;
        if (has_dsbs) os << "\t" << fmt(dsbs_icf_upper(dsbs_p0, pt.beta));
        os << "\n";
    }
    return 0;
}

int run_gaussian(double rho0, const std::string& grid_spec, const std::string& unit_name_in,
                 bool lower_bound, double h_joint, const std::string& out_path) {
    const Unit unit = parse_unit(unit_name_in);
    const std::vector<double> betas = parse_grid(grid_spec);
    const GaussianPair g{rho0};

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# corrlab gaussian " << kVersion << " rho0=" << fmt(rho0) << " unit="
       << unit_name(unit) << (lower_bound ? " h_joint=" + fmt(h_joint) : "") << "\n";
    os << "beta\tvalue_" << unit_name(unit);
    if (lower_bound) os << "\tlower_bound_" << unit_name(unit);
    os << "\n";
    for (double beta : betas) {
        if (beta < 0.0 || beta > 1.0) throw OutOfRange("beta grid must lie in [0, 1]");
        os << fmt(beta) << "\t" << fmt(gaussian_icf(g, beta, unit));
        if (lower_bound)
            os << "\t" << fmt(continuous_icf_lower(h_joint, rho0, beta) * nats_to(unit));
        os << "\n";
    }
    return 0;
}

int run_nisim(const std::string& src_path, const std::string& tgt_path, bool fig1,
              const std::string& p_grid_spec, double q_step, double icf_q_step,
              const std::string& grid_spec, const std::string& out_path,
              const OptimizerFlags& flags) {
    const OptimizerConfig cfg = flags.config();
    Output out(out_path);
    std::ostream& os = out.stream();

    if (fig1) {
        const std::vector<double> p_grid =
            parse_grid(p_grid_spec.empty() ? "0:0.025:0.25" : p_grid_spec);
        const std::vector<Fig1Row> rows = fig1_rows(p_grid, q_step, icf_q_step, cfg);
        os << "# corrlab nisim-fig1 " << kVersion << " seed=" << cfg.seed
           << " q_step=" << fmt(q_step) << " icf_q_step=" << fmt(icf_q_step)
           << " restarts=" << cfg.restarts << " max_evals=" << cfg.max_evals << "\n";
        os << "p\tq_inner_lo\tq_inner_hi\tq_icf_lo\tq_icf_hi\tq_mc_lo\tq_mc_hi\tq_mi_lo\tq_mi_hi\n";
        for (const Fig1Row& r : rows)
            os << fmt(r.p) << "\t" << fmt(r.inner_lo) << "\t" << fmt(r.inner_hi) << "\t"
               << fmt(r.icf_lo) << "\t" << fmt(r.icf_hi) << "\t" << fmt(r.mc_lo) << "\t"
               << fmt(r.mc_hi) << "\t" << fmt(r.mi_lo) << "\t" << fmt(r.mi_hi) << "\n";
        return 0;
    }

    if (src_path.empty() || tgt_path.empty())
        throw OutOfRange("nisim needs --src and --tgt, or --fig1");
    const JointDist2 src = read_dist2(src_path);
    const JointDist2 tgt = read_dist2(tgt_path);
    const BoundVerdict v = nisim_verdict(src, tgt, parse_grid(grid_spec), cfg);
    os << "# corrlab nisim " << kVersion << " seed=" << cfg.seed << " src=" << src_path
       << " tgt=" << tgt_path << "\n";
    os << "mc_outer\t" << (v.mc.pass ? "pass" : "fail") << "\tmargin=" << fmt(v.mc.margin) << "\n";
    os << "mi_outer\t" << (v.mi.pass ? "pass" : "fail") << "\tmargin=" << fmt(v.mi.margin) << "\n";
    os << "icf_outer\t" << (v.icf.pass ? "pass" : "fail")
       << "\tworst_margin=" << fmt(v.icf.worst_margin) << "\tworst_beta=" << fmt(v.icf.worst_beta)
       << "\n";
    const char* inner = v.inner.status == InnerResult::Status::yes      ? "yes"
                        : v.inner.status == InnerResult::Status::no     ? "no"
                                                                        : "unknown";
    os << "inner_achievable\t" << inner << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dependence measures, common informations, and non-interactive simulation bounds"};
    app.require_subcommand(1);

    // corr
    auto* corr_cmd = app.add_subcommand("corr", "correlation report of a distribution file");
    std::string corr_input, corr_out, corr_dump;
    bool corr_verify = false;
    int corr_restarts = 8, corr_iters = 200;
    unsigned long long corr_seed = 1;
    corr_cmd->add_option("input", corr_input, "distribution JSON file")->required();
    corr_cmd->add_option("-o,--output", corr_out, "output file (default stdout)");
    corr_cmd->add_flag("--verify", corr_verify, "also run the brute-force maximal correlation");
    corr_cmd->add_option("--restarts", corr_restarts, "brute-force restarts");
    corr_cmd->add_option("--iters", corr_iters, "brute-force iterations per restart");
    corr_cmd->add_option("--seed", corr_seed, "brute-force RNG seed");
    corr_cmd->add_option("--dump-dist", corr_dump, "re-emit the parsed distribution to this path");

    // icf
    auto* icf_cmd = app.add_subcommand("icf", "information-correlation curve of a distribution");
    std::string icf_input, icf_out, icf_grid = "0:0.05:1", icf_witness_dir;
    double icf_dsbs = 0.0;
    OptimizerFlags icf_flags;
    icf_cmd->add_option("input", icf_input, "distribution JSON file");
    auto* dsbs_opt = icf_cmd->add_option("--dsbs", icf_dsbs,
                                         "use a doubly symmetric binary source with this "
                                         "crossover and emit the closed-form column");
    icf_cmd->add_option("--beta-grid", icf_grid, "beta grid start:step:end");
    icf_cmd->add_option("-o,--output", icf_out, "output file (default stdout)");
    icf_cmd->add_option("--witness-dir", icf_witness_dir, "write witness channels here");
    icf_flags.attach(icf_cmd);

    // gaussian
    auto* g_cmd = app.add_subcommand("gaussian", "closed-form Gaussian curve");
    double g_rho0 = 0.0, g_hjoint = 0.0;
    std::string g_grid = "0:0.05:1", g_unit = "nats", g_out;
    bool g_lower = false;
    g_cmd->add_option("--rho0", g_rho0, "correlation coefficient")->required();
    g_cmd->add_option("--beta-grid", g_grid, "beta grid start:step:end");
    g_cmd->add_option("--unit", g_unit, "bits|nats (default nats)");
    auto* lb_flag = g_cmd->add_flag("--lower-bound", g_lower, "emit the continuous lower-bound column");
    g_cmd->add_option("--h-joint", g_hjoint, "joint differential entropy in nats")->needs(lb_flag);
    g_cmd->add_option("-o,--output", g_out, "output file (default stdout)");

    // nisim
    auto* n_cmd = app.add_subcommand("nisim", "non-interactive simulation bounds");
    std::string n_src, n_tgt, n_pgrid = "0:0.025:0.25", n_grid = "0:0.05:1", n_out;
    double n_qstep = 1e-3, n_icf_qstep = 0.02;
    n_cmd->add_option("--src", n_src, "source distribution JSON file");
    n_cmd->add_option("--tgt", n_tgt, "target distribution JSON file");
    auto* fig1_opt = n_cmd->add_option("--fig1", n_pgrid,
                                       "emit the binary simulation-region table over this "
                                       "source cell-mass grid (default 0:0.025:0.25)")
                         ->expected(0, 1);
    n_cmd->add_option("--q-step", n_qstep, "target cell-mass step for the mc/mi scans");
    n_cmd->add_option("--icf-q-step", n_icf_qstep, "target cell-mass step for the ICF scan");
    n_cmd->add_option("--beta-grid", n_grid, "beta grid for the ICF comparison");
    n_cmd->add_option("-o,--output", n_out, "output file (default stdout)");
    OptimizerFlags n_flags;
    n_flags.restarts = 4;
    n_flags.max_evals = 20000;
    n_flags.attach(n_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (corr_cmd->parsed())
            return run_corr(corr_input, corr_out, corr_verify, corr_restarts, corr_iters,
                            corr_seed, corr_dump);
        if (icf_cmd->parsed())
            return run_icf(icf_input, icf_dsbs, dsbs_opt->count() > 0, icf_grid, icf_out,
                           icf_witness_dir, icf_flags);
        if (g_cmd->parsed())
            return run_gaussian(g_rho0, g_grid, g_unit, g_lower, g_hjoint, g_out);
        if (n_cmd->parsed())
            return run_nisim(n_src, n_tgt, fig1_opt->count() > 0, n_pgrid, n_qstep, n_icf_qstep,
                             n_grid, n_out, n_flags);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const OptimizerBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
