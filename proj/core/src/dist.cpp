#include "corrlab/dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace corrlab {

namespace {

void check_alphabet(const Alphabet& a, int expected, const char* axis) {
    if (a.size() != expected)
        throw ShapeMismatch(std::string("alphabet size does not match pmf along ") + axis);
    for (double v : a.labels)
        if (!std::isfinite(v))
            throw ShapeMismatch(std::string("non-finite label on axis ") + axis);
    std::vector<double> sorted = a.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ShapeMismatch(std::string("duplicate labels on axis ") + axis);
}

void check_mass(double v) {
    if (v < -kMassTol) throw NegativeMass("pmf entry below zero: " + std::to_string(v));
}

void check_total(double total) {
    if (std::abs(total - 1.0) > kMassTol)
        throw NotNormalized("pmf mass is " + std::to_string(total) + ", expected 1");
}

} // namespace

Alphabet Alphabet::iota(int n) {
    Alphabet a;
    a.labels.resize(static_cast<size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) a.labels[static_cast<size_t>(i)] = static_cast<double>(i);
    return a;
}

Channel Channel::constant(int nx, int ny) {
    Channel ch;
    ch.in_x = nx;
    ch.in_y = ny;
    ch.out_w = 1;
    ch.kernel = Eigen::MatrixXd::Ones(nx * ny, 1);
    return ch;
}

Channel Channel::cell_identity(int nx, int ny) {
    Channel ch;
    ch.in_x = nx;
    ch.in_y = ny;
    ch.out_w = nx * ny;
    ch.kernel = Eigen::MatrixXd::Identity(nx * ny, nx * ny);
    return ch;
}

void validate(const JointDist2& d) {
    if (d.pmf.rows() < 1 || d.pmf.cols() < 1)
        throw ShapeMismatch("empty pmf");
    check_alphabet(d.x, d.nx(), "x");
    check_alphabet(d.y, d.ny(), "y");
    double total = 0.0;
    for (int i = 0; i < d.nx(); ++i)
        for (int j = 0; j < d.ny(); ++j) {
            check_mass(d.pmf(i, j));
            total += d.pmf(i, j);
        }
    check_total(total);
}

void validate(const JointDist3& d) {
    if (d.pmf.empty()) throw ShapeMismatch("empty tensor");
    const int nx = d.nx(), ny = d.ny();
    if (nx < 1 || ny < 1) throw ShapeMismatch("empty tensor slice");
    check_alphabet(d.x, nx, "x");
    check_alphabet(d.y, ny, "y");
    check_alphabet(d.u, d.nu(), "u");
    double total = 0.0;
    for (const auto& slice : d.pmf) {
        if (slice.rows() != nx || slice.cols() != ny)
            throw ShapeMismatch("ragged tensor slices");
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                check_mass(slice(i, j));
                total += slice(i, j);
            }
    }
    check_total(total);
}

void validate(const Channel& ch) {
    if (ch.in_x < 1 || ch.in_y < 1 || ch.out_w < 1)
        throw ShapeMismatch("channel with empty input or output");
    if (ch.kernel.rows() != ch.in_x * ch.in_y || ch.kernel.cols() != ch.out_w)
        throw ShapeMismatch("channel kernel shape does not match declared sizes");
    for (int c = 0; c < ch.kernel.rows(); ++c) {
        double total = 0.0;
        for (int w = 0; w < ch.out_w; ++w) {
            check_mass(ch.kernel(c, w));
            total += ch.kernel(c, w);
        }
        check_total(total);
    }
}

JointDist2 normalized(JointDist2 d) {
    d.pmf = d.pmf.cwiseMax(0.0);
    const double total = d.pmf.sum();
    if (total <= 0.0) throw NotNormalized("pmf has no mass");
    d.pmf /= total;
    return d;
}

JointDist3 normalized(JointDist3 d) {
    double total = 0.0;
    for (auto& slice : d.pmf) {
        slice = slice.cwiseMax(0.0);
        total += slice.sum();
    }
    if (total <= 0.0) throw NotNormalized("pmf has no mass");
    for (auto& slice : d.pmf) slice /= total;
    return d;
}

Eigen::VectorXd marginal_x(const JointDist2& d) { return d.pmf.rowwise().sum(); }

Eigen::VectorXd marginal_y(const JointDist2& d) { return d.pmf.colwise().sum().transpose(); }

Eigen::VectorXd marginal_u(const JointDist3& d) {
    Eigen::VectorXd pu(d.nu());
    for (int u = 0; u < d.nu(); ++u) pu(u) = d.pmf[static_cast<size_t>(u)].sum();
    return pu;
}

JointDist2 marginal_xy(const JointDist3& d) {
    JointDist2 out;
    out.x = d.x;
    out.y = d.y;
    out.pmf = Eigen::MatrixXd::Zero(d.nx(), d.ny());
    for (const auto& slice : d.pmf) out.pmf += slice;
    return out;
}

JointDist2 condition_on_u(const JointDist3& d, int u) {
    if (u < 0 || u >= d.nu()) throw ShapeMismatch("conditioning index out of range");
    const double pu = d.pmf[static_cast<size_t>(u)].sum();
    if (pu <= kMassTol)
        throw ZeroConditioningMass("P_U(u) vanishes at u index " + std::to_string(u));
    JointDist2 out;
    out.x = d.x;
    out.y = d.y;
    out.pmf = d.pmf[static_cast<size_t>(u)] / pu;
    return out;
}

JointDist2 transpose(const JointDist2& d) {
    JointDist2 out;
    out.x = d.y;
    out.y = d.x;
    out.pmf = d.pmf.transpose();
    return out;
}

JointDist3 transpose_xy(const JointDist3& d) {
    JointDist3 out;
    out.x = d.y;
    out.y = d.x;
    out.u = d.u;
    out.pmf.reserve(d.pmf.size());
    for (const auto& slice : d.pmf) out.pmf.push_back(slice.transpose());
    return out;
}

JointDist2 product_pair(const JointDist2& a, const JointDist2& b) {
    JointDist2 out;
    out.x = Alphabet::iota(a.nx() * b.nx());
    out.y = Alphabet::iota(a.ny() * b.ny());
    out.pmf.resize(a.nx() * b.nx(), a.ny() * b.ny());
    for (int x1 = 0; x1 < a.nx(); ++x1)
        for (int x2 = 0; x2 < b.nx(); ++x2)
            for (int y1 = 0; y1 < a.ny(); ++y1)
                for (int y2 = 0; y2 < b.ny(); ++y2)
                    out.pmf(x1 * b.nx() + x2, y1 * b.ny() + y2) =
                        a.pmf(x1, y1) * b.pmf(x2, y2);
    return out;
}

JointDist3 attach_channel(const JointDist2& d, const Channel& ch) {
    if (ch.in_x != d.nx() || ch.in_y != d.ny())
        throw ShapeMismatch("channel input sizes do not match the distribution");
    JointDist3 out;
    out.x = d.x;
    out.y = d.y;
    out.u = Alphabet::iota(ch.out_w);
    out.pmf.assign(static_cast<size_t>(ch.out_w), Eigen::MatrixXd(d.nx(), d.ny()));
    for (int w = 0; w < ch.out_w; ++w)
        for (int i = 0; i < d.nx(); ++i)
            for (int j = 0; j < d.ny(); ++j)
                out.pmf[static_cast<size_t>(w)](i, j) = d.pmf(i, j) * ch.kernel(ch.cell(i, j), w);
    return out;
}

Channel product_channel(const Channel& a, const Channel& b) {
    Channel out;
    out.in_x = a.in_x * b.in_x;
    out.in_y = a.in_y * b.in_y;
    out.out_w = a.out_w * b.out_w;
    out.kernel.resize(out.in_x * out.in_y, out.out_w);
    for (int x1 = 0; x1 < a.in_x; ++x1)
        for (int x2 = 0; x2 < b.in_x; ++x2)
            for (int y1 = 0; y1 < a.in_y; ++y1)
                for (int y2 = 0; y2 < b.in_y; ++y2) {
                    const int row = (x1 * b.in_x + x2) * out.in_y + (y1 * b.in_y + y2);
                    for (int w1 = 0; w1 < a.out_w; ++w1)
                        for (int w2 = 0; w2 < b.out_w; ++w2)
                            out.kernel(row, w1 * b.out_w + w2) =
                                a.kernel(a.cell(x1, y1), w1) * b.kernel(b.cell(x2, y2), w2);
                }
    return out;
}

JointDist2 make_dsbs(double p0) {
    if (p0 < -kMassTol || p0 > 1.0 + kMassTol)
        throw OutOfRange("crossover probability must lie in [0, 1]");
    p0 = std::clamp(p0, 0.0, 1.0);
    JointDist2 d;
    d.x = Alphabet::iota(2);
    d.y = Alphabet::iota(2);
    d.pmf.resize(2, 2);
    d.pmf << (1.0 - p0) / 2.0, p0 / 2.0, p0 / 2.0, (1.0 - p0) / 2.0;
    return d;
}

JointDist2 make_binary(double px0, double py0, double p00) {
    const double p01 = px0 - p00;
    const double p10 = py0 - p00;
    const double p11 = 1.0 - px0 - py0 + p00;
    for (double c : {p00, p01, p10, p11})
        if (c < -kMassTol)
            throw Infeasible("cell masses (" + std::to_string(p00) + ", " + std::to_string(p01) +
                             ", " + std::to_string(p10) + ", " + std::to_string(p11) +
                             ") are not a pmf");
    JointDist2 d;
    d.x = Alphabet::iota(2);
    d.y = Alphabet::iota(2);
    d.pmf.resize(2, 2);
    d.pmf << std::max(p00, 0.0), std::max(p01, 0.0), std::max(p10, 0.0), std::max(p11, 0.0);
    return normalized(d);
}

} // namespace corrlab
