#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "corrlab/dist.hpp"

namespace testutil {

using corrlab::Alphabet;
using corrlab::Channel;
using corrlab::JointDist2;
using corrlab::JointDist3;

inline std::mt19937_64 rng_for(unsigned long long seed) { return std::mt19937_64(seed); }

// Dirichlet(1) point on the simplex; min_mass > 0 draws a full-support pmf.
inline std::vector<double> random_simplex(std::mt19937_64& rng, int n, double min_mass = 0.0) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> p(static_cast<size_t>(n));
    double total = 0.0;
    for (auto& v : p) {
        v = exp1(rng) + min_mass * n;
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

inline JointDist2 random_dist2(std::mt19937_64& rng, int nx, int ny, double min_mass = 0.0) {
    const auto p = random_simplex(rng, nx * ny, min_mass);
    JointDist2 d;
    d.x = Alphabet::iota(nx);
    d.y = Alphabet::iota(ny);
    d.pmf.resize(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) d.pmf(i, j) = p[static_cast<size_t>(i * ny + j)];
    return d;
}

inline JointDist3 random_dist3(std::mt19937_64& rng, int nx, int ny, int nu,
                               double min_mass = 0.0) {
    const auto p = random_simplex(rng, nx * ny * nu, min_mass);
    JointDist3 d;
    d.x = Alphabet::iota(nx);
    d.y = Alphabet::iota(ny);
    d.u = Alphabet::iota(nu);
    d.pmf.assign(static_cast<size_t>(nu), Eigen::MatrixXd(nx, ny));
    for (int u = 0; u < nu; ++u)
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                d.pmf[static_cast<size_t>(u)](i, j) = p[static_cast<size_t>((u * nx + i) * ny + j)];
    return d;
}

// Random stochastic kernel: out[k] is the pmf of the output given input k.
inline std::vector<std::vector<double>> random_kernel(std::mt19937_64& rng, int n_in, int n_out,
                                                      double min_mass = 0.0) {
    std::vector<std::vector<double>> k(static_cast<size_t>(n_in));
    for (auto& row : k) row = random_simplex(rng, n_out, min_mass);
    return k;
}

// Dense 4-way pmf with the groupings the chain-rule identities need.
struct Tensor4 {
    int nx = 0, ny = 0, nz = 0, nu = 0;
    std::vector<double> p; // [((x*ny + y)*nz + z)*nu + u]

    double& at(int x, int y, int z, int u) {
        return p[static_cast<size_t>(((x * ny + y) * nz + z) * nu + u)];
    }
    double at(int x, int y, int z, int u) const {
        return p[static_cast<size_t>(((x * ny + y) * nz + z) * nu + u)];
    }

    static Tensor4 random(std::mt19937_64& rng, int nx, int ny, int nz, int nu,
                          double min_mass = 0.0) {
        Tensor4 t;
        t.nx = nx;
        t.ny = ny;
        t.nz = nz;
        t.nu = nu;
        t.p = random_simplex(rng, nx * ny * nz * nu, min_mass);
        return t;
    }

    // (X; (Y,Z) | U) with the pair axis flattened as y*nz + z.
    JointDist3 x_yz_u() const {
        JointDist3 d;
        d.x = Alphabet::iota(nx);
        d.y = Alphabet::iota(ny * nz);
        d.u = Alphabet::iota(nu);
        d.pmf.assign(static_cast<size_t>(nu), Eigen::MatrixXd::Zero(nx, ny * nz));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z)
                    for (int u = 0; u < nu; ++u)
                        d.pmf[static_cast<size_t>(u)](x, y * nz + z) += at(x, y, z, u);
        return d;
    }

    // (X; Z | U), Y summed out.
    JointDist3 x_z_u() const {
        JointDist3 d;
        d.x = Alphabet::iota(nx);
        d.y = Alphabet::iota(nz);
        d.u = Alphabet::iota(nu);
        d.pmf.assign(static_cast<size_t>(nu), Eigen::MatrixXd::Zero(nx, nz));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z)
                    for (int u = 0; u < nu; ++u) d.pmf[static_cast<size_t>(u)](x, z) += at(x, y, z, u);
        return d;
    }

    // (X; Y | (Z,U)) with the conditioning pair flattened as z*nu + u.
    JointDist3 x_y_zu() const {
        JointDist3 d;
        d.x = Alphabet::iota(nx);
        d.y = Alphabet::iota(ny);
        d.u = Alphabet::iota(nz * nu);
        d.pmf.assign(static_cast<size_t>(nz * nu), Eigen::MatrixXd::Zero(nx, ny));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z)
                    for (int u = 0; u < nu; ++u)
                        d.pmf[static_cast<size_t>(z * nu + u)](x, y) += at(x, y, z, u);
        return d;
    }

    // (X; Y | U), Z summed out.
    JointDist3 x_y_u() const {
        JointDist3 d;
        d.x = Alphabet::iota(nx);
        d.y = Alphabet::iota(ny);
        d.u = Alphabet::iota(nu);
        d.pmf.assign(static_cast<size_t>(nu), Eigen::MatrixXd::Zero(nx, ny));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z)
                    for (int u = 0; u < nu; ++u) d.pmf[static_cast<size_t>(u)](x, y) += at(x, y, z, u);
        return d;
    }

    // ((X,Z); (Y,Z) | U): both sides carry Z, flattened as x*nz + z.
    JointDist3 xz_yz_u() const {
        JointDist3 d;
        d.x = Alphabet::iota(nx * nz);
        d.y = Alphabet::iota(ny * nz);
        d.u = Alphabet::iota(nu);
        d.pmf.assign(static_cast<size_t>(nu), Eigen::MatrixXd::Zero(nx * nz, ny * nz));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z)
                    for (int u = 0; u < nu; ++u)
                        d.pmf[static_cast<size_t>(u)](x * nz + z, y * nz + z) += at(x, y, z, u);
        return d;
    }

    // (Y; Z | U), X summed out (Y takes the X slot).
    JointDist3 y_z_u() const {
        JointDist3 d;
        d.x = Alphabet::iota(ny);
        d.y = Alphabet::iota(nz);
        d.u = Alphabet::iota(nu);
        d.pmf.assign(static_cast<size_t>(nu), Eigen::MatrixXd::Zero(ny, nz));
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z)
                    for (int u = 0; u < nu; ++u) d.pmf[static_cast<size_t>(u)](y, z) += at(x, y, z, u);
        return d;
    }
};

// Markov chain X -> (Z,U) -> Y from random kernels, as a 4-way pmf.
inline Tensor4 random_markov_chain(std::mt19937_64& rng, int nx, int ny, int nz, int nu,
                                   bool same_xy_kernel = false) {
    const auto pzu = random_simplex(rng, nz * nu, 1e-3);
    const auto kx = random_kernel(rng, nz * nu, nx, 1e-3);
    const auto ky = same_xy_kernel ? kx : random_kernel(rng, nz * nu, ny, 1e-3);
    Tensor4 t;
    t.nx = nx;
    t.ny = ny;
    t.nz = nz;
    t.nu = nu;
    t.p.assign(static_cast<size_t>(nx * ny * nz * nu), 0.0);
    for (int z = 0; z < nz; ++z)
        for (int u = 0; u < nu; ++u) {
            const size_t cond = static_cast<size_t>(z * nu + u);
            for (int x = 0; x < nx; ++x)
                for (int y = 0; y < ny; ++y)
                    t.at(x, y, z, u) = pzu[cond] * kx[cond][static_cast<size_t>(x)] *
                                       ky[cond][static_cast<size_t>(y)];
        }
    return t;
}

// --- standard normal utilities for the Gaussian discretization check ---

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// P(a < X <= b, c < Y <= d) for standard bivariate normal with correlation
// rho, via Gauss-Legendre quadrature of the conditional-slab integrand.
inline double bvn_rect_mass(double a, double b, double c, double d, double rho) {
    static const double nodes[8] = {-0.9602898564975363, -0.7966664774136267,
                                    -0.5255324099163290, -0.1834346424956498,
                                    0.1834346424956498,  0.5255324099163290,
                                    0.7966664774136267,  0.9602898564975363};
    static const double weights[8] = {0.1012285362903763, 0.2223810344533745,
                                      0.3137066458778873, 0.3626837833783620,
                                      0.3626837833783620, 0.3137066458778873,
                                      0.2223810344533745, 0.1012285362903763};
    const double s = std::sqrt(1.0 - rho * rho);
    const double inv_sqrt2pi = 0.3989422804014327;
    // split [a, b] into a few panels so wide tail cells stay accurate
    const int panels = 8;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        const double half = 0.5 * (pb - pa), mid = 0.5 * (pa + pb);
        double acc = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double x = mid + half * nodes[k];
            const double phi = inv_sqrt2pi * std::exp(-0.5 * x * x);
            acc += weights[k] * phi *
                   (normal_cdf((d - rho * x) / s) - normal_cdf((c - rho * x) / s));
        }
        total += acc * half;
    }
    return total;
}

} // namespace testutil
