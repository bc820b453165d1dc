/*
 * jump_solver.hpp — the piecewise-constant jump subproblem.
 *
 * The jump estimate v couples to an auxiliary variable x ~ Dv (D the
 * (N-1) x N first-difference operator) and a multiplier rho via
 * alternating updates:
 *
 *   v:    (gamma D^T D + 2 I) v = -D^T rho + gamma D^T x
 *                                 + 2 (f - sum_k u_k) + lambda_t
 *   x_j:  prox_mc(h_j, mu, b)  with  h = Dv + rho/gamma
 *   rho:  rho - gamma (x - Dv)
 *
 * The v system is symmetric positive definite and tridiagonal
 * (D^T D has stencil [-1, 2, -1] with end diagonal entries 1), solved
 * directly in O(N). The multiplier terms in the v equation carry the
 * signs obtained by differentiating the augmented Lagrangian that also
 * produces the x and rho updates; diagonal dominance (2 + 2*gamma vs
 * 2*gamma) makes the elimination stable without pivoting.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jmd/mc_penalty.hpp"

namespace jmd {

/// out[j] = v[j+1] - v[j], length N-1.
inline std::vector<double> forward_diff(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("forward_diff: need length >= 2");
    std::vector<double> out(v.size() - 1);
    for (std::size_t j = 0; j + 1 < v.size(); ++j) out[j] = v[j + 1] - v[j];
    return out;
}

/// D^T y for y of length N-1: out[0] = -y[0], out[i] = y[i-1] - y[i],
/// out[N-1] = y[N-2].
inline std::vector<double> diff_transpose(const std::vector<double>& y, std::size_t n) {
    if (y.size() + 1 != n) throw std::invalid_argument("diff_transpose: length mismatch");
    std::vector<double> out(n);
    out[0] = -y[0];
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = y[i - 1] - y[i];
    out[n - 1] = y[n - 2];
    return out;
}

/// Per-channel ADMM variables of the jump subproblem.
struct JumpState {
    std::vector<double> v;    // N
    std::vector<double> x;    // N-1
    std::vector<double> rho;  // N-1

    explicit JumpState(std::size_t n)
        : v(n, 0.0), x(n > 0 ? n - 1 : 0, 0.0), rho(n > 0 ? n - 1 : 0, 0.0) {}
};

namespace detail {

/// Thomas elimination for (gamma D^T D + 2 I) v = rhs.
inline std::vector<double> solve_jump_tridiagonal(std::vector<double> rhs, double gamma) {
    const std::size_t n = rhs.size();
    if (n < 2) throw std::invalid_argument("solve_jump_tridiagonal: need length >= 2");
    const double off = -gamma;
    std::vector<double> diag(n, 2.0 + 2.0 * gamma);
    diag.front() = 2.0 + gamma;
    diag.back() = 2.0 + gamma;

    // forward elimination
    std::vector<double> c_star(n - 1);
    c_star[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - off * c_star[i - 1];
        if (i < n - 1) c_star[i] = off / m;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
    }
    // back substitution
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_star[i] * rhs[i + 1];
    return rhs;
}

}  // namespace detail

/// Solves (gamma D^T D + 2 I) v = -D^T rho + gamma D^T x
///                               + 2 f_minus_modes + lambda_t in O(N).
inline std::vector<double> solve_v(const std::vector<double>& f_minus_modes,
                                   const std::vector<double>& lambda_t,
                                   const std::vector<double>& x,
                                   const std::vector<double>& rho,
                                   double gamma) {
    const std::size_t n = f_minus_modes.size();
    if (lambda_t.size() != n || x.size() + 1 != n || rho.size() + 1 != n)
        throw std::invalid_argument("solve_v: inconsistent lengths");
    if (gamma < 0.0) throw std::invalid_argument("solve_v: gamma must be >= 0");

    std::vector<double> rhs(n);
    const std::vector<double> dt_rho = diff_transpose(rho, n);
    const std::vector<double> dt_x = diff_transpose(x, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = -dt_rho[i] + gamma * dt_x[i] + 2.0 * f_minus_modes[i] + lambda_t[i];
        if (!std::isfinite(r)) throw std::invalid_argument("solve_v: non-finite input");
        rhs[i] = r;
    }
    return detail::solve_jump_tridiagonal(std::move(rhs), gamma);
}

/// Elementwise prox of h = Dv + rho/gamma. Requires gamma > 0, b*mu < 1.
inline std::vector<double> update_x(const std::vector<double>& v,
                                    const std::vector<double>& rho,
                                    double gamma, double mu, double b) {
    if (!(gamma > 0.0)) throw std::invalid_argument("update_x: gamma must be positive");
    std::vector<double> out = forward_diff(v);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = prox_mc(out[j] + rho[j] / gamma, mu, b);
    return out;
}

/// rho - gamma * (x - Dv).
inline std::vector<double> update_rho(const std::vector<double>& rho,
                                      const std::vector<double>& x,
                                      const std::vector<double>& v,
                                      double gamma) {
    if (x.size() != rho.size() || v.size() != rho.size() + 1)
        throw std::invalid_argument("update_rho: inconsistent lengths");
    std::vector<double> out(rho.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = rho[j] - gamma * (x[j] - (v[j + 1] - v[j]));
    return out;
}

}  // namespace jmd
