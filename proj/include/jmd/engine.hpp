/*
 * engine.hpp — univariate solver loop.
 *
 * One iteration, in order:
 *
 *   1. for k = 1..K: Wiener-style mode refresh against the freshest
 *      available competitors, then recenter omega_k on the mode's
 *      power-weighted spectral centroid
 *   2. inverse-transform the mode sum
 *   3. ascent step on the spectral reconstruction multiplier lambda
 *   4. jump subproblem: tridiagonal v solve (with the time-domain
 *      lambda), elementwise MC prox for x, rho multiplier step,
 *      forward-transform v
 *   5. stop when ||r_i+1 - r_i||^2 / ||r_i||^2 < eps for r = sum_k u_k + v,
 *      skipping the ratio while the previous r is identically zero
 *
 * The mode updates run sequentially within an iteration (mode k consumes
 * the already-updated modes l < k); independent decompositions are safe
 * to run concurrently.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "jmd/core.hpp"
#include "jmd/jump_solver.hpp"
#include "jmd/spectral.hpp"

namespace jmd {

/// Initial center frequencies for a K-mode run.
inline std::vector<double> init_omegas(int k, OmegaInit policy, std::uint64_t seed) {
    std::vector<double> om(static_cast<std::size_t>(k), 0.0);
    switch (policy) {
        case OmegaInit::Zeros:
            break;
        case OmegaInit::Uniform:
            for (int i = 0; i < k; ++i)
                om[static_cast<std::size_t>(i)] = 0.5 * (i + 1) / (k + 1);
            break;
        case OmegaInit::Random: {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> dist(0.0, 0.5);
            for (auto& w : om) w = dist(rng);
            std::sort(om.begin(), om.end());
            break;
        }
    }
    return om;
}

/// Bin-wise mode refresh:
/// (f_hat - others - v_hat + lambda_hat/2) / (1 + 2 alpha (w - w_k)^2).
inline OneSidedSpectrum update_mode_spectrum(const OneSidedSpectrum& f_hat,
                                             const OneSidedSpectrum& other_modes_sum,
                                             const OneSidedSpectrum& v_hat,
                                             const OneSidedSpectrum& lambda_hat,
                                             double omega_k, double alpha) {
    OneSidedSpectrum out = f_hat;
    for (std::size_t h = 0; h < out.size(); ++h) {
        const double detune = out.grid[h] - omega_k;
        const double gain = 1.0 / (1.0 + 2.0 * alpha * detune * detune);
        out.bins[h] = (f_hat.bins[h] - other_modes_sum.bins[h] - v_hat.bins[h] +
                       0.5 * lambda_hat.bins[h]) *
                      gain;
    }
    return out;
}

/// Power-weighted centroid of |u_hat|^2 over the nonnegative grid,
/// clamped to [0, 0.5). Holds prev_omega when the spectrum carries no
/// power (total below 1e-30).
inline double update_center_frequency(const OneSidedSpectrum& u_hat, double prev_omega) {
    double num = 0.0, den = 0.0;
    for (std::size_t h = 0; h < u_hat.size(); ++h) {
        const double p = std::norm(u_hat.bins[h]);
        num += u_hat.grid[h] * p;
        den += p;
    }
    if (den < 1e-30) return prev_omega;
    double omega = num / den;
    if (omega < 0.0) omega = 0.0;
    const double upper = std::nextafter(0.5, 0.0);
    if (omega > upper) omega = upper;
    return omega;
}

/// lambda + tau1 * (f_hat - (v_hat + modes_sum_hat)), bin-wise.
inline OneSidedSpectrum update_lambda(const OneSidedSpectrum& lambda_hat,
                                      const OneSidedSpectrum& f_hat,
                                      const OneSidedSpectrum& v_hat,
                                      const OneSidedSpectrum& modes_sum_hat,
                                      double tau1) {
    OneSidedSpectrum out = lambda_hat;
    for (std::size_t h = 0; h < out.size(); ++h)
        out.bins[h] += tau1 * (f_hat.bins[h] - (v_hat.bins[h] + modes_sum_hat.bins[h]));
    return out;
}

namespace detail {

inline OneSidedSpectrum sum_except(const std::vector<OneSidedSpectrum>& spectra,
                                   std::size_t skip, std::size_t n) {
    OneSidedSpectrum acc = zero_spectrum(n);
    for (std::size_t l = 0; l < spectra.size(); ++l) {
        if (l == skip) continue;
        for (std::size_t h = 0; h < acc.size(); ++h) acc.bins[h] += spectra[l].bins[h];
    }
    return acc;
}

inline OneSidedSpectrum sum_all(const std::vector<OneSidedSpectrum>& spectra,
                                std::size_t n) {
    return sum_except(spectra, spectra.size(), n);
}

/// Sorts modes (and companions) ascending by omega.
inline std::vector<std::size_t> ascending_order(const std::vector<double>& omegas) {
    std::vector<std::size_t> idx(omegas.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return omegas[a] < omegas[b]; });
    return idx;
}

}  // namespace detail

/// Full univariate decomposition. jump_enabled=false pins v to zero and
/// never touches x/rho, reducing the loop to plain VMD.
inline DecompositionResult decompose(const Signal& sig, const ValidatedConfig& vcfg,
                                     bool jump_enabled = true) {
    if (sig.channel_count() != 1)
        throw std::invalid_argument("decompose: univariate engine requires C == 1");
    const auto& cfg = vcfg.cfg;
    const auto& pen = vcfg.penalty;
    const std::vector<double>& f = sig.channels.front();
    const std::size_t n = f.size();
    const std::size_t kk = static_cast<std::size_t>(cfg.k);

    const OneSidedSpectrum f_hat = forward_one_sided(f);
    std::vector<OneSidedSpectrum> u_hats(kk, zero_spectrum(n));
    std::vector<double> omegas = init_omegas(cfg.k, cfg.omega_init, cfg.seed);
    OneSidedSpectrum lambda_hat = zero_spectrum(n);
    OneSidedSpectrum v_hat = zero_spectrum(n);
    JumpState jump(n);

    std::vector<double> prev_r(n, 0.0);
    std::vector<double> trace;
    bool converged = false;
    int iterations = 0;

    for (int it = 0; it < cfg.max_iter; ++it) {
        iterations = it + 1;
        for (std::size_t k = 0; k < kk; ++k) {
            const OneSidedSpectrum others = detail::sum_except(u_hats, k, n);
            u_hats[k] = update_mode_spectrum(f_hat, others, v_hat, lambda_hat,
                                             omegas[k], cfg.alpha);
            omegas[k] = update_center_frequency(u_hats[k], omegas[k]);
        }

        const OneSidedSpectrum modes_sum_hat = detail::sum_all(u_hats, n);
        const std::vector<double> modes_sum = to_time_mode(modes_sum_hat);
        lambda_hat = update_lambda(lambda_hat, f_hat, v_hat, modes_sum_hat, cfg.tau1);

        if (jump_enabled) {
            const std::vector<double> lambda_t = to_time_mode(lambda_hat);
            std::vector<double> f_minus(n);
            for (std::size_t i = 0; i < n; ++i) f_minus[i] = f[i] - modes_sum[i];
            jump.v = solve_v(f_minus, lambda_t, jump.x, jump.rho, pen.gamma);
            jump.x = update_x(jump.v, jump.rho, pen.gamma, pen.mu, pen.b);
            jump.rho = update_rho(jump.rho, jump.x, jump.v, pen.gamma);
            v_hat = forward_one_sided(jump.v);
        }

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r_i = modes_sum[i] + jump.v[i];
            const double d = r_i - prev_r[i];
            num += d * d;
            den += prev_r[i] * prev_r[i];
            prev_r[i] = r_i;
        }
        if (num == 0.0) {
            trace.push_back(0.0);
            converged = true;
            break;
        }
        if (den > 0.0) {
            const double ratio = num / den;
            trace.push_back(ratio);
            if (ratio < cfg.eps) {
                converged = true;
                break;
            }
        }
        // den == 0 with num > 0: previous r identically zero, test skipped
    }

    const auto order = detail::ascending_order(omegas);
    DecompositionResult res;
    res.modes.resize(kk);
    res.omegas.resize(kk);
    for (std::size_t i = 0; i < kk; ++i) {
        res.omegas[i] = omegas[order[i]];
        res.modes[i] = {to_time_mode(u_hats[order[i]])};
    }
    res.jump = {jump.v};
    res.residual.resize(1);
    res.residual[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum_modes = 0.0;
        for (std::size_t k = 0; k < kk; ++k) sum_modes += res.modes[k][0][i];
        res.residual[0][i] = f[i] - sum_modes - jump.v[i];
    }
    res.iterations = iterations;
    res.converged = converged;
    res.convergence_trace = std::move(trace);
    return res;
}

}  // namespace jmd
