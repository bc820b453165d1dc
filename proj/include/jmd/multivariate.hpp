/*
 * multivariate.hpp — multichannel solver loop with channel-shared
 * center frequencies.
 *
 * Each mode k keeps one omega_k for all C channels, recentered on the
 * channel-summed power centroid; everything else (mode refresh, lambda,
 * v/x/rho) runs per channel with the same update rules as the
 * univariate engine. Modes are therefore aligned in frequency across
 * channels, and with C = 1 the loop degenerates to the univariate
 * algorithm. Convergence sums the per-channel relative changes of
 * r_c = sum_k u_kc + v_c.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jmd/engine.hpp"

namespace jmd {

/// Channel-wise mode refresh with the shared omega_k. residual_hats[c]
/// must already hold f_hat_c - sum_{l != k} u_hat_lc - v_hat_c +
/// lambda_hat_c / 2; only the Wiener gain is applied here.
inline std::vector<OneSidedSpectrum> update_mode_spectrum_mv(
    const std::vector<OneSidedSpectrum>& residual_hats, double omega_k, double alpha) {
    std::vector<OneSidedSpectrum> out;
    out.reserve(residual_hats.size());
    for (const auto& res : residual_hats) {
        OneSidedSpectrum u = res;
        for (std::size_t h = 0; h < u.size(); ++h) {
            const double detune = u.grid[h] - omega_k;
            u.bins[h] = res.bins[h] / (1.0 + 2.0 * alpha * detune * detune);
        }
        out.push_back(std::move(u));
    }
    return out;
}

/// Channel-summed power centroid for mode k; holds prev_omega when all
/// channels are power-free.
inline double update_center_frequency_mv(const std::vector<OneSidedSpectrum>& mode_channels,
                                         double prev_omega) {
    double num = 0.0, den = 0.0;
    for (const auto& u : mode_channels) {
        for (std::size_t h = 0; h < u.size(); ++h) {
            const double p = std::norm(u.bins[h]);
            num += u.grid[h] * p;
            den += p;
        }
    }
    if (den < 1e-30) return prev_omega;
    double omega = num / den;
    if (omega < 0.0) omega = 0.0;
    const double upper = std::nextafter(0.5, 0.0);
    if (omega > upper) omega = upper;
    return omega;
}

/// Full multivariate decomposition; C = 1 matches decompose().
inline DecompositionResult decompose_mv(const Signal& sig, const ValidatedConfig& vcfg,
                                        bool jump_enabled = true) {
    const auto& cfg = vcfg.cfg;
    const auto& pen = vcfg.penalty;
    const std::size_t cc = sig.channel_count();
    const std::size_t n = sig.length();
    const std::size_t kk = static_cast<std::size_t>(cfg.k);
    if (cc < 1) throw std::invalid_argument("decompose_mv: need at least one channel");

    std::vector<OneSidedSpectrum> f_hats;
    f_hats.reserve(cc);
    for (const auto& ch : sig.channels) f_hats.push_back(forward_one_sided(ch));

    // u_hats[k][c]
    std::vector<std::vector<OneSidedSpectrum>> u_hats(
        kk, std::vector<OneSidedSpectrum>(cc, zero_spectrum(n)));
    std::vector<double> omegas = init_omegas(cfg.k, cfg.omega_init, cfg.seed);
    std::vector<OneSidedSpectrum> lambda_hats(cc, zero_spectrum(n));
    std::vector<OneSidedSpectrum> v_hats(cc, zero_spectrum(n));
    std::vector<JumpState> jumps(cc, JumpState(n));

    std::vector<std::vector<double>> prev_r(cc, std::vector<double>(n, 0.0));
    std::vector<double> trace;
    bool converged = false;
    int iterations = 0;

    for (int it = 0; it < cfg.max_iter; ++it) {
        iterations = it + 1;
        for (std::size_t k = 0; k < kk; ++k) {
            std::vector<OneSidedSpectrum> residual_hats(cc, zero_spectrum(n));
            for (std::size_t c = 0; c < cc; ++c) {
                auto& res = residual_hats[c];
                for (std::size_t h = 0; h < res.size(); ++h) {
                    std::complex<double> others{0.0, 0.0};
                    for (std::size_t l = 0; l < kk; ++l)
                        if (l != k) others += u_hats[l][c].bins[h];
                    res.bins[h] = f_hats[c].bins[h] - others - v_hats[c].bins[h] +
                                  0.5 * lambda_hats[c].bins[h];
                }
            }
            auto refreshed = update_mode_spectrum_mv(residual_hats, omegas[k], cfg.alpha);
            for (std::size_t c = 0; c < cc; ++c) u_hats[k][c] = std::move(refreshed[c]);
            omegas[k] = update_center_frequency_mv(u_hats[k], omegas[k]);
        }

        // per-channel time-domain mode sums (each mode inverted separately)
        std::vector<std::vector<double>> modes_sum(cc, std::vector<double>(n, 0.0));
        for (std::size_t k = 0; k < kk; ++k)
            for (std::size_t c = 0; c < cc; ++c) {
                const std::vector<double> u_t = to_time_mode(u_hats[k][c]);
                for (std::size_t i = 0; i < n; ++i) modes_sum[c][i] += u_t[i];
            }

        for (std::size_t c = 0; c < cc; ++c) {
            OneSidedSpectrum modes_sum_hat = zero_spectrum(n);
            for (std::size_t k = 0; k < kk; ++k)
                for (std::size_t h = 0; h < modes_sum_hat.size(); ++h)
                    modes_sum_hat.bins[h] += u_hats[k][c].bins[h];
            lambda_hats[c] = update_lambda(lambda_hats[c], f_hats[c], v_hats[c],
                                           modes_sum_hat, cfg.tau1);
            if (jump_enabled) {
                const std::vector<double> lambda_t = to_time_mode(lambda_hats[c]);
                std::vector<double> f_minus(n);
                for (std::size_t i = 0; i < n; ++i)
                    f_minus[i] = sig.channels[c][i] - modes_sum[c][i];
                auto& jp = jumps[c];
                jp.v = solve_v(f_minus, lambda_t, jp.x, jp.rho, pen.gamma);
                jp.x = update_x(jp.v, jp.rho, pen.gamma, pen.mu, pen.b);
                jp.rho = update_rho(jp.rho, jp.x, jp.v, pen.gamma);
                v_hats[c] = forward_one_sided(jp.v);
            }
        }

        double ratio_sum = 0.0;
        bool test_defined = true;
        bool any_change = false;
        for (std::size_t c = 0; c < cc; ++c) {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r_i = modes_sum[c][i] + jumps[c].v[i];
                const double d = r_i - prev_r[c][i];
                num += d * d;
                den += prev_r[c][i] * prev_r[c][i];
                prev_r[c][i] = r_i;
            }
            if (num == 0.0) continue;  // this channel contributes 0
            any_change = true;
            if (den > 0.0)
                ratio_sum += num / den;
            else
                test_defined = false;  // previous r_c identically zero
        }
        if (!any_change) {
            trace.push_back(0.0);
            converged = true;
            break;
        }
        if (test_defined) {
            trace.push_back(ratio_sum);
            if (ratio_sum < cfg.eps) {
                converged = true;
                break;
            }
        }
    }

    const auto order = detail::ascending_order(omegas);
    DecompositionResult res;
    res.modes.resize(kk);
    res.omegas.resize(kk);
    for (std::size_t i = 0; i < kk; ++i) {
        res.omegas[i] = omegas[order[i]];
        res.modes[i].resize(cc);
        for (std::size_t c = 0; c < cc; ++c)
            res.modes[i][c] = to_time_mode(u_hats[order[i]][c]);
    }
    res.jump.resize(cc);
    res.residual.resize(cc);
    for (std::size_t c = 0; c < cc; ++c) {
        res.jump[c] = jumps[c].v;
        res.residual[c].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double sum_modes = 0.0;
            for (std::size_t k = 0; k < kk; ++k) sum_modes += res.modes[k][c][i];
            res.residual[c][i] = sig.channels[c][i] - sum_modes - jumps[c].v[i];
        }
    }
    res.iterations = iterations;
    res.converged = converged;
    res.convergence_trace = std::move(trace);
    return res;
}

}  // namespace jmd
