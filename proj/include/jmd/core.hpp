/*
 * core.hpp — domain types and configuration for jump plus AM-FM mode
 * decomposition.
 *
 * A signal is modeled as f = sum_k u_k + v + n, where the u_k are K
 * narrow-band AM-FM modes localized around center frequencies omega_k,
 * v is a piecewise-constant jump component, and n is noise. The solver
 * parameters split into user-facing knobs (K, alpha, beta, b_bar, tau1,
 * tau2, eps, max_iter, init policy) and constants derived from them:
 *
 *   b     = 2 / b_bar^2          nonconvexity degree of the MC penalty
 *   gamma = tau2 * b * beta      ADMM penalty on the x = Dv constraint
 *   mu    = beta / gamma         per-element prox weight, b*mu = 1/tau2 < 1
 *
 * tau2 > 1 guarantees b*mu < 1, the strong-convexity condition that gives
 * the scalar prox subproblems unique closed-form minimizers.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jmd {

/// Thrown when tau2 <= 1 (equivalently b*mu >= 1) would break the
/// closed-form prox.
struct StrongConvexityViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the requested mode count K is not a positive integer.
struct InvalidModeCount : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Center-frequency initialization policy.
enum class OmegaInit : std::uint8_t {
    Zeros,    // all omega_k start at 0
    Uniform,  // evenly spaced over (0, 0.5)
    Random,   // seeded uniform draws over (0, 0.5), sorted
};

inline std::string to_string(OmegaInit init) {
    switch (init) {
        case OmegaInit::Zeros: return "zeros";
        case OmegaInit::Uniform: return "uniform";
        case OmegaInit::Random: return "random";
    }
    return "zeros";
}

inline OmegaInit omega_init_from_string(const std::string& s) {
    if (s == "zeros") return OmegaInit::Zeros;
    if (s == "uniform") return OmegaInit::Uniform;
    if (s == "random") return OmegaInit::Random;
    throw std::invalid_argument("unknown init policy '" + s +
                                "' (expected zeros|uniform|random)");
}

/// Real-valued multichannel time series. channels[c][t], C >= 1, N >= 4.
struct Signal {
    std::vector<std::vector<double>> channels;
    double sample_rate = 1.0;
    std::vector<std::string> labels;

    std::size_t channel_count() const { return channels.size(); }
    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// User parameters. Fields without a meaningful universal default (k,
/// alpha, beta) must be set by the caller; the rest default per the
/// method's standard settings.
struct DecompConfig {
    int k = 0;                  // mode count, required
    double alpha = 0.0;         // bandwidth weight, required
    double beta = 0.0;          // jump regularization, required
    double b_bar = 0.3;         // minimal expected jump height
    double tau1 = 0.0;          // data-fidelity ascent rate in [0,1]
    double tau2 = 10.0;         // convexity margin, > 1
    double eps = 1e-7;          // relative-change convergence tolerance
    int max_iter = 500;         // iteration cap
    OmegaInit omega_init = OmegaInit::Zeros;
    std::uint64_t seed = 0;     // used by OmegaInit::Random only
};

/// Constants derived from (beta, b_bar, tau2).
struct PenaltyParams {
    double b = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
};

/// b = 2/b_bar^2, gamma = tau2*b*beta, mu = beta/gamma. Requires
/// beta > 0, b_bar > 0, tau2 > 1; the result satisfies b*mu = 1/tau2 < 1.
inline PenaltyParams derive_penalty_params(double beta, double b_bar, double tau2) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(b_bar > 0.0)) throw std::invalid_argument("b_bar must be positive");
    if (!(tau2 > 1.0))
        throw StrongConvexityViolated("tau2 must exceed 1 (strong convexity)");
    PenaltyParams p;
    p.b = 2.0 / (b_bar * b_bar);
    p.gamma = tau2 * p.b * beta;
    p.mu = beta / p.gamma;
    return p;
}

/// A DecompConfig that has passed validation, with derived constants.
struct ValidatedConfig {
    DecompConfig cfg;
    PenaltyParams penalty;
};

/// Validates cfg against sig and computes penalty constants. Throws on
/// any violated constraint; messages name the constraint.
inline ValidatedConfig validate_config(const DecompConfig& cfg, const Signal& sig) {
    if (cfg.k < 1) throw InvalidModeCount("k must be a positive integer");
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(cfg.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(cfg.b_bar > 0.0)) throw std::invalid_argument("b_bar must be positive");
    if (!(cfg.tau2 > 1.0))
        throw StrongConvexityViolated("tau2 must exceed 1 (strong convexity)");
    if (cfg.tau1 < 0.0 || cfg.tau1 > 1.0)
        throw std::invalid_argument("tau1 must lie in [0,1]");
    if (!(cfg.eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (sig.channel_count() < 1) throw std::invalid_argument("signal has no channels");
    if (sig.length() < 4) throw std::invalid_argument("signal length must be >= 4");
    if (!(sig.sample_rate > 0.0)) throw std::invalid_argument("sample_rate must be positive");
    for (const auto& ch : sig.channels) {
        if (ch.size() != sig.length())
            throw std::invalid_argument("all channels must have equal length");
        for (double s : ch)
            if (!std::isfinite(s))
                throw std::invalid_argument("signal contains non-finite samples");
    }
    return ValidatedConfig{cfg, derive_penalty_params(cfg.beta, cfg.b_bar, cfg.tau2)};
}

/// Decomposition output. modes[k][c][t]; omegas are normalized
/// cycles/sample in [0, 0.5), ascending. The residual is constructed as
/// f - sum_k u_k - v, so modes + jump + residual reproduce the input
/// exactly by construction.
struct DecompositionResult {
    std::vector<std::vector<std::vector<double>>> modes;  // K x C x N
    std::vector<std::vector<double>> jump;                // C x N
    std::vector<double> omegas;                           // K, normalized
    std::vector<std::vector<double>> residual;            // C x N
    int iterations = 0;
    bool converged = false;
    std::vector<double> convergence_trace;

    /// omegas expressed in physical units (cycles per unit time).
    std::vector<double> omegas_hz(double sample_rate) const {
        std::vector<double> out(omegas.size());
        for (std::size_t i = 0; i < omegas.size(); ++i) out[i] = omegas[i] * sample_rate;
        return out;
    }
};

}  // namespace jmd
