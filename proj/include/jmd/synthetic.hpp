/*
 * synthetic.hpp — benchmark signal generators and decomposition-quality
 * metrics.
 *
 * The generators discretize t into [0, 1] (sample_rate = n) and return
 * the signal together with its exact constituent components, so tests
 * can score recovered modes and jumps against ground truth. Example 1:
 * unit cosines at 4/80/200 Hz plus a height-1.5 step at t = 0.5 plus
 * Gaussian noise. Example 2: three channels mixing cosines at
 * {1, 24, 48, 128} Hz with channel-dependent amplitudes; the step
 * appears in channels 1 and 3 only.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jmd/core.hpp"
#include "jmd/jump_solver.hpp"

namespace jmd {

/// One named additive component of a generated signal, per channel.
struct NamedComponent {
    std::string name;
    std::vector<std::vector<double>> data;  // C x N
};

/// Exact decomposition of a generated signal. Components sum to the
/// signal; jump_edges are (first sample at the new level, signed height).
struct GroundTruth {
    std::vector<NamedComponent> components;
    std::vector<double> tone_freqs;  // Hz
    std::vector<std::pair<std::size_t, double>> jump_edges;

    const NamedComponent* find(const std::string& name) const {
        for (const auto& c : components)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Piecewise-constant sequence starting at 0, stepping by `height` at
/// each index (the index is the first sample holding the new level).
/// Indices must be strictly increasing and in [1, n-1].
inline std::vector<double> gen_step_train(
    std::size_t n, const std::vector<std::pair<std::size_t, double>>& edges) {
    std::vector<double> out(n, 0.0);
    std::size_t prev = 0;
    bool have_prev = false;
    double level = 0.0;
    for (const auto& [idx, height] : edges) {
        if (idx < 1 || idx > n - 1)
            throw std::invalid_argument("gen_step_train: edge index out of range");
        if (have_prev && idx <= prev)
            throw std::invalid_argument("gen_step_train: edge indices must be strictly increasing");
        for (std::size_t i = (have_prev ? prev : 0); i < idx; ++i) out[i] = level;
        level += height;
        prev = idx;
        have_prev = true;
    }
    for (std::size_t i = (have_prev ? prev : 0); i < n; ++i) out[i] = level;
    return out;
}

namespace detail {

inline std::vector<double> cosine(std::size_t n, double freq_hz, double amp) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        out[i] = amp * std::cos(2.0 * std::numbers::pi * freq_hz * t);
    }
    return out;
}

inline std::vector<double> gaussian_noise(std::size_t n, double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (double& v : out) v = sigma * dist(rng);
    return out;
}

}  // namespace detail

/// Univariate benchmark: cos(2pi 4t) + cos(2pi 80t) + cos(2pi 200t)
/// + step(1.5 at t=0.5) + N(0, sigma^2). Requires n >= 512.
inline std::pair<Signal, GroundTruth> gen_example1(std::size_t n, std::uint64_t seed,
                                                   double sigma = 0.1) {
    if (n < 512) throw std::invalid_argument("gen_example1: n must be >= 512");
    std::mt19937_64 rng(seed);
    GroundTruth gt;
    gt.tone_freqs = {4.0, 80.0, 200.0};
    gt.jump_edges = {{n / 2, 1.5}};

    std::vector<std::vector<double>> parts;
    for (double f : gt.tone_freqs) {
        auto tone = detail::cosine(n, f, 1.0);
        gt.components.push_back({"tone_" + std::to_string(static_cast<int>(f)) + "hz", {tone}});
        parts.push_back(std::move(tone));
    }
    auto jump = gen_step_train(n, gt.jump_edges);
    gt.components.push_back({"jump", {jump}});
    parts.push_back(std::move(jump));
    auto noise = detail::gaussian_noise(n, sigma, rng);
    gt.components.push_back({"noise", {noise}});
    parts.push_back(std::move(noise));

    std::vector<double> f(n, 0.0);
    for (const auto& p : parts)
        for (std::size_t i = 0; i < n; ++i) f[i] += p[i];

    Signal sig;
    sig.channels = {std::move(f)};
    sig.sample_rate = static_cast<double>(n);
    sig.labels = {"f1"};
    return {std::move(sig), std::move(gt)};
}

/// Three-channel benchmark with tones {1, 24, 48, 128} Hz at
/// channel-dependent amplitudes and the step in channels 1 and 3 only:
///   C1 = 10 cos(2pi t)   + 2 cos(2pi 24t)                     + v + eta
///   C2 =  4 cos(2pi t)   + 2 cos(2pi 24t) + 2 cos(2pi 48t)
///        + 2 cos(2pi 128t)                                        + eta
///   C3 = 10 cos(2pi t)   + 2 cos(2pi 48t) + 2 cos(2pi 128t)   + v + eta
inline std::pair<Signal, GroundTruth> gen_example2(std::size_t n, std::uint64_t seed,
                                                   double sigma = 0.1) {
    if (n < 512) throw std::invalid_argument("gen_example2: n must be >= 512");
    std::mt19937_64 rng(seed);
    constexpr std::size_t c_count = 3;

    GroundTruth gt;
    gt.tone_freqs = {1.0, 24.0, 48.0, 128.0};
    gt.jump_edges = {{n / 2, 1.5}};

    // amplitude of each tone per channel
    const std::vector<std::pair<double, std::array<double, 3>>> tone_amps = {
        {1.0, {10.0, 4.0, 10.0}},
        {24.0, {2.0, 2.0, 0.0}},
        {48.0, {0.0, 2.0, 2.0}},
        {128.0, {0.0, 2.0, 2.0}},
    };

    std::vector<std::vector<double>> channels(c_count, std::vector<double>(n, 0.0));

    for (const auto& [freq, amps] : tone_amps) {
        NamedComponent comp{"tone_" + std::to_string(static_cast<int>(freq)) + "hz", {}};
        for (std::size_t c = 0; c < c_count; ++c) {
            auto tone = detail::cosine(n, freq, amps[c]);
            for (std::size_t i = 0; i < n; ++i) channels[c][i] += tone[i];
            comp.data.push_back(std::move(tone));
        }
        gt.components.push_back(std::move(comp));
    }

    {
        auto step = gen_step_train(n, gt.jump_edges);
        NamedComponent comp{"jump", {}};
        comp.data.push_back(step);                          // C1
        comp.data.emplace_back(n, 0.0);                     // C2: no jump
        comp.data.push_back(step);                          // C3
        for (std::size_t i = 0; i < n; ++i) {
            channels[0][i] += step[i];
            channels[2][i] += step[i];
        }
        gt.components.push_back(std::move(comp));
    }

    {
        NamedComponent comp{"noise", {}};
        for (std::size_t c = 0; c < c_count; ++c) {
            auto eta = detail::gaussian_noise(n, sigma, rng);
            for (std::size_t i = 0; i < n; ++i) channels[c][i] += eta[i];
            comp.data.push_back(std::move(eta));
        }
        gt.components.push_back(std::move(comp));
    }

    Signal sig;
    sig.channels = std::move(channels);
    sig.sample_rate = static_cast<double>(n);
    sig.labels = {"C1", "C2", "C3"};
    return {std::move(sig), std::move(gt)};
}

/// Generic jump-free tone mixture (the `tones` CLI generator).
inline std::pair<Signal, GroundTruth> gen_tones(std::size_t n, std::uint64_t seed,
                                                const std::vector<double>& freqs_hz,
                                                const std::vector<double>& amps,
                                                double sigma = 0.1) {
    if (n < 4) throw std::invalid_argument("gen_tones: n must be >= 4");
    if (freqs_hz.size() != amps.size() || freqs_hz.empty())
        throw std::invalid_argument("gen_tones: freqs and amps must match and be nonempty");
    std::mt19937_64 rng(seed);
    GroundTruth gt;
    gt.tone_freqs = freqs_hz;

    std::vector<double> f(n, 0.0);
    for (std::size_t j = 0; j < freqs_hz.size(); ++j) {
        auto tone = detail::cosine(n, freqs_hz[j], amps[j]);
        for (std::size_t i = 0; i < n; ++i) f[i] += tone[i];
        gt.components.push_back(
            {"tone_" + std::to_string(static_cast<int>(freqs_hz[j])) + "hz", {std::move(tone)}});
    }
    auto noise = detail::gaussian_noise(n, sigma, rng);
    for (std::size_t i = 0; i < n; ++i) f[i] += noise[i];
    gt.components.push_back({"noise", {std::move(noise)}});

    Signal sig;
    sig.channels = {std::move(f)};
    sig.sample_rate = static_cast<double>(n);
    return {std::move(sig), std::move(gt)};
}

/// Pearson correlation coefficient. Truth must not be constant.
inline double component_correlation(const std::vector<double>& est,
                                    const std::vector<double>& truth) {
    if (est.size() != truth.size() || est.empty())
        throw std::invalid_argument("component_correlation: length mismatch");
    const double n = static_cast<double>(est.size());
    double me = 0.0, mt = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        me += est[i];
        mt += truth[i];
    }
    me /= n;
    mt /= n;
    double see = 0.0, stt = 0.0, set = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const double de = est[i] - me, dt = truth[i] - mt;
        see += de * de;
        stt += dt * dt;
        set += de * dt;
    }
    if (stt == 0.0)
        throw std::invalid_argument("component_correlation: truth is constant");
    if (see == 0.0) return 0.0;
    return set / std::sqrt(see * stt);
}

/// Steps of |Dv| >= min_height read off a recovered jump component.
/// Super-threshold diff positions within 2 samples of each other merge
/// to the largest. Returned indices follow the gen_step_train
/// convention (first sample at the new level).
inline std::vector<std::pair<std::size_t, double>> jump_edges(const std::vector<double>& v,
                                                              double min_height) {
    if (!(min_height > 0.0)) throw std::invalid_argument("jump_edges: min_height must be positive");
    const std::vector<double> d = forward_diff(v);
    std::vector<std::pair<std::size_t, double>> out;
    std::size_t j = 0;
    while (j < d.size()) {
        if (std::abs(d[j]) < min_height) {
            ++j;
            continue;
        }
        std::size_t best = j;
        std::size_t last = j;
        std::size_t probe = j + 1;
        while (probe < d.size() && probe - last <= 2) {
            if (std::abs(d[probe]) >= min_height) {
                if (std::abs(d[probe]) > std::abs(d[best])) best = probe;
                last = probe;
            }
            ++probe;
        }
        out.emplace_back(best + 1, d[best]);
        j = last + 1;
    }
    return out;
}

/// 10 log10(||signal||^2 / ||noise||^2).
inline double snr_db(const std::vector<double>& signal, const std::vector<double>& noise) {
    double es = 0.0, en = 0.0;
    for (double s : signal) es += s * s;
    for (double s : noise) en += s * s;
    if (en == 0.0) throw std::invalid_argument("snr_db: noise is identically zero");
    return 10.0 * std::log10(es / en);
}

}  // namespace jmd
