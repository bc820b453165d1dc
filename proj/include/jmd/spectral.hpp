/*
 * spectral.hpp — one-sided discrete Fourier analysis.
 *
 * All solver arithmetic happens on the nonnegative-frequency half of the
 * DFT of a real signal (the analytic-signal convention: negative
 * frequencies are implicitly zero). Conventions, fixed once and asserted
 * by round-trip tests:
 *
 *   forward:  unnormalized, bins[h] = sum_n x[n] e^{-2*pi*i*h*n/N},
 *             h = 0 .. floor(N/2), grid[h] = h/N in cycles/sample
 *   inverse:  Hermitian embedding then IDFT divided by N, so the
 *             reconstruction is exactly real and a unit-amplitude cosine
 *             survives a round trip at unit amplitude
 *
 * Backed by FFTW (r2c/c2r). FFTW's planner is not thread-safe, so plan
 * creation/destruction is serialized; execution runs unlocked.
 */

#pragma once

#include <complex>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace jmd {

/// Nonnegative-frequency half of a length-N real signal's DFT.
struct OneSidedSpectrum {
    std::vector<std::complex<double>> bins;  // floor(N/2)+1 entries
    std::vector<double> grid;                // grid[h] = h/N
    std::size_t n_time = 0;                  // original N

    std::size_t size() const { return bins.size(); }
};

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// Frequency grid h/N for h = 0..floor(N/2).
inline std::vector<double> one_sided_grid(std::size_t n) {
    std::vector<double> grid(n / 2 + 1);
    for (std::size_t h = 0; h < grid.size(); ++h)
        grid[h] = static_cast<double>(h) / static_cast<double>(n);
    return grid;
}

/// Forward transform of a real sequence onto the one-sided grid.
inline OneSidedSpectrum forward_one_sided(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 4) throw std::invalid_argument("forward_one_sided: length must be >= 4");
    for (double s : x)
        if (!std::isfinite(s))
            throw std::invalid_argument("forward_one_sided: non-finite input");

    const std::size_t h = n / 2 + 1;
    std::vector<double> in(x);
    std::vector<std::complex<double>> out(h);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    OneSidedSpectrum s;
    s.bins = std::move(out);
    s.grid = one_sided_grid(n);
    s.n_time = n;
    return s;
}

/// Inverse of forward_one_sided: Hermitian-embeds the half spectrum and
/// returns the real time-domain sequence of length n_time.
inline std::vector<double> to_time_mode(const OneSidedSpectrum& s) {
    const std::size_t n = s.n_time;
    if (n < 4 || s.bins.size() != n / 2 + 1)
        throw std::invalid_argument("to_time_mode: inconsistent spectrum");

    // c2r destroys its input, so transform a scratch copy.
    std::vector<std::complex<double>> in(s.bins);
    std::vector<double> out(n);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                    reinterpret_cast<fftw_complex*>(in.data()),
                                    out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= inv_n;
    return out;
}

/// Zero spectrum on the grid of a length-n signal.
inline OneSidedSpectrum zero_spectrum(std::size_t n) {
    OneSidedSpectrum s;
    s.bins.assign(n / 2 + 1, {0.0, 0.0});
    s.grid = one_sided_grid(n);
    s.n_time = n;
    return s;
}

/// Time-domain energy computed from one-sided bins. DC and (for even N)
/// Nyquist appear once in the full spectrum; interior bins twice.
inline double one_sided_energy(const OneSidedSpectrum& s) {
    const std::size_t n = s.n_time;
    double acc = std::norm(s.bins.front());
    const bool even = (n % 2 == 0);
    const std::size_t last = s.bins.size() - 1;
    for (std::size_t h = 1; h < last; ++h) acc += 2.0 * std::norm(s.bins[h]);
    acc += (even ? 1.0 : 2.0) * std::norm(s.bins[last]);
    return acc / static_cast<double>(n);
}

}  // namespace jmd
