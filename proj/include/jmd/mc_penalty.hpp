/*
 * mc_penalty.hpp — minimax-concave penalty and its proximal shrinkage.
 *
 * phi(x; b) interpolates between |x| (b -> 0) and a 0/1 jump count
 * (b -> inf):
 *
 *   phi(x; b) = -(b/2) x^2 + sqrt(2b) x   for 0 <= x < sqrt(2/b)
 *             = 1                          for x >= sqrt(2/b)
 *
 * The breakpoint sqrt(2/b) is the unique choice making phi continuous
 * (C^1, in fact) and reaching exactly 1; with b = 2/b_bar^2 it equals
 * b_bar, so every difference of magnitude at least b_bar is penalized
 * equally. Under b*mu < 1 the scalar problem
 *
 *   argmin_x  mu * phi(|x|; b) + (1/2)(x - h)^2
 *
 * is strongly convex with the closed form
 *
 *   prox(h) = clamp( 1/(1-mu*b) - (mu*sqrt(2b)/(1-mu*b))/|h|, 0, 1 ) * h
 *
 * giving a dead zone |h| <= mu*sqrt(2b) (output 0) and an identity
 * region |h| >= sqrt(2/b) (output h).
 */

#pragma once

#include <cmath>
#include <stdexcept>

#include "jmd/core.hpp"

namespace jmd {

/// true iff b*mu < 1, i.e. the prox subproblems are strongly convex.
inline bool check_strong_convexity(double b, double mu) {
    return b < 1.0 / mu;
}

/// MC penalty value, in [0, 1]. Requires x >= 0, b > 0.
inline double mc_penalty(double x, double b) {
    if (x < 0.0) throw std::invalid_argument("mc_penalty: x must be nonnegative");
    if (!(b > 0.0)) throw std::invalid_argument("mc_penalty: b must be positive");
    const double breakpoint = std::sqrt(2.0 / b);
    if (x >= breakpoint) return 1.0;
    return -0.5 * b * x * x + std::sqrt(2.0 * b) * x;
}

/// Closed-form minimizer of mu*phi(|x|; b) + (x-h)^2/2. Requires
/// b*mu < 1; prox(0) = 0 by continuity of the minimizer.
inline double prox_mc(double h, double mu, double b) {
    if (!check_strong_convexity(b, mu))
        throw StrongConvexityViolated("prox_mc requires b*mu < 1 (strong convexity)");
    if (h == 0.0) return 0.0;
    const double one_minus = 1.0 - mu * b;
    double factor = 1.0 / one_minus - (mu * std::sqrt(2.0 * b) / one_minus) / std::abs(h);
    if (factor < 0.0) factor = 0.0;
    if (factor > 1.0) factor = 1.0;
    return factor * h;
}

/// Penalty together with its precomputed breakpoint.
struct McPenalty {
    double b = 0.0;
    double breakpoint = 0.0;

    explicit McPenalty(double b_) : b(b_), breakpoint(std::sqrt(2.0 / b_)) {
        if (!(b_ > 0.0)) throw std::invalid_argument("McPenalty: b must be positive");
    }

    double operator()(double x) const { return mc_penalty(x, b); }
};

}  // namespace jmd
