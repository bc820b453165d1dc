/*
 * baselines.hpp — jump-disabled reference decompositions.
 *
 * Plain VMD (univariate) / MVMD (multivariate) obtained by running the
 * same engines with the jump branch off: v pinned to zero, x/rho never
 * updated, beta ignored. Implemented as a flag on the engines rather
 * than a fork so comparisons isolate the jump prior alone.
 */

#pragma once

#include "jmd/engine.hpp"
#include "jmd/multivariate.hpp"

namespace jmd {

/// VMD/MVMD baseline; the result's jump field is identically zero.
/// Dispatches on channel count.
inline DecompositionResult decompose_vmd(const Signal& sig, const ValidatedConfig& vcfg) {
    if (sig.channel_count() == 1) return decompose(sig, vcfg, /*jump_enabled=*/false);
    return decompose_mv(sig, vcfg, /*jump_enabled=*/false);
}

}  // namespace jmd
