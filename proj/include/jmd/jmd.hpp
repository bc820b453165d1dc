/*
 * jmd.hpp — umbrella header.
 */

#pragma once

#include "jmd/core.hpp"        // IWYU pragma: export
#include "jmd/spectral.hpp"    // IWYU pragma: export
#include "jmd/mc_penalty.hpp"  // IWYU pragma: export
#include "jmd/jump_solver.hpp" // IWYU pragma: export
#include "jmd/engine.hpp"      // IWYU pragma: export
#include "jmd/multivariate.hpp" // IWYU pragma: export
#include "jmd/baselines.hpp"   // IWYU pragma: export
#include "jmd/synthetic.hpp"   // IWYU pragma: export
#include "jmd/io.hpp"          // IWYU pragma: export
