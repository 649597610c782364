#pragma once

#include "rieszmod/module/fiber_module.hpp"
#include "rieszmod/rng.hpp"

namespace rieszmod::module {

/// l^p (p in {1, 1.5, 2, 3, inf}), a random Gram matrix, or a random
/// mapped l^1 / l^inf norm.
FiberNorm random_fiber_norm(Rng& rng, std::size_t dim);

/// Fiber dimensions in [0, max_dim] over a random structure on n atoms.
ModulePtr random_module(Rng& rng, std::size_t n, std::size_t max_dim);

/// Coordinates in [-scale, scale]; each fiber vector is zero with
/// probability 0.15.
ModuleElement random_element(Rng& rng, const ModulePtr& module, double scale = 3.0);

}  // namespace rieszmod::module
