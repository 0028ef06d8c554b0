#pragma once

// Deterministic instance families. Every generated relation is the edge relation
// together with the diagonal.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarsebox/boxspace.hpp"
#include "coarsebox/spacefile.hpp"

namespace coarsebox {

/// Edge pairs (both orientations) plus the diagonal of the named family on one
/// component of size `size`. Names: cycle, path, complete, torus <side>, margulis <side>.
std::vector<Pair> generator_pairs(const GeneratorSpec& spec, Index size);

/// Number of points the named family requires given its arguments, if fixed by them.
Index generator_size(const GeneratorSpec& spec);

SpaceFile gen_cycles(std::span<const Index> sizes);
/// Z_side^2 with the four axis neighbours.
SpaceFile gen_torus(std::span<const Index> sides);
/// Z_side^2 with the eight affine maps (x +- 2y, y), (x +- (2y + 1), y),
/// (x, y +- 2x), (x, y +- (2x + 1)).
SpaceFile gen_margulis(std::span<const Index> sides);
/// Uniform random `degree`-regular simple graphs by the pairing model with
/// restarts; the pairs are written out explicitly and the seed is recorded.
SpaceFile gen_random_regular(unsigned degree, std::span<const Index> sizes, std::uint64_t seed);

}  // namespace coarsebox
