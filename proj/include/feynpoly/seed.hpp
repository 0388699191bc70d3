#ifndef FEYNPOLY_SEED_HPP
#define FEYNPOLY_SEED_HPP

#include <cstdint>

namespace feynpoly {

/// Seed for the randomized sampling checks (supermodularity sampling above
/// the exhaustive threshold, fan coverage sampling). Default 0.
void set_sampling_seed(std::uint64_t seed);
std::uint64_t sampling_seed();

} // namespace feynpoly

#endif
