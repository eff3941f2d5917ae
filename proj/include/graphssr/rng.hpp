#pragma once

#include "graphssr/types.hpp"

#include <cstdint>
#include <random>

namespace graphssr {

using Rng = std::mt19937_64;

// Mixes a master seed with a stream index so workers get independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

Matrix standard_normal(Index rows, Index cols, Rng& rng);
Matrix uniform01(Index rows, Index cols, Rng& rng);

}  // namespace graphssr
