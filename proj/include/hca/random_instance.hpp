#pragma once

#include <cstdint>
#include <random>

#include "hca/matrix.hpp"

namespace hca {

using Rng = std::mt19937_64;

/// Entries with |re|, |im| <= bound.
GaussianInt random_gaussian(Rng& rng, long bound);
GIVector random_vector(Rng& rng, std::size_t dim, long bound);
/// Real diagonal, conjugate-paired off-diagonal entries, all within bound.
HermitianMatrix random_hermitian(Rng& rng, std::size_t dim, long bound);

}  // namespace hca
