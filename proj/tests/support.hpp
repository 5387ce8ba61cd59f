#pragma once

#include <complex>
#include <vector>

#include "hca/automaton.hpp"
#include "hca/random_instance.hpp"

namespace hca::test {

inline GaussianInt gi(long re, long im = 0) { return GaussianInt(re, im); }

inline HermitianMatrix pauli_x() { return HermitianMatrix{{0, 1}, {1, 0}}; }
inline HermitianMatrix pauli_z() { return HermitianMatrix{{1, 0}, {0, -1}}; }

struct Instance {
  HermitianMatrix h;
  GIVector s0;
  GIVector s1;
};

inline Instance random_instance(Rng& rng, std::size_t max_dim = 6, long bound = 3) {
  std::uniform_int_distribution<std::size_t> d(1, max_dim);
  const std::size_t dim = d(rng);
  HermitianMatrix h = random_hermitian(rng, dim, bound);
  GIVector s0 = random_vector(rng, dim, bound);
  GIVector s1 = random_vector(rng, dim, bound);
  return {std::move(h), std::move(s0), std::move(s1)};
}

}  // namespace hca::test
