#include "hca/random_instance.hpp"

namespace hca {

GaussianInt random_gaussian(Rng& rng, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  const long re = u(rng);
  const long im = u(rng);
  return GaussianInt(re, im);
}

GIVector random_vector(Rng& rng, std::size_t dim, long bound) {
  GIVector v(dim);
  for (std::size_t a = 0; a < dim; ++a) v[a] = random_gaussian(rng, bound);
  return v;
}

HermitianMatrix random_hermitian(Rng& rng, std::size_t dim, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  GIMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = GaussianInt(u(rng));
    for (std::size_t c = r + 1; c < dim; ++c) {
      m(r, c) = random_gaussian(rng, bound);
      m(c, r) = m(r, c).conj();
    }
  }
  return HermitianMatrix(std::move(m));
}

}  // namespace hca
