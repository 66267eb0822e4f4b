#pragma once

#include "superreal/random.hpp"
#include "superreal/supermatrix.hpp"

namespace superreal {

/// Random even supermatrix; entries in diagonal blocks even, off-diagonal odd.
inline SuperMatrix random_even_supermatrix(Rng& rng, Shape shape, const Signature& sig, int max_terms = 2,
                                           int density_percent = 60) {
  SuperMatrix x(shape, sig);
  for (int i = 0; i < shape.size(); ++i)
    for (int j = 0; j < shape.size(); ++j) {
      if (rng.below(100) >= density_percent) continue;
      x(i, j) = rng.element(sig, shape.diagonal_block(i, j) ? Parity::Even : Parity::Odd, max_terms);
    }
  return x;
}

/// Random even supermatrix whose body is invertible (hence invertible itself).
inline SuperMatrix random_invertible_supermatrix(Rng& rng, Shape shape, const Signature& sig, int max_terms = 2) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SuperMatrix x = random_even_supermatrix(rng, shape, sig, max_terms);
    for (int i = 0; i < shape.size(); ++i)
      x(i, i) += SuperNumber::constant(sig, rng.unit_scalar());
    if (try_inverse(x.body())) return x;
  }
  throw SamplingFailed("could not draw an invertible supermatrix");
}

}  // namespace superreal
