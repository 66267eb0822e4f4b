#pragma once

// Deterministic sampling of scalars, superalgebra elements and matrices.
// Every stream is derived from (master seed, tag), so a failure is
// reproducible from the seed and the sample index alone.

#include "superreal/algebra.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace superreal {

class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, k). Plain modulo keeps the stream identical across standard libraries.
  int below(int k) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(k)); }

  bool coin() { return below(2) == 1; }

  /// Draw from {0, 1, -1, i, -i, 1/2, -1/2}.
  GaussianRational coefficient(bool allow_zero = true) {
    int k = allow_zero ? below(7) : 1 + below(6);
    switch (k) {
      case 0: return 0;
      case 1: return 1;
      case 2: return -1;
      case 3: return GaussianRational::i();
      case 4: return -GaussianRational::i();
      case 5: return Rational(1, 2);
      default: return Rational(-1, 2);
    }
  }

  /// Nonzero scalar used for torus factors.
  GaussianRational unit_scalar() {
    switch (below(5)) {
      case 0: return 2;
      case 1: return Rational(1, 2);
      case 2: return -1;
      case 3: return GaussianRational::i();
      default: return GaussianRational(1, 1);
    }
  }

  /// Homogeneous element with up to `max_terms` random monomials of parity p.
  /// The empty monomial is included among the candidates for even parity.
  SuperNumber element(const Signature& sig, Parity p, int max_terms = 3) {
    SuperNumber x(sig);
    const std::uint32_t full = sig.full_mask();
    if (p == Parity::Odd && sig.odd_count() == 0) return x;
    int terms = 1 + below(max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m{static_cast<std::uint32_t>(next()) & full};
      if (m.parity(sig) != p) m.bits ^= 1u;  // flip theta_1 to fix parity
      if (m.parity(sig) != p) continue;
      x += SuperNumber::monomial(sig, m, coefficient(false));
    }
    return x;
  }

  /// Even element with nonzero body.
  SuperNumber invertible_even(const Signature& sig, int max_terms = 2) {
    SuperNumber x = element(sig, Parity::Even, max_terms);
    SuperNumber body = SuperNumber::constant(sig, x.body());
    return (x - body) + SuperNumber::constant(sig, unit_scalar());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace superreal
