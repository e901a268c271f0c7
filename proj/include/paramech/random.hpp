#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "polynomial.hpp"
#include "scalar.hpp"

namespace paramech {

/// Deterministic source of small random rationals p/q (|p| <= 9, 1 <= q <= 5).
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  Rational next() {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    return Rational(num(rng_), den(rng_));
  }
  Rational nonzero() {
    Rational r = next();
    while (r == 0) r = next();
    return r;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// Dyadic rational k / 2^bits, exactly representable as a double.
  Rational dyadic(int bits = 4) {
    std::uniform_int_distribution<int> num(-(8 << bits), 8 << bits);
    return Rational(num(rng_), 1 << bits);
  }

  /// Random polynomial with `terms` terms of total degree <= max_degree.
  Polynomial<Rational> polynomial(std::size_t nvars, int max_degree, int terms) {
    Polynomial<Rational> p(nvars);
    for (int t = 0; t < terms; ++t) {
      Monomial m(nvars, 0);
      const int deg = integer(0, max_degree);
      for (int d = 0; d < deg; ++d) m[std::size_t(integer(0, int(nvars) - 1))] += 1;
      p.add_term(m, nonzero());
    }
    return p;
  }

  std::vector<Rational> point(std::size_t dim) {
    std::vector<Rational> x(dim);
    for (auto& v : x) v = next();
    return x;
  }

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace paramech
