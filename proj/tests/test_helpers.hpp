#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fermat/types.hpp"

namespace testing {

using fermat::Complex;

inline const Complex kI(0.0, 1.0);

// Seeded points in a square [-half, half]^2.
inline std::vector<Complex> square_points(int count, double half, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<Complex> pts;
  for (int k = 0; k < count; ++k) {
    const double x = u(rng);
    pts.emplace_back(x, u(rng));
  }
  return pts;
}

// Gamma(1/3)^3 / (2 pi): the real period of the g2 = 0, g3 = 1 lattice.
inline double gamma_period() { return std::pow(std::tgamma(1.0 / 3.0), 3) / (2.0 * fermat::kPi); }

// Gamma(1/4)^2 / (4 sqrt(2 pi)): the lemniscatic quarter period.
inline double gamma_quarter_period() {
  return std::pow(std::tgamma(0.25), 2) / (4.0 * std::sqrt(2.0 * fermat::kPi));
}

}  // namespace testing
