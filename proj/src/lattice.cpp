#include "fermat/lattice.hpp"

#include <cmath>
#include <limits>

namespace fermat {

Lattice::Lattice(Complex omega1, Complex omega2)
    : omega1_(omega1), omega2_(omega2), det_(std::imag(std::conj(omega1) * omega2)) {
  if (!is_finite(omega1) || !is_finite(omega2)) {
    throw DomainError("lattice generators must be finite");
  }
  const double scale = std::abs(omega1) * std::abs(omega2);
  if (scale == 0.0 || std::abs(det_) <= 1e-12 * scale) {
    throw ParameterError("lattice generators are linearly dependent over R");
  }
}

std::pair<double, double> Lattice::coordinates(Complex z) const {
  // z = x*w1 + y*w2; Cramer's rule on the real 2x2 system.
  const double x = std::imag(std::conj(z) * omega2_) / det_;
  const double y = std::imag(std::conj(omega1_) * z) / det_;
  return {x, y};
}

CellCoords reduce_to_cell(Complex z, const Lattice& lat) {
  if (!is_finite(z)) {
    throw DomainError("reduce_to_cell: non-finite input");
  }
  const auto [x, y] = lat.coordinates(z);
  // floor(t + 1/2) maps the coordinate into [-1/2, 1/2); an exact 1/2 goes to -1/2.
  const auto mu = static_cast<long long>(std::floor(x + 0.5));
  const auto nu = static_cast<long long>(std::floor(y + 0.5));
  CellCoords out;
  out.mu = mu;
  out.nu = nu;
  out.reduced = (z - static_cast<double>(mu) * lat.omega1()) - static_cast<double>(nu) * lat.omega2();
  return out;
}

std::pair<long long, long long> nearest_lattice_point(Complex z, const Lattice& lat) {
  const CellCoords c = reduce_to_cell(z, lat);
  // The rounded coordinates are not always the nearest point for skewed bases.
  double best = std::numeric_limits<double>::infinity();
  std::pair<long long, long long> arg{c.mu, c.nu};
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const double d = std::abs(c.reduced - lat.point(a, b));
      if (d < best) {
        best = d;
        arg = {c.mu + a, c.nu + b};
      }
    }
  }
  return arg;
}

double distance_to_lattice(Complex z, const Lattice& lat) {
  const CellCoords c = reduce_to_cell(z, lat);
  double best = std::numeric_limits<double>::infinity();
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      best = std::min(best, std::abs(c.reduced - lat.point(a, b)));
    }
  }
  return best;
}

bool is_lattice_point(Complex z, const Lattice& lat, double tol) {
  if (!is_finite(z)) {
    return false;
  }
  return distance_to_lattice(z, lat) < tol * std::abs(lat.omega1());
}

bool check_rotation_bijection(Complex A, const Lattice& lat, double tol) {
  if (!is_finite(A) || std::abs(std::abs(A) - 1.0) > 1e-9) {
    throw ParameterError("check_rotation_bijection: |A| must be 1");
  }
  return is_lattice_point(A * lat.omega1(), lat, tol) && is_lattice_point(A * lat.omega2(), lat, tol);
}

}  // namespace fermat
