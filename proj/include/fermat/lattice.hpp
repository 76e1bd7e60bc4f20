#pragma once

#include "fermat/types.hpp"

namespace fermat {

/// Period lattice omega1*Z + omega2*Z.
class Lattice {
 public:
  /// Throws ParameterError if the generators are linearly dependent over R.
  Lattice(Complex omega1, Complex omega2);

  Complex omega1() const { return omega1_; }
  Complex omega2() const { return omega2_; }

  /// mu*omega1 + nu*omega2.
  Complex point(long long mu, long long nu) const {
    return static_cast<double>(mu) * omega1_ + static_cast<double>(nu) * omega2_;
  }

  /// Real coordinates (x, y) with z = x*omega1 + y*omega2.
  std::pair<double, double> coordinates(Complex z) const;

 private:
  Complex omega1_;
  Complex omega2_;
  double det_;  // Im(conj(omega1) * omega2)
};

/// A point split into a representative of the centered fundamental cell and
/// the lattice coordinates of the period that was removed.
struct CellCoords {
  Complex reduced;
  long long mu = 0;
  long long nu = 0;
};

/// Reduces z into the cell whose basis coordinates lie in [-1/2, 1/2).
/// Throws DomainError for non-finite input.
CellCoords reduce_to_cell(Complex z, const Lattice& lat);

/// Distance from z to the nearest lattice point.
double distance_to_lattice(Complex z, const Lattice& lat);

/// True iff z lies within tol*|omega1| of a lattice point.
bool is_lattice_point(Complex z, const Lattice& lat, double tol);

/// Nearest lattice point to z, as integer coordinates.
std::pair<long long, long long> nearest_lattice_point(Complex z, const Lattice& lat);

/// True iff A*omega1 and A*omega2 are both lattice points, i.e. A maps the
/// lattice onto itself. Requires |A| = 1 to within 1e-9 (ParameterError otherwise).
bool check_rotation_bijection(Complex A, const Lattice& lat, double tol);

}  // namespace fermat
