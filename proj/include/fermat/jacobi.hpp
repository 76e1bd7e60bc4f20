#pragma once

#include <span>

#include "fermat/types.hpp"

namespace fermat {

/// sn and sn' for the normalization (sn')^2 = 1 - sn^4, sn(0) = 0, sn'(0) = 1
/// (the classical sn with k^2 = -1).
struct SnValue {
  Complex s;
  Complex ds;
  bool at_pole = false;
};

/// Quarter period K = integral of dt / sqrt(1 - t^4) over [0, 1]; sn(K) = 1.
double sn_quarter_period();

/// |sn| above this value is reported as a pole.
inline constexpr double kSnPoleThreshold = 1e8;

/// Evaluates sn(z). z is first reduced with the antiperiods 2K and 2iK
/// (sn(z + 2K) = sn(z + 2iK) = -sn(z)), then the ODE sn'' = -2 sn^3 is
/// integrated from 0 along a straight segment.
SnValue sn(Complex z);

/// Integrates from the origin through each waypoint in turn, without any
/// periodic reduction. The final waypoint is the evaluation point.
SnValue sn_along_path(std::span<const Complex> waypoints);

/// (1/sn, d/dz (1/sn)) at z; finite and analytic across the poles of sn.
std::pair<Complex, Complex> sn_reciprocal(Complex z);

/// Pole of sn nearest to z0, found by scanning |sn| on a grid around z0 and
/// refining with Newton's method on 1/sn.
Complex sn_nearest_pole(Complex z0);

}  // namespace fermat
