#pragma once

#include <cstdint>

#include "fermat/expr.hpp"
#include "fermat/mero_fn.hpp"
#include "fermat/weierstrass.hpp"

namespace fermat {

struct Disk {
  Complex center{0.0, 0.0};
  double radius = 2.0;
};

/// Residual statistics of a functional-equation sweep.
///
/// samples_used + skipped_near_pole == samples_requested, and
/// passed == (max_residual <= tolerance && 2*samples_used >= samples_requested).
struct VerificationReport {
  int samples_requested = 0;
  int samples_used = 0;
  int skipped_near_pole = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  Complex worst_point{0.0, 0.0};
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Seeded uniform points in a disk. The generator is a fixed mt19937_64 stream
/// mapped to doubles by hand, so sample sets are identical across platforms.
std::vector<Complex> sample_disk(const Disk& region, int count, std::uint64_t seed);

/// Sweeps |f(z)^n + g(L(z))^m - rhs(z)| / (1 + |rhs(z)|) over seeded samples in
/// the region. Samples where f or g reports at_pole are skipped and counted.
/// Throws ParameterError for a degenerate region, samples < 1 or tol <= 0.
VerificationReport verify_equation(const MeroFn& f, const MeroFn& g, int n, int m, const Expr& rhs,
                                   const AffineMap& L, const Disk& region, int samples, double tol,
                                   std::uint64_t seed);

struct ContourOptions {
  int nodes = 256;
  int max_nodes = 4096;
  double agreement = 1e-9;
};

/// (1 / 2 pi i) times the contour integral of fn around the circle, by the
/// trapezoid rule. Node counts double from `nodes` until two successive
/// estimates agree or max_nodes is reached. Throws ContourError if any node
/// evaluates at a pole. The radius must isolate one singularity; that is the
/// caller's responsibility.
Complex residue_at(const MeroFn& fn, Complex center, double radius, const ContourOptions& options = {});

/// Central difference with one Richardson extrapolation step.
Complex numeric_derivative(const MeroFn& fn, Complex z, double h);

/// Zero/pole order at `center` by the argument principle applied to fn'/fn,
/// with fn' from numeric_derivative at step 1e-5 * radius. Positive means a
/// zero, negative a pole. Throws InconclusiveError if the integral is farther
/// than 0.1 from an integer.
int order_at(const MeroFn& fn, Complex center, double radius, const ContourOptions& options = {});

/// The two sides of the relation obtained by dividing P(h(L(z))) and P(h(z)):
///
///   lhs(z) = (h o L)'(z) / P(h(L z)) + (1/sqrt3) [P(h(L z))]' / P(h(L z))
///   rhs(z) = A eta [ h'(z) / P(h(z)) - (1/sqrt3) [P(h(z))]' / P(h(z)) ]
///
/// and their residues at b0. At a common pole of P(h) and P(h o L) of orders m
/// and k the residues are -k/sqrt3 and A eta m/sqrt3.
struct ResidueIdentity {
  Complex lhs;
  Complex rhs;
};

/// Residues of both sides at b0 on a circle of the given radius. The result is
/// recomputed at radius/2; a disagreement above 1e-8 means more than one
/// singularity is enclosed and raises ContourError.
ResidueIdentity residue_identity_check(const Expr& h, const AffineMap& L, Complex A, Complex eta, Complex b0,
                                       const EquianharmonicContext& ctx, double radius);

}  // namespace fermat
