#ifndef NCM_METRIC_HPP
#define NCM_METRIC_HPP

#include <memory>
#include <vector>

#include "ncm/algebra.hpp"
#include "ncm/group.hpp"
#include "ncm/seminorm.hpp"
#include "ncm/simplex.hpp"

namespace ncm {

/// rho(mu, nu) = sup { |mu(a) - nu(a)| : L(a) <= 1 }, maximized over the
/// traceless Hermitian span of `basis` (lossless: the seminorm is adjoint
/// invariant and kills the identity).
struct DistanceProblem {
  std::shared_ptr<const Seminorm> seminorm;
  DensityState mu;
  DensityState nu;
  HermitianBasis basis;
  double tolerance = 1e-6;
  int max_iterations = 500;
  // 0: derive from the seminorm's diameter hint (or a sampled quotient-radius
  // estimate when no hint exists)
  double box_radius = 0.0;
  int cuts_per_iteration = 8;
  int max_cut_pool = 600;
};

struct DistanceResult {
  double lo = 0.0;
  double hi = 0.0;
  RVector witness;  // coordinates of the best feasible-rescaled element
  int iterations = 0;
  bool certified = false;
  int cuts_used = 0;

  double estimate() const { return 0.5 * (lo + hi); }
};

/// Cutting-plane loop: solve the LP over accumulated cuts inside the box,
/// evaluate L exactly at the LP optimizer, record bounds, cut, repeat.
/// Throws if the seminorm kernel meets the coordinate space (non-ergodic).
DistanceResult spectral_distance(const DistanceProblem& p);

std::vector<std::vector<DistanceResult>> distance_matrix(
    std::shared_ptr<const Seminorm> seminorm, const std::vector<DensityState>& states,
    const HermitianBasis& basis, double tolerance, int max_iterations = 500);

/// rho <= 2 * (1/|G|) sum_x ell(x).
double diameter_bound(const FiniteGroup& group, const std::vector<double>& ell);
double diameter_bound(const LengthFunction& ell);

/// Sampled lower estimate of sup (lambda_max - lambda_min)/2 over the L-unit
/// ball, refined by local ascent. Throws when a sampled nonscalar has L = 0.
double quotient_radius(const Seminorm& seminorm, const HermitianBasis& basis, int samples,
                       std::uint64_t seed = 1);

}  // namespace ncm

#endif
