#ifndef NCM_ORACLES_HPP
#define NCM_ORACLES_HPP

#include <functional>

#include "ncm/algebra.hpp"
#include "ncm/group.hpp"

namespace ncm {

/// Finite metric space; the axioms (symmetry, zero diagonal, triangle
/// inequality) are checked exhaustively at construction.
struct FiniteMetricSpace {
  explicit FiniteMetricSpace(RMatrix d);

  int size() const { return static_cast<int>(d.rows()); }
  RMatrix d;
};

/// Right-invariant metric d(y, z) = ell(y z^{-1}).
FiniteMetricSpace metric_from_length(const FiniteGroup& group, const std::vector<double>& ell);
FiniteMetricSpace metric_from_length(const LengthFunction& ell);

/// Optimal-transport cost between probability vectors: the primal coupling LP,
/// cross-checked against the dual Lipschitz LP (gap must close within 1e-9).
double kantorovich_lp(const FiniteMetricSpace& space, const RVector& mu, const RVector& nu);

/// Brute-force sup of |mu(a) - nu(a)| / L(a) over traceless Hermitian
/// a = x sigma_x + y sigma_y + z sigma_z in M_2, from a nested latitude /
/// longitude grid (monotone under resolution doubling) plus deterministic
/// local ascent. `seminorm` is the closed form L(x, y, z).
double bloch_bruteforce_m2(const std::function<double(double, double, double)>& seminorm,
                           const DensityState& mu, const DensityState& nu, int resolution);

}  // namespace ncm

#endif
