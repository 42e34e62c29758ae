#ifndef NCM_GROUP_HPP
#define NCM_GROUP_HPP

#include <utility>
#include <vector>

#include "ncm/algebra.hpp"

namespace ncm {

/// Finite group given by its multiplication table. The table is checked
/// exhaustively (associativity, identity, inverses) at construction.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<int>> mul);
  static FiniteGroup cyclic(int n);
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
  // All permutations of {0..n-1} under composition, sorted lexicographically
  // (so index 0 is the identity). n <= 5.
  static FiniteGroup symmetric(int n);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int op(int x, int y) const { return mul_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
  int inverse(int x) const { return inv_[static_cast<std::size_t>(x)]; }

  // For symmetric(): the permutation behind element x.
  const std::vector<int>& permutation(int x) const;

 private:
  FiniteGroup() = default;
  int order_ = 0;
  int identity_ = 0;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> perms_;  // only for symmetric()
};

/// Nonnegative values per group element satisfying subadditivity,
/// inverse-symmetry, and vanishing exactly at the identity.
struct LengthFunction {
  FiniteGroup group;
  std::vector<double> values;
  double at(int x) const { return values[static_cast<std::size_t>(x)]; }
};

bool verify_length_function(const FiniteGroup& group, const std::vector<double>& values);
bool conjugation_invariance_check(const FiniteGroup& group, const std::vector<double>& values);

/// ell(x) = ||pi_x - 1|| for a faithful (non-projective) unitary representation.
LengthFunction length_from_representation(const FiniteGroup& group, const std::vector<Matrix>& pi);

/// Word length for the given generating set (inverses are added implicitly).
LengthFunction word_length(const FiniteGroup& group, const std::vector<int>& generators);

/// Restriction to Z_q x Z_q of a translation-invariant geodesic metric on the
/// 2-torus: ell(m,n) = w1 (2 pi / q) min(m, q-m) + w2 (2 pi / q) min(n, q-n).
/// Element (m,n) carries index m*q + n.
LengthFunction torus_embedding_length(int q, double w1, double w2);

/// Finite group acting by conjugation with one unitary implementer per
/// element. Projective implementers are allowed when cocycle_tolerant is set;
/// the conjugation law itself is always enforced on a Hermitian basis.
class UnitaryImplementedAction {
 public:
  UnitaryImplementedAction(FiniteGroup group, std::vector<Matrix> implementers,
                           bool cocycle_tolerant = false);

  const FiniteGroup& group() const { return group_; }
  Eigen::Index algebra_dim() const { return implementers_.front().rows(); }
  const Matrix& implementer(int x) const { return implementers_[static_cast<std::size_t>(x)]; }
  bool cocycle_tolerant() const { return cocycle_tolerant_; }

 private:
  FiniteGroup group_;
  std::vector<Matrix> implementers_;
  bool cocycle_tolerant_ = false;
};

Matrix act(const UnitaryImplementedAction& action, int x, const Matrix& a);

/// Haar average (1/|G|) sum_x alpha_x(a).
Matrix conditional_expectation(const UnitaryImplementedAction& action, const Matrix& a);

/// True iff the fixed-point subalgebra is the scalars, detected by the
/// conditional-expectation sweep over a Hermitian basis (tolerance 1e-10).
bool is_ergodic(const UnitaryImplementedAction& action);

/// Skew-adjoint generators X_j together with an inner product on the Lie
/// algebra (default identity). The generators represent an orthonormal basis
/// of the Lie algebra under that inner product.
class LieGenerators {
 public:
  explicit LieGenerators(std::vector<Matrix> generators, RMatrix metric = RMatrix());

  int lie_dim() const { return static_cast<int>(generators_.size()); }
  Eigen::Index algebra_dim() const { return generators_.front().rows(); }
  const std::vector<Matrix>& generators() const { return generators_; }
  const RMatrix& metric() const { return metric_; }

  /// ||X||_metric = sqrt(X^T M X).
  double metric_norm(const RVector& x) const;

  /// Generators re-expressed in a metric-orthonormal frame:
  /// Y_k = sum_j (M^{-1/2})_{jk} X_j, so that ||X||_metric becomes Euclidean.
  const std::vector<Matrix>& orthonormal_generators() const { return ortho_; }

 private:
  std::vector<Matrix> generators_;
  RMatrix metric_;
  std::vector<Matrix> ortho_;
};

/// d_X a = [sum_j X_j \hat X_j, a].
Matrix lie_derivative(const LieGenerators& gens, const RVector& x, const Matrix& a);

/// (exp(sum X_j \hat X_j), ||X||_metric): the group element reached by the
/// one-parameter path, plus the geodesic length that path realizes.
std::pair<Matrix, double> sample_group_element(const LieGenerators& gens, const RVector& x);

}  // namespace ncm

#endif
