#ifndef NCM_SEMINORM_HPP
#define NCM_SEMINORM_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncm/algebra.hpp"
#include "ncm/group.hpp"

namespace ncm {

/// Supporting hyperplane for the cutting-plane optimizer: a real-linear
/// functional g (in Hermitian-basis coordinates) with g(a) = value and
/// g(c) <= L(c) for every c.
struct Cut {
  RVector gradient;
  double value = 0.0;
};

/// Seminorm on Hermitian elements with exact or lower-estimate evaluation and
/// a subgradient (cut) generator. Instances are immutable; evaluation is pure.
class Seminorm {
 public:
  virtual ~Seminorm() = default;

  virtual double evaluate(const Matrix& a) const = 0;
  double operator()(const Matrix& a) const { return evaluate(a); }

  /// True when evaluate returns the exact value, false for a lower estimate.
  virtual bool exact() const = 0;
  virtual std::string kind() const = 0;

  std::optional<Cut> cut(const Matrix& a, const HermitianBasis& basis) const;
  /// Up to max_cuts supporting hyperplanes at a, strongest first.
  virtual std::vector<Cut> cuts(const Matrix& a, const HermitianBasis& basis,
                                int max_cuts) const = 0;

  /// A-priori bound on the induced state-space metric, when one is known.
  virtual std::optional<double> diameter_hint() const { return std::nullopt; }

  /// True iff no nonzero element of span(basis) is annihilated by the
  /// seminorm (kernel restricted to the coordinate space is {0}).
  virtual bool kernel_is_scalars(const HermitianBasis& basis) const;

 protected:
  /// Images of b under the linear maps whose norms build the seminorm
  /// (group differences or Lie commutators); used for the kernel check.
  virtual std::vector<Matrix> kernel_probe(const Matrix& b) const = 0;
};

/// L(a) = max over x != e of ||alpha_x(a) - a|| / ell(x)^r.
/// r = 1 is the Lipschitz seminorm of the action, 0 < r < 1 the Hoelder
/// variant. Exact (finite max).
class LengthLipschitzSeminorm : public Seminorm {
 public:
  LengthLipschitzSeminorm(UnitaryImplementedAction action, LengthFunction ell,
                          double holder_exponent = 1.0);

  double evaluate(const Matrix& a) const override;
  bool exact() const override { return true; }
  std::string kind() const override;
  std::vector<Cut> cuts(const Matrix& a, const HermitianBasis& basis,
                        int max_cuts) const override;
  std::optional<double> diameter_hint() const override;

  const UnitaryImplementedAction& action() const { return action_; }
  const LengthFunction& length() const { return ell_; }
  double holder_exponent() const { return r_; }

 protected:
  std::vector<Matrix> kernel_probe(const Matrix& b) const override;

 private:
  // (alpha_x(a) - a) / ell(x)^r for every non-identity x
  std::vector<Matrix> difference_terms(const Matrix& a) const;
  UnitaryImplementedAction action_;
  LengthFunction ell_;
  double r_ = 1.0;
};

/// L(a) = sup over ||X||_metric = 1 of ||d_X a||, estimated from below by a
/// deterministic sphere sweep plus local ascent. Exact only for a
/// one-dimensional Lie algebra.
class LieSeminorm : public Seminorm {
 public:
  explicit LieSeminorm(LieGenerators gens, int budget = 2048);

  double evaluate(const Matrix& a) const override;
  bool exact() const override { return gens_.lie_dim() == 1; }
  std::string kind() const override { return "lie"; }
  std::vector<Cut> cuts(const Matrix& a, const HermitianBasis& basis,
                        int max_cuts) const override;

  const LieGenerators& generators() const { return gens_; }

 protected:
  std::vector<Matrix> kernel_probe(const Matrix& b) const override;

 private:
  RVector best_direction(const Matrix& a) const;  // unit vector in the orthonormal frame
  LieGenerators gens_;
  int budget_ = 2048;
};

/// Skew-adjoint anticommuting generators of the complex Clifford algebra on a
/// faithful spinor representation: e_j^2 = -1, e_j* = -e_j. Even dimension
/// gives one 2^(m/2) block, odd gives two 2^((m-1)/2) blocks with opposite
/// signs.
struct CliffordGenerators {
  int m = 0;
  Eigen::Index rep_dim = 0;
  std::vector<Matrix> e;

  static CliffordGenerators make(int m);
};

/// Largest residual over the defining relations (skewness, squares,
/// anticommutation); ~0 for a valid set.
double clifford_relation_residual(const CliffordGenerators& c);
/// True iff the 2^m products of distinct generators are linearly independent.
bool clifford_faithful(const CliffordGenerators& c);

/// Generators for the orthonormal frame of the given inner product.
CliffordGenerators clifford_generators(int m, const RMatrix& metric);

/// Lie generators paired with matching Clifford generators; the auxiliary
/// projections p_j = (1 + i e_j)/2 are validated at construction.
struct DiracData {
  LieGenerators gens;
  CliffordGenerators clifford;

  static DiracData make(LieGenerators gens);
  Eigen::Index algebra_dim() const { return gens.algebra_dim(); }
};

/// sum_j d_{E_j}(a) (x) e_j on A (x) S, for the metric-orthonormal frame E_j.
Matrix dirac_commutator(const DiracData& dd, const Matrix& a);

/// L(a) = ||sum_j d_{E_j}(a) (x) e_j||. Exact.
class DiracSeminorm : public Seminorm {
 public:
  explicit DiracSeminorm(DiracData dd);

  double evaluate(const Matrix& a) const override;
  bool exact() const override { return true; }
  std::string kind() const override { return "dirac"; }
  std::vector<Cut> cuts(const Matrix& a, const HermitianBasis& basis,
                        int max_cuts) const override;

  const DiracData& data() const { return dd_; }

 protected:
  std::vector<Matrix> kernel_probe(const Matrix& b) const override;

 private:
  DiracData dd_;
};

/// Matrix of left multiplication by a on the GNS space of the faithful state
/// eta (dimension n^2).
Matrix gns_left_multiplication(const Matrix& a, const DensityState& eta);

/// Matrix of D on L^2(A, eta) (x) S, dimension n^2 * rep_dim, in the
/// orthonormal GNS basis. Hermitian when eta is the invariant trace state.
Matrix build_dirac_matrix(const DiracData& dd, const DensityState& eta);

/// t * L for t > 0.
class ScaledSeminorm : public Seminorm {
 public:
  ScaledSeminorm(std::shared_ptr<const Seminorm> inner, double factor);

  double evaluate(const Matrix& a) const override;
  bool exact() const override { return inner_->exact(); }
  std::string kind() const override { return "scaled:" + inner_->kind(); }
  std::vector<Cut> cuts(const Matrix& a, const HermitianBasis& basis,
                        int max_cuts) const override;
  std::optional<double> diameter_hint() const override;
  bool kernel_is_scalars(const HermitianBasis& basis) const override;

  const Seminorm& inner() const { return *inner_; }
  double factor() const { return factor_; }

 protected:
  std::vector<Matrix> kernel_probe(const Matrix& b) const override;

 private:
  std::shared_ptr<const Seminorm> inner_;
  double factor_ = 1.0;
};

std::shared_ptr<Seminorm> scale_seminorm(std::shared_ptr<const Seminorm> inner, double t);

/// Single strongest supporting hyperplane at a, or nothing when L(a) = 0.
std::optional<Cut> seminorm_cut(const Seminorm& seminorm, const Matrix& a,
                                const HermitianBasis& basis);

}  // namespace ncm

#endif
