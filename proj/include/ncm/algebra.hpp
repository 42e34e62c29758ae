#ifndef NCM_ALGEBRA_HPP
#define NCM_ALGEBRA_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ncm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Construction tolerances for Hermiticity / positivity / trace of states.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;

bool finite_entries(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = kHermitianTol);
bool is_unitary(const Matrix& u, double tol = 1e-12);

Matrix identity(Eigen::Index dim);

/// Positive, unit-trace matrix; represents the state mu(a) = trace(rho a).
class DensityState {
 public:
  explicit DensityState(Matrix rho);
  const Matrix& rho() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

 private:
  Matrix rho_;
};

/// C*-norm: largest singular value. Throws on non-finite entries.
double operator_norm(const Matrix& a);

/// mu(a) = trace(rho a). Real when a is Hermitian.
Complex pair_state(const DensityState& mu, const Matrix& a);

/// sup over unit vectors v of |<v, a v>|, by deterministic sampling plus
/// local ascent. Monotone nondecreasing in `samples`.
double numerical_radius(const Matrix& a, int samples);

// Real coordinates on the traceless Hermitian part of the algebra.
// Elements are Hermitian, traceless, and orthonormal for the normalized
// trace pairing <a,b> = trace(ab)/dim. `full` carries dim^2-1 elements
// (generalized Gell-Mann set); `diagonal` spans only the traceless diagonal
// subalgebra (used for commutative instances embedded as diagonal matrices).
class HermitianBasis {
 public:
  static HermitianBasis full(Eigen::Index dim);
  static HermitianBasis diagonal(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(elements_.size()); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& element(Eigen::Index j) const { return elements_[static_cast<std::size_t>(j)]; }

  // coords_j = trace(b_j a)/dim; the identity component is dropped.
  // Throws if a is not Hermitian.
  RVector coords_of(const Matrix& a) const;
  Matrix element_of(const RVector& coords) const;

 private:
  HermitianBasis(Eigen::Index dim, std::vector<Matrix> elements);
  Eigen::Index dim_ = 0;
  std::vector<Matrix> elements_;
};

Matrix random_matrix(Eigen::Index dim, std::uint64_t seed);
Matrix random_hermitian(Eigen::Index dim, std::uint64_t seed);
DensityState random_state(Eigen::Index dim, std::uint64_t seed);

}  // namespace ncm

#endif
