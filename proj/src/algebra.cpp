#include "ncm/algebra.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ncm {

bool finite_entries(const Matrix& a) {
  return a.allFinite();
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix gram = u.adjoint() * u;
  return (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

Matrix identity(Eigen::Index dim) {
  return Matrix::Identity(dim, dim);
}

DensityState::DensityState(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() < 1 || rho_.rows() != rho_.cols())
    throw std::invalid_argument("DensityState: matrix must be square and nonempty");
  if (!finite_entries(rho_))
    throw std::invalid_argument("DensityState: non-finite entries");
  if (!is_hermitian(rho_, kHermitianTol))
    throw std::invalid_argument("DensityState: not Hermitian within tolerance");
  if (std::abs(rho_.trace().real() - 1.0) > kTraceTol || std::abs(rho_.trace().imag()) > kTraceTol)
    throw std::invalid_argument("DensityState: trace != 1 within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol)
    throw std::invalid_argument("DensityState: negative eigenvalue beyond tolerance");
}

double operator_norm(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument("operator_norm: matrix must be square and nonempty");
  if (!finite_entries(a))
    throw std::invalid_argument("operator_norm: non-finite entries");
  // sigma_max via the spectrum of a* a; dense scale, eigendecomposition is exact enough.
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

Complex pair_state(const DensityState& mu, const Matrix& a) {
  if (a.rows() != mu.dim() || a.cols() != mu.dim())
    throw std::invalid_argument("pair_state: dimension mismatch");
  return (mu.rho() * a).trace();
}

namespace {

// One ascent pass for f(v) = |<v, a v>|: rotate a by the phase of the current
// value and move to the top eigenvector of the Hermitian part. f is
// nondecreasing along these steps.
double ascend_numerical_radius(const Matrix& a, CVector v) {
  const Eigen::Index n = a.rows();
  double value = 0.0;
  for (int iter = 0; iter < 60; ++iter) {
    Complex q = v.dot(a * v);  // <v, a v>
    double mod = std::abs(q);
    Complex phase = mod > 1e-300 ? std::conj(q) / mod : Complex(1, 0);
    Matrix h = 0.5 * (phase * a + std::conj(phase) * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    CVector next = es.eigenvectors().col(n - 1);
    double nextValue = std::abs(next.dot(a * next));
    if (nextValue <= value + 1e-15) {
      value = std::max(value, nextValue);
      break;
    }
    value = nextValue;
    v = next;
  }
  return value;
}

}  // namespace

double numerical_radius(const Matrix& a, int samples) {
  if (samples < 1) throw std::invalid_argument("numerical_radius: samples must be positive");
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument("numerical_radius: matrix must be square");
  if (!finite_entries(a))
    throw std::invalid_argument("numerical_radius: non-finite entries");
  const Eigen::Index n = a.rows();
  std::mt19937_64 rng(0x9d2c5680u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    best = std::max(best, ascend_numerical_radius(a, v));
  }
  return best;
}

HermitianBasis::HermitianBasis(Eigen::Index dim, std::vector<Matrix> elements)
    : dim_(dim), elements_(std::move(elements)) {}

HermitianBasis HermitianBasis::full(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("HermitianBasis: dim must be >= 1");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(dim * dim - 1));
  const double offScale = std::sqrt(static_cast<double>(dim) / 2.0);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      Matrix x = Matrix::Zero(dim, dim);
      x(j, k) = Complex(offScale, 0);
      x(k, j) = Complex(offScale, 0);
      out.push_back(x);
      Matrix y = Matrix::Zero(dim, dim);
      y(j, k) = Complex(0, offScale);
      y(k, j) = Complex(0, -offScale);
      out.push_back(y);
    }
  }
  // diagonal Gell-Mann set, normalized to trace(b^2) = dim
  for (Eigen::Index l = 1; l < dim; ++l) {
    Matrix d = Matrix::Zero(dim, dim);
    double norm = std::sqrt(static_cast<double>(dim) /
                            static_cast<double>(l * (l + 1)));
    for (Eigen::Index i = 0; i < l; ++i) d(i, i) = norm;
    d(l, l) = -norm * static_cast<double>(l);
    out.push_back(d);
  }
  return HermitianBasis(dim, std::move(out));
}

HermitianBasis HermitianBasis::diagonal(Eigen::Index dim) {
  HermitianBasis fullBasis = full(dim);
  std::vector<Matrix> out(fullBasis.elements_.end() - (dim - 1), fullBasis.elements_.end());
  return HermitianBasis(dim, std::move(out));
}

RVector HermitianBasis::coords_of(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw std::invalid_argument("coords_of: dimension mismatch");
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("coords_of: element is not Hermitian");
  RVector coords(size());
  for (Eigen::Index j = 0; j < size(); ++j)
    coords(j) = (elements_[static_cast<std::size_t>(j)] * a).trace().real() /
                static_cast<double>(dim_);
  return coords;
}

Matrix HermitianBasis::element_of(const RVector& coords) const {
  if (coords.size() != size())
    throw std::invalid_argument("element_of: coordinate count mismatch");
  Matrix a = Matrix::Zero(dim_, dim_);
  for (Eigen::Index j = 0; j < size(); ++j)
    a += coords(j) * elements_[static_cast<std::size_t>(j)];
  return a;
}

Matrix random_matrix(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_matrix: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

Matrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  Matrix g = random_matrix(dim, seed);
  return 0.5 * (g + g.adjoint());
}

DensityState random_state(Eigen::Index dim, std::uint64_t seed) {
  Matrix g = random_matrix(dim, seed);
  Matrix p = g * g.adjoint();
  p /= p.trace().real();
  p = 0.5 * (p + p.adjoint());
  return DensityState(p);
}

}  // namespace ncm
