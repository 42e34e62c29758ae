#include "ncm/instances.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ncm {

namespace {

Matrix shift_matrix(int q) {
  Matrix s = Matrix::Zero(q, q);
  for (int j = 0; j < q; ++j) s((j + 1) % q, j) = 1.0;
  return s;
}

Matrix clock_matrix(int q) {
  Matrix c = Matrix::Zero(q, q);
  const double step = 2.0 * std::numbers::pi / q;
  for (int j = 0; j < q; ++j) c(j, j) = std::polar(1.0, step * j);
  return c;
}

}  // namespace

UnitaryImplementedAction weyl_action(int q) {
  if (q < 2) throw std::invalid_argument("weyl_action: q must be at least 2");
  FiniteGroup zq = FiniteGroup::cyclic(q);
  FiniteGroup group = FiniteGroup::product(zq, zq);
  Matrix s = shift_matrix(q);
  Matrix c = clock_matrix(q);
  std::vector<Matrix> impl(static_cast<std::size_t>(q * q));
  Matrix spow = identity(q);
  for (int m = 0; m < q; ++m) {
    Matrix u = spow;
    for (int n = 0; n < q; ++n) {
      impl[static_cast<std::size_t>(m * q + n)] = u;
      u = u * c;
    }
    spow = s * spow;
  }
  // clock and shift only commute up to a phase, so the implementers form a
  // projective representation
  return UnitaryImplementedAction(std::move(group), std::move(impl), true);
}

LengthFunction torus_word_length(int q) {
  FiniteGroup zq = FiniteGroup::cyclic(q);
  FiniteGroup group = FiniteGroup::product(zq, zq);
  return word_length(group, {q, 1});  // (1,0) and (0,1)
}

Instance fuzzy_torus(int q, double w1, double w2) {
  UnitaryImplementedAction action = weyl_action(q);
  LengthFunction ell =
      (w1 > 0.0 || w2 > 0.0) ? torus_embedding_length(q, w1, w2) : torus_word_length(q);
  auto seminorm = std::make_shared<LengthLipschitzSeminorm>(action, ell);
  return Instance{"fuzzy_torus", q,       HermitianBasis::full(q), std::move(seminorm),
                  std::move(action), std::move(ell), nullptr};
}

LieGenerators spin_generators(int n) {
  if (n < 2) throw std::invalid_argument("spin_generators: n must be at least 2");
  const double j = 0.5 * (n - 1);
  Matrix jz = Matrix::Zero(n, n);
  Matrix jplus = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) jz(k, k) = j - k;
  // J+ |j, m-1> = sqrt(j(j+1) - m(m-1)) |j, m>
  for (int k = 0; k + 1 < n; ++k) {
    double m = j - k;
    jplus(k, k + 1) = std::sqrt(j * (j + 1) - m * (m - 1));
  }
  Matrix jx = 0.5 * (jplus + jplus.adjoint());
  Matrix jy = Complex(0, -0.5) * (jplus - jplus.adjoint());
  const Complex mi(0, -1);
  return LieGenerators({mi * jx, mi * jy, mi * jz});
}

Instance fuzzy_sphere(int n) {
  LieGenerators gens = spin_generators(n);
  auto dd = std::make_shared<DiracData>(DiracData::make(gens));
  auto seminorm = std::make_shared<DiracSeminorm>(*dd);
  return Instance{"fuzzy_sphere", n,    HermitianBasis::full(n), std::move(seminorm),
                  std::nullopt,   std::nullopt, std::move(dd)};
}

UnitaryImplementedAction translation_action(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<Matrix> impl(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    Matrix p = Matrix::Zero(n, n);
    for (int z = 0; z < n; ++z) p(group.op(x, z), z) = 1.0;
    impl[static_cast<std::size_t>(x)] = std::move(p);
  }
  return UnitaryImplementedAction(group, std::move(impl));
}

Instance commutative_instance(const FiniteGroup& group, const LengthFunction& ell) {
  UnitaryImplementedAction action = translation_action(group);
  auto seminorm = std::make_shared<LengthLipschitzSeminorm>(action, ell);
  return Instance{"commutative",
                  group.order(),
                  HermitianBasis::diagonal(group.order()),
                  std::move(seminorm),
                  std::move(action),
                  ell,
                  nullptr};
}

Instance custom_instance(const FiniteGroup& group, std::vector<Matrix> implementers,
                         const LengthFunction& ell, bool cocycle_tolerant) {
  if (implementers.empty()) throw std::invalid_argument("custom_instance: no implementers");
  Eigen::Index dim = implementers.front().rows();
  UnitaryImplementedAction action(group, std::move(implementers), cocycle_tolerant);
  auto seminorm = std::make_shared<LengthLipschitzSeminorm>(action, ell);
  return Instance{"custom",           dim, HermitianBasis::full(dim), std::move(seminorm),
                  std::move(action), ell, nullptr};
}

DensityState pure_basis_state(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("pure_basis_state: index out of range");
  Matrix rho = Matrix::Zero(dim, dim);
  rho(k, k) = 1.0;
  return DensityState(std::move(rho));
}

DensityState maximally_mixed(Eigen::Index dim) {
  return DensityState(identity(dim) / static_cast<double>(dim));
}

DensityState random_diagonal_state(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  Matrix rho = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    double w = expo(rng);
    rho(j, j) = w;
    total += w;
  }
  rho /= total;
  return DensityState(std::move(rho));
}

}  // namespace ncm
