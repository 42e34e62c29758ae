#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "ncm/instances.hpp"
#include "ncm/seminorm.hpp"

using namespace ncm;

namespace {

Matrix pauli(int j) {
  Matrix m(2, 2);
  if (j == 0)
    m << 0, 1, 1, 0;
  else if (j == 1)
    m << 0, Complex(0, -1), Complex(0, 1), 0;
  else
    m << 1, 0, 0, -1;
  return m;
}

Matrix bloch(double x, double y, double z) {
  return x * pauli(0) + y * pauli(1) + z * pauli(2);
}

}  // namespace

TEST_CASE("commutative Lipschitz seminorm is the difference quotient") {
  Instance inst = commutative_instance(FiniteGroup::cyclic(2),
                                       word_length(FiniteGroup::cyclic(2), {1}));
  Matrix f = Matrix::Zero(2, 2);
  f(0, 0) = 3.0;
  f(1, 1) = -1.0;
  CHECK((*inst.seminorm)(f) == doctest::Approx(4.0));
  CHECK((*inst.seminorm)(identity(2)) == doctest::Approx(0.0));
}

TEST_CASE("fuzzy torus q=2 seminorm matches its closed form") {
  Instance inst = fuzzy_torus(2);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    double expected = 2.0 * std::max(std::hypot(y, z), std::hypot(x, y));
    CHECK((*inst.seminorm)(bloch(x, y, z)) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("Hoelder variant matches a brute-force maximum") {
  Instance inst = fuzzy_torus(2);
  LengthLipschitzSeminorm holder(*inst.action, *inst.ell, 0.5);
  CHECK(holder.kind() == "holder");
  Matrix a = pauli(0);
  double expected = 0.0;
  for (int x = 1; x < 4; ++x) {
    double diff = operator_norm(act(*inst.action, x, a) - a);
    expected = std::max(expected, diff / std::sqrt(inst.ell->at(x)));
  }
  CHECK(holder(a) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Hoelder dominates Lipschitz when all lengths are at most one") {
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  LengthFunction ell{z3, {0.0, 1.0, 1.0}};
  auto action = translation_action(z3);
  LengthLipschitzSeminorm lip(action, ell, 1.0);
  LengthLipschitzSeminorm holder(action, ell, 0.5);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix a = Matrix(random_hermitian(3, seed).diagonal().asDiagonal());
    CHECK(holder(a) >= lip(a) - 1e-12);
  }
}

TEST_CASE("seminorm axioms hold on random elements") {
  Instance inst = fuzzy_torus(3);
  const Seminorm& L = *inst.seminorm;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix a = random_matrix(3, seed);
    Matrix b = random_matrix(3, seed + 50);
    CHECK(L(a + b) <= L(a) + L(b) + 1e-10);
    CHECK(L(2.5 * a) == doctest::Approx(2.5 * L(a)).epsilon(1e-12));
    CHECK(L(a.adjoint()) == doctest::Approx(L(a)).epsilon(1e-10));
    CHECK(L(a * b) <= L(a) * operator_norm(b) + operator_norm(a) * L(b) + 1e-9);
  }
}

TEST_CASE("length seminorm rejects invalid lengths") {
  auto action = translation_action(FiniteGroup::cyclic(3));
  CHECK_THROWS_AS(LengthLipschitzSeminorm(action, LengthFunction{action.group(), {0, 0, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      LengthLipschitzSeminorm(action, word_length(action.group(), {1}), 0.0),
      std::invalid_argument);
}

TEST_CASE("cuts are supporting hyperplanes") {
  Instance inst = fuzzy_torus(2);
  const HermitianBasis& basis = inst.basis;
  Matrix a = bloch(0.3, -0.8, 1.2);
  auto cut = seminorm_cut(*inst.seminorm, a, basis);
  REQUIRE(cut.has_value());
  CHECK(cut->value == doctest::Approx((*inst.seminorm)(a)).epsilon(1e-10));
  CHECK(cut->gradient.dot(basis.coords_of(a)) == doctest::Approx(cut->value).epsilon(1e-9));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    RVector c(basis.size());
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = gauss(rng);
    CHECK(cut->gradient.dot(c) <= (*inst.seminorm)(basis.element_of(c)) + 1e-9);
  }
  CHECK_FALSE(seminorm_cut(*inst.seminorm, identity(2), basis).has_value());
}

TEST_CASE("diameter hint doubles the mean length") {
  Instance inst = fuzzy_torus(2);
  auto hint = inst.seminorm->diameter_hint();
  REQUIRE(hint.has_value());
  CHECK(*hint == doctest::Approx(2.0));  // lengths 0,1,1,2
}

TEST_CASE("kernel detection distinguishes ergodic from non-ergodic") {
  Instance torus = fuzzy_torus(2);
  CHECK(torus.seminorm->kernel_is_scalars(torus.basis));

  FiniteGroup z2 = FiniteGroup::cyclic(2);
  UnitaryImplementedAction pauliZ(z2, {identity(2), pauli(2)});
  LengthLipschitzSeminorm L(pauliZ, word_length(z2, {1}));
  CHECK_FALSE(L.kernel_is_scalars(HermitianBasis::full(2)));
}

TEST_CASE("lie seminorm closed form on M_2") {
  LieSeminorm L(spin_generators(2));
  CHECK_FALSE(L.exact());
  CHECK(L(identity(2)) == doctest::Approx(0.0));
  // the maximizing direction for sigma_z lies in the E1-E2 plane
  CHECK(L(pauli(2)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lie seminorm is exact for one generator") {
  LieGenerators circle({spin_generators(2).generators()[2]});
  LieSeminorm L(circle);
  CHECK(L.exact());
  Matrix a = random_hermitian(2, 4);
  Matrix x = circle.generators()[0];
  CHECK(L(a) == doctest::Approx(operator_norm(x * a - a * x)).epsilon(1e-12));
}

TEST_CASE("clifford generators satisfy the relations up to m = 5") {
  for (int m = 1; m <= 5; ++m) {
    CliffordGenerators c = CliffordGenerators::make(m);
    CHECK(c.m == m);
    CHECK(clifford_relation_residual(c) <= 1e-12);
    CHECK(clifford_faithful(c));
    Eigen::Index expected = m % 2 == 0 ? (Eigen::Index(1) << (m / 2))
                                       : (Eigen::Index(1) << ((m - 1) / 2 + 1));
    CHECK(c.rep_dim == expected);
  }
  CHECK_THROWS_AS(CliffordGenerators::make(0), std::invalid_argument);
}

TEST_CASE("small clifford representations have the expected form") {
  CliffordGenerators c1 = CliffordGenerators::make(1);
  Matrix d(2, 2);
  d << Complex(0, 1), 0, 0, Complex(0, -1);
  CHECK((c1.e[0] - d).norm() < 1e-14);

  CliffordGenerators c2 = CliffordGenerators::make(2);
  CHECK((c2.e[0] - Complex(0, 1) * pauli(0)).norm() < 1e-14);
  CHECK((c2.e[1] - Complex(0, 1) * pauli(1)).norm() < 1e-14);

  CliffordGenerators c3 = CliffordGenerators::make(3);
  CHECK(c3.rep_dim == 4);
  for (int j = 0; j < 3; ++j) {
    CHECK((c3.e[static_cast<std::size_t>(j)].topLeftCorner(2, 2) -
           Complex(0, 1) * pauli(j)).norm() < 1e-12);
    CHECK((c3.e[static_cast<std::size_t>(j)].bottomRightCorner(2, 2) +
           Complex(0, 1) * pauli(j)).norm() < 1e-12);
    CHECK(c3.e[static_cast<std::size_t>(j)].topRightCorner(2, 2).norm() < 1e-14);
  }
}

TEST_CASE("a corrupted generator fails the relation check") {
  CliffordGenerators c = CliffordGenerators::make(3);
  c.e[0] = (Complex(0, 1) * c.e[0]).eval();  // now Hermitian with square +1
  CHECK(clifford_relation_residual(c) > 0.1);
}

TEST_CASE("clifford generators are frame independent") {
  CliffordGenerators plain = clifford_generators(3, RMatrix::Identity(3, 3));
  CliffordGenerators scaled = clifford_generators(3, 9.0 * RMatrix::Identity(3, 3));
  for (std::size_t j = 0; j < 3; ++j) CHECK((plain.e[j] - scaled.e[j]).norm() < 1e-14);
  CHECK_THROWS_AS(clifford_generators(2, -RMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("dirac commutator of sigma_z on the fuzzy sphere M_2") {
  DiracData dd = DiracData::make(spin_generators(2));
  Matrix expected = Eigen::kroneckerProduct(Matrix(-pauli(1)), dd.clifford.e[0]) +
                    Eigen::kroneckerProduct(Matrix(pauli(0)), dd.clifford.e[1]);
  CHECK((dirac_commutator(dd, pauli(2)) - expected).norm() < 1e-12);
  CHECK(dirac_commutator(dd, identity(2)).norm() < 1e-14);

  // linearity
  Matrix a = random_hermitian(2, 1), b = random_hermitian(2, 2);
  CHECK((dirac_commutator(dd, a + b) - dirac_commutator(dd, a) - dirac_commutator(dd, b)).norm() <
        1e-12);
}

TEST_CASE("dirac seminorm value and sandwich") {
  Instance sphere = fuzzy_sphere(2);
  const Seminorm& L = *sphere.seminorm;
  CHECK(L.exact());
  CHECK(L(pauli(2)) == doctest::Approx(2.0).epsilon(1e-12));

  const auto& frame = sphere.dirac->gens.orthonormal_generators();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Matrix a = random_hermitian(2, seed);
    double lower = 0.0, upper = 0.0;
    for (const Matrix& y : frame) {
      double nk = operator_norm(y * a - a * y);
      lower = std::max(lower, nk);
      upper += nk;
    }
    double la = L(a);
    CHECK(la >= lower - 1e-10);
    CHECK(la <= upper + 1e-10);
  }
}

TEST_CASE("dirac cuts are subgradients") {
  Instance sphere = fuzzy_sphere(3);
  Matrix a = random_hermitian(3, 9);
  auto cut = seminorm_cut(*sphere.seminorm, a, sphere.basis);
  REQUIRE(cut.has_value());
  CHECK(cut->value == doctest::Approx((*sphere.seminorm)(a)).epsilon(1e-10));
  for (std::uint64_t seed = 30; seed < 60; ++seed) {
    Matrix c = random_hermitian(3, seed);
    CHECK(cut->gradient.dot(sphere.basis.coords_of(c)) <= (*sphere.seminorm)(c) + 1e-9);
  }
}

TEST_CASE("dirac matrix is Hermitian and reproduces the commutator") {
  Instance sphere = fuzzy_sphere(2);
  DensityState eta = maximally_mixed(2);
  Matrix d = build_dirac_matrix(*sphere.dirac, eta);
  CHECK(d.rows() == 16);
  CHECK(operator_norm(d - d.adjoint()) <= 1e-12);

  Matrix spinId = identity(sphere.dirac->clifford.rep_dim);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Matrix a = random_hermitian(2, seed);
    Matrix lam = Eigen::kroneckerProduct(gns_left_multiplication(a, eta), spinId);
    Matrix rhs = Matrix::Zero(16, 16);
    const auto& frame = sphere.dirac->gens.orthonormal_generators();
    for (std::size_t k = 0; k < frame.size(); ++k)
      rhs += Eigen::kroneckerProduct(gns_left_multiplication(frame[k] * a - a * frame[k], eta),
                                     sphere.dirac->clifford.e[k]);
    CHECK(operator_norm(d * lam - lam * d - rhs) <= 1e-10);
  }

  CHECK_THROWS_AS(build_dirac_matrix(*sphere.dirac, pure_basis_state(2, 0)),
                  std::invalid_argument);
}

TEST_CASE("gns left multiplication represents the product") {
  DensityState eta = maximally_mixed(3);
  Matrix a = random_matrix(3, 5), b = random_matrix(3, 6);
  Matrix lab = gns_left_multiplication(a * b, eta);
  CHECK((gns_left_multiplication(a, eta) * gns_left_multiplication(b, eta) - lab).norm() < 1e-12);
}

TEST_CASE("scaled seminorm multiplies values and cuts") {
  Instance inst = fuzzy_torus(2);
  auto doubled = scale_seminorm(inst.seminorm, 2.0);
  Matrix a = bloch(0.5, 0.1, -0.4);
  CHECK((*doubled)(a) == doctest::Approx(2.0 * (*inst.seminorm)(a)).epsilon(1e-12));
  CHECK(doubled->exact());
  CHECK(doubled->kernel_is_scalars(inst.basis));

  auto base = seminorm_cut(*inst.seminorm, a, inst.basis);
  auto scaled = seminorm_cut(*doubled, a, inst.basis);
  REQUIRE(base.has_value());
  REQUIRE(scaled.has_value());
  CHECK(scaled->value == doctest::Approx(2.0 * base->value).epsilon(1e-12));
  CHECK((scaled->gradient - 2.0 * base->gradient).norm() < 1e-12);

  auto same = scale_seminorm(inst.seminorm, 1.0);
  CHECK((*same)(a) == doctest::Approx((*inst.seminorm)(a)));
  CHECK_THROWS_AS(scale_seminorm(inst.seminorm, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_seminorm(inst.seminorm, -2.0), std::invalid_argument);
}

TEST_CASE("conjugation-invariant lengths give invariant seminorms") {
  Instance inst = fuzzy_torus(3);
  REQUIRE(conjugation_invariance_check(inst.ell->group, inst.ell->values));
  Matrix a = random_hermitian(3, 12);
  double la = (*inst.seminorm)(a);
  for (int z = 0; z < inst.action->group().order(); ++z)
    CHECK((*inst.seminorm)(act(*inst.action, z, a)) == doctest::Approx(la).epsilon(1e-10));
}
