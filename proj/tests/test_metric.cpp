#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncm/instances.hpp"
#include "ncm/metric.hpp"
#include "ncm/oracles.hpp"

using namespace ncm;

namespace {

// brute-force vertex enumeration for tiny LPs: intersect every pair/triple of
// active constraints and keep feasible points
double bruteforce_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int m = static_cast<int>(lp.b_ub.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      RMatrix a(n, n);
      RVector b(n);
      for (int k = 0; k < n; ++k) {
        a.row(k) = lp.a_ub.row(idx[static_cast<std::size_t>(k)]);
        b(k) = lp.b_ub(idx[static_cast<std::size_t>(k)]);
      }
      Eigen::FullPivLU<RMatrix> lu(a);
      if (!lu.isInvertible()) return;
      RVector x = lu.solve(b);
      if (((lp.a_ub * x - lp.b_ub).array() <= 1e-9).all())
        best = std::max(best, lp.c.dot(x));
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

DistanceProblem problem(const Instance& inst, DensityState mu, DensityState nu,
                        double tol = 1e-8) {
  return DistanceProblem{inst.seminorm, std::move(mu), std::move(nu), inst.basis, tol};
}

}  // namespace

TEST_CASE("lp_solve on a box") {
  LinearProgram lp;
  lp.c = RVector::Ones(1);
  lp.a_ub = RMatrix(3, 1);
  lp.a_ub << 1, 1, -1;
  lp.b_ub = RVector(3);
  lp.b_ub << 1, 10, 10;
  LpResult r = lp_solve(lp);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.x(0) == doctest::Approx(1.0));
}

TEST_CASE("lp_solve detects infeasibility") {
  LinearProgram lp;
  lp.c = RVector::Ones(1);
  lp.a_ub = RMatrix(2, 1);
  lp.a_ub << 1, -1;
  lp.b_ub = RVector(2);
  lp.b_ub << 1, -2;  // x <= 1 and x >= 2
  CHECK_THROWS_AS(lp_solve(lp), LpInfeasible);
}

TEST_CASE("lp_solve handles equality rows and sign constraints") {
  // max x + y st x + y = 1, x,y >= 0 and x <= 0.25
  LinearProgram lp;
  lp.c = RVector(2);
  lp.c << 2, 1;
  lp.a_eq = RMatrix(1, 2);
  lp.a_eq << 1, 1;
  lp.b_eq = RVector(1);
  lp.b_eq << 1;
  lp.a_ub = RMatrix(1, 2);
  lp.a_ub << 1, 0;
  lp.b_ub = RVector(1);
  lp.b_ub << 0.25;
  lp.nonneg = {true, true};
  LpResult r = lp_solve(lp);
  CHECK(r.value == doctest::Approx(1.25));
  CHECK(r.x(0) == doctest::Approx(0.25));
}

TEST_CASE("lp_solve agrees with vertex enumeration on random programs") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    LinearProgram lp;
    int n = 2 + static_cast<int>(rng() % 2);  // 2 or 3 vars
    lp.c = RVector(n);
    for (int j = 0; j < n; ++j) lp.c(j) = gauss(rng);
    int m = 6;
    lp.a_ub = RMatrix(m + 2 * n, n);
    lp.b_ub = RVector(m + 2 * n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) lp.a_ub(i, j) = gauss(rng);
      lp.b_ub(i) = std::abs(gauss(rng)) + 0.1;  // origin stays feasible
    }
    for (int j = 0; j < n; ++j) {  // box
      lp.a_ub.row(m + 2 * j).setZero();
      lp.a_ub(m + 2 * j, j) = 1.0;
      lp.b_ub(m + 2 * j) = 5.0;
      lp.a_ub.row(m + 2 * j + 1).setZero();
      lp.a_ub(m + 2 * j + 1, j) = -1.0;
      lp.b_ub(m + 2 * j + 1) = 5.0;
    }
    LpResult r = lp_solve(lp);
    CHECK(r.value == doctest::Approx(bruteforce_lp(lp)).epsilon(1e-9));
  }
}

TEST_CASE("lp_solve is deterministic") {
  LinearProgram lp;
  lp.c = RVector(2);
  lp.c << 1, 1;
  lp.a_ub = RMatrix(4, 2);
  lp.a_ub << 1, 0, 0, 1, 1, 1, -1, -1;  // degenerate ties at the optimum
  lp.b_ub = RVector(4);
  lp.b_ub << 1, 1, 2, 5;
  LpResult a = lp_solve(lp);
  LpResult b = lp_solve(lp);
  CHECK((a.x - b.x).norm() == 0.0);
  CHECK(a.value == b.value);
}

TEST_CASE("equal states give a certified zero") {
  Instance inst = fuzzy_torus(2);
  DensityState mu = random_state(2, 5);
  DistanceResult r = spectral_distance(problem(inst, mu, mu));
  CHECK(r.lo == 0.0);
  CHECK(r.hi == 0.0);
  CHECK(r.certified);
}

TEST_CASE("two-point commutative distance equals the length") {
  Instance inst = commutative_instance(FiniteGroup::cyclic(2),
                                       word_length(FiniteGroup::cyclic(2), {1}));
  DistanceResult r =
      spectral_distance(problem(inst, pure_basis_state(2, 0), pure_basis_state(2, 1)));
  CHECK(r.certified);
  CHECK(r.estimate() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fuzzy torus pure-z distance is one") {
  Instance inst = fuzzy_torus(2);
  DistanceResult r = spectral_distance(
      problem(inst, pure_basis_state(2, 0), pure_basis_state(2, 1), 1e-6));
  CHECK(r.estimate() == doctest::Approx(1.0).epsilon(2e-6));
  CHECK(r.lo <= r.hi + 1e-12);
}

TEST_CASE("the witness certifies the lower bound") {
  Instance inst = fuzzy_torus(2);
  DensityState mu = random_state(2, 31);
  DensityState nu = random_state(2, 32);
  DistanceProblem p = problem(inst, mu, nu, 1e-7);
  DistanceResult r = spectral_distance(p);
  Matrix w = inst.basis.element_of(r.witness);
  double lw = (*inst.seminorm)(w);
  CHECK(lw <= 1.0 + 1e-9);
  double gain = (pair_state(mu, w) - pair_state(nu, w)).real();
  CHECK(gain == doctest::Approx(r.lo).epsilon(1e-9));
}

TEST_CASE("non-ergodic instances are rejected") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  Matrix sz(2, 2);
  sz << 1, 0, 0, -1;
  UnitaryImplementedAction pauliZ(z2, {identity(2), sz});
  auto L = std::make_shared<LengthLipschitzSeminorm>(pauliZ, word_length(z2, {1}));
  DistanceProblem p{L, pure_basis_state(2, 0), pure_basis_state(2, 1),
                    HermitianBasis::full(2)};
  CHECK_THROWS_AS(spectral_distance(p), std::invalid_argument);
}

TEST_CASE("distance matrix is symmetric with a zero diagonal") {
  Instance inst = commutative_instance(FiniteGroup::cyclic(3),
                                       word_length(FiniteGroup::cyclic(3), {1}));
  std::vector<DensityState> states{pure_basis_state(3, 0), pure_basis_state(3, 1),
                                   random_diagonal_state(3, 4)};
  auto m = distance_matrix(inst.seminorm, states, inst.basis, 1e-8);
  FiniteMetricSpace space = metric_from_length(*inst.ell);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m[i][i].estimate() == 0.0);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(m[i][j].estimate() == m[j][i].estimate());
      if (i == j) continue;
      RVector mu = states[i].rho().diagonal().real();
      RVector nu = states[j].rho().diagonal().real();
      CHECK(m[i][j].estimate() ==
            doctest::Approx(kantorovich_lp(space, mu, nu)).epsilon(1e-7));
    }
  }
}

TEST_CASE("diameter bound is twice the mean length") {
  CHECK(diameter_bound(torus_word_length(2)) == doctest::Approx(2.0));
  CHECK(diameter_bound(word_length(FiniteGroup::cyclic(2), {1})) == doctest::Approx(1.0));
  LengthFunction ell = torus_word_length(2);
  for (double& v : ell.values) v *= 3.0;
  CHECK(diameter_bound(ell) == doctest::Approx(6.0));
}

TEST_CASE("computed distances respect the diameter bound") {
  Instance inst = fuzzy_torus(3);
  double bound = diameter_bound(*inst.ell);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DistanceResult r = spectral_distance(
        problem(inst, random_state(3, 2 * seed), random_state(3, 2 * seed + 1), 1e-4));
    CHECK(r.hi <= bound + 1e-4);
  }
}

TEST_CASE("quotient radius closed form on C(Z_2)") {
  Instance inst = commutative_instance(FiniteGroup::cyclic(2),
                                       word_length(FiniteGroup::cyclic(2), {1}));
  double r = quotient_radius(*inst.seminorm, inst.basis, 500);
  CHECK(r == doctest::Approx(0.5).epsilon(1e-9));

  auto doubled = scale_seminorm(inst.seminorm, 2.0);
  CHECK(quotient_radius(*doubled, inst.basis, 500) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("quotient radius matches a Bloch sweep on the fuzzy torus") {
  Instance inst = fuzzy_torus(2);
  double r = quotient_radius(*inst.seminorm, inst.basis, 10000);
  // closed form: maximize |(x,y,z)| over 2 max(hypot(y,z), hypot(x,y)) <= 1;
  // the optimum sits at y = 0, |x| = |z| = 1/2
  CHECK(r == doctest::Approx(std::sqrt(0.5)).epsilon(0.05));
  DistanceResult d = spectral_distance(
      problem(inst, pure_basis_state(2, 0), pure_basis_state(2, 1), 1e-6));
  CHECK(d.hi <= 2.0 * r + 1e-4);
}

TEST_CASE("scaling law on an exact commutative instance") {
  Instance inst = commutative_instance(FiniteGroup::cyclic(5),
                                       word_length(FiniteGroup::cyclic(5), {1}));
  DensityState mu = random_diagonal_state(5, 21);
  DensityState nu = random_diagonal_state(5, 22);
  DistanceProblem base = problem(inst, mu, nu, 1e-9);
  double rho = spectral_distance(base).estimate();
  for (double t : {0.5, 2.0, 10.0}) {
    DistanceProblem scaled = base;
    scaled.seminorm = scale_seminorm(inst.seminorm, t);
    double rhoT = spectral_distance(scaled).estimate();
    CHECK(rhoT == doctest::Approx(rho / t).epsilon(1e-6));
  }
}

TEST_CASE("dominating seminorms shrink the metric") {
  Instance inst = fuzzy_torus(2);
  DensityState mu = random_state(2, 41);
  DensityState nu = random_state(2, 42);
  DistanceProblem p = problem(inst, mu, nu, 1e-6);
  double rho = spectral_distance(p).estimate();
  DistanceProblem q = p;
  q.seminorm = scale_seminorm(inst.seminorm, 1.5);
  CHECK(spectral_distance(q).estimate() <= rho + 2e-6);
}

TEST_CASE("distance problems validate their inputs") {
  Instance inst = fuzzy_torus(2);
  DistanceProblem p = problem(inst, pure_basis_state(2, 0), pure_basis_state(2, 1));
  p.tolerance = 0.0;
  CHECK_THROWS_AS(spectral_distance(p), std::invalid_argument);

  DistanceProblem q{inst.seminorm, pure_basis_state(3, 0), pure_basis_state(3, 1),
                    inst.basis};
  CHECK_THROWS_AS(spectral_distance(q), std::invalid_argument);
}
