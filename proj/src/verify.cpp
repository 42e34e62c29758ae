#include "ncm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ncm/metric.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace ncm {

namespace {

Matrix random_element(const Instance& inst, std::uint64_t seed) {
  Matrix a = random_hermitian(inst.dim, seed);
  if (inst.kind == "commutative") a = a.diagonal().asDiagonal();
  return a;
}

DensityState random_instance_state(const Instance& inst, std::uint64_t seed) {
  if (inst.kind == "commutative") return random_diagonal_state(inst.dim, seed);
  return random_state(inst.dim, seed);
}

void check_numerical_radius(std::vector<Verdict>& out, std::uint64_t seed) {
  Matrix nilpotent(2, 2);
  nilpotent << 0, 1, 0, 0;
  double w = numerical_radius(nilpotent, 4000);
  out.push_back({"numerical_radius_constant", std::abs(w - 0.5) <= 1e-6,
                 1e-6 - std::abs(w - 0.5)});
  Matrix h = random_hermitian(2, seed);
  double gap = std::abs(numerical_radius(h, 4000) - operator_norm(h));
  out.push_back({"numerical_radius_hermitian", gap <= 1e-9, 1e-9 - gap});
}

void check_action_suite(std::vector<Verdict>& out, const Instance& inst, double tolerance,
                        std::uint64_t seed) {
  const UnitaryImplementedAction& action = *inst.action;
  const LengthFunction& ell = *inst.ell;
  const Seminorm& L = *inst.seminorm;

  out.push_back(
      {"length_axioms", verify_length_function(ell.group, ell.values), 0.0});

  bool ergodic = inst.kind == "commutative" ? L.kernel_is_scalars(inst.basis)
                                            : is_ergodic(action);
  out.push_back({"ergodic", ergodic, ergodic ? 0.0 : -1.0});

  double traceGap = 0.0;
  for (int t = 0; t < 50; ++t) {
    Matrix a = random_element(inst, seed + 100 + static_cast<std::uint64_t>(2 * t));
    Matrix b = random_element(inst, seed + 101 + static_cast<std::uint64_t>(2 * t));
    traceGap = std::max(traceGap, operator_norm(conditional_expectation(action, a * b) -
                                                conditional_expectation(action, b * a)));
  }
  out.push_back({"eta_trace", traceGap <= 1e-12, 1e-12 - traceGap});

  double smoothGap = -1e18;
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_element(inst, seed + 300 + static_cast<std::uint64_t>(t));
    double la = L(a);
    for (int x = 0; x < action.group().order(); ++x) {
      if (x == action.group().identity()) continue;
      smoothGap = std::max(smoothGap, operator_norm(act(action, x, a) - a) - la * ell.at(x));
    }
  }
  out.push_back({"smoothness", smoothGap <= 1e-9, 1e-9 - smoothGap});

  if (conjugation_invariance_check(ell.group, ell.values)) {
    double invGap = 0.0;
    for (int t = 0; t < 10; ++t) {
      Matrix a = random_element(inst, seed + 400 + static_cast<std::uint64_t>(t));
      double la = L(a);
      for (int z = 0; z < action.group().order(); ++z)
        invGap = std::max(invGap, std::abs(L(act(action, z, a)) - la));
    }
    out.push_back({"conjugation_invariance", invGap <= 1e-10, 1e-10 - invGap});
  }

  std::vector<DensityState> states{pure_basis_state(inst.dim, 0), maximally_mixed(inst.dim),
                                   random_instance_state(inst, seed + 7)};
  auto seminorm = inst.seminorm;
  auto mat = distance_matrix(seminorm, states, inst.basis, tolerance);
  double bound = diameter_bound(ell);
  double diamGap = -1e18;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j)
      diamGap = std::max(diamGap, mat[i][j].hi - bound);
  out.push_back({"diameter", diamGap <= tolerance, tolerance - diamGap});

  DistanceProblem base{seminorm, states[0], states[1], inst.basis, tolerance};
  DistanceResult rho = spectral_distance(base);
  DistanceProblem scaled = base;
  scaled.seminorm = scale_seminorm(seminorm, 2.0);
  DistanceResult rho2 = spectral_distance(scaled);
  double scaleGap = std::abs(rho2.estimate() - 0.5 * rho.estimate());
  out.push_back({"scaling", scaleGap <= 2.0 * tolerance, 2.0 * tolerance - scaleGap});
  // 2L >= L pointwise, so its metric can only shrink
  double compGap = rho2.estimate() - rho.estimate();
  out.push_back({"comparison_monotone", compGap <= 2.0 * tolerance, 2.0 * tolerance - compGap});
}

void check_dirac_suite(std::vector<Verdict>& out, const Instance& inst, std::uint64_t seed) {
  const DiracData& dd = *inst.dirac;
  const Seminorm& L = *inst.seminorm;

  double rel = clifford_relation_residual(dd.clifford);
  out.push_back({"clifford_relations", rel <= 1e-12, 1e-12 - rel});
  bool faithful = clifford_faithful(dd.clifford);
  out.push_back({"clifford_faithful", faithful, faithful ? 0.0 : -1.0});

  DensityState eta = maximally_mixed(inst.dim);
  Matrix d = build_dirac_matrix(dd, eta);
  double herm = operator_norm(d - d.adjoint());
  out.push_back({"dirac_hermitian", herm <= 1e-10, 1e-10 - herm});

  const auto& frame = dd.gens.orthonormal_generators();
  Matrix spinId = identity(dd.clifford.rep_dim);
  double idGap = 0.0;
  for (int t = 0; t < 10; ++t) {
    Matrix a = random_hermitian(inst.dim, seed + 500 + static_cast<std::uint64_t>(t));
    Matrix lam = Eigen::kroneckerProduct(gns_left_multiplication(a, eta), spinId);
    Matrix rhs = Matrix::Zero(d.rows(), d.cols());
    for (std::size_t k = 0; k < frame.size(); ++k) {
      Matrix dk = frame[k] * a - a * frame[k];
      rhs += Eigen::kroneckerProduct(gns_left_multiplication(dk, eta),
                                     dd.clifford.e[k]);
    }
    idGap = std::max(idGap, operator_norm(d * lam - lam * d - rhs));
  }
  out.push_back({"dirac_commutator_identity", idGap <= 1e-10, 1e-10 - idGap});

  double sandwichGap = -1e18;
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_hermitian(inst.dim, seed + 600 + static_cast<std::uint64_t>(t));
    double la = L(a);
    double lower = 0.0;
    double upper = 0.0;
    for (const Matrix& y : frame) {
      double nk = operator_norm(y * a - a * y);
      lower = std::max(lower, nk);
      upper += nk;
    }
    sandwichGap = std::max(sandwichGap, std::max(lower - la, la - upper));
  }
  out.push_back({"seminorm_sandwich", sandwichGap <= 1e-10, 1e-10 - sandwichGap});

  double smoothGap = -1e18;
  std::mt19937_64 rng(seed + 700);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_hermitian(inst.dim, seed + 800 + static_cast<std::uint64_t>(t));
    double lip = 0.0;
    for (const Matrix& y : frame) lip += operator_norm(y * a - a * y);
    RVector x(dd.gens.lie_dim());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = gauss(rng);
    auto [u, len] = sample_group_element(dd.gens, x);
    smoothGap = std::max(smoothGap, operator_norm(u * a * u.adjoint() - a) - lip * len);
  }
  out.push_back({"smoothness", smoothGap <= 1e-9, 1e-9 - smoothGap});
}

}  // namespace

std::vector<Verdict> verify_suite(const Instance& inst, double tolerance, std::uint64_t seed) {
  std::vector<Verdict> out;
  bool kernelOk = inst.seminorm->kernel_is_scalars(inst.basis);
  out.push_back({"kernel_scalars", kernelOk, kernelOk ? 0.0 : -1.0});
  check_numerical_radius(out, seed);
  if (inst.action && inst.ell) check_action_suite(out, inst, tolerance, seed);
  if (inst.dirac) check_dirac_suite(out, inst, seed);
  return out;
}

bool all_pass(const std::vector<Verdict>& verdicts) {
  for (const Verdict& v : verdicts)
    if (!v.pass) return false;
  return true;
}

}  // namespace ncm
