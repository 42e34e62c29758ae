#include "ncm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ncm {

namespace {

struct CutPool {
  std::vector<Cut> cuts;
  std::vector<long> added_at;

  void add(Cut cut, long iteration) {
    cuts.push_back(std::move(cut));
    added_at.push_back(iteration);
  }

  // Drop the oldest cuts that are slack at x until the pool fits.
  void trim(int max_size, const RVector& x, long current) {
    if (static_cast<int>(cuts.size()) <= max_size) return;
    std::vector<std::size_t> keep;
    std::vector<std::size_t> droppable;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      double slack = 1.0 - cuts[i].gradient.dot(x);
      bool recent = added_at[i] + 2 >= current;
      if (slack > 1e-7 && !recent)
        droppable.push_back(i);
      else
        keep.push_back(i);
    }
    std::size_t excess = cuts.size() - static_cast<std::size_t>(max_size);
    std::size_t ndrop = std::min(excess, droppable.size());
    std::vector<bool> drop(cuts.size(), false);
    for (std::size_t i = 0; i < ndrop; ++i) drop[droppable[i]] = true;
    std::vector<Cut> newCuts;
    std::vector<long> newAdded;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (drop[i]) continue;
      newCuts.push_back(std::move(cuts[i]));
      newAdded.push_back(added_at[i]);
    }
    cuts = std::move(newCuts);
    added_at = std::move(newAdded);
  }
};

double box_radius_for(const DistanceProblem& p) {
  if (p.box_radius > 0.0) return p.box_radius;
  if (auto hint = p.seminorm->diameter_hint()) {
    // coordinates of any L-unit element are bounded by twice the metric
    // diameter, so this box never truncates the optimizer
    return 2.0 * *hint;
  }
  double r = quotient_radius(*p.seminorm, p.basis, 2000);
  return 8.0 * std::max(r, 1e-6);
}

}  // namespace

DistanceResult spectral_distance(const DistanceProblem& p) {
  if (!p.seminorm) throw std::invalid_argument("spectral_distance: null seminorm");
  if (p.mu.dim() != p.nu.dim() || p.mu.dim() != p.basis.dim())
    throw std::invalid_argument("spectral_distance: dimension mismatch");
  if (!(p.tolerance > 0.0)) throw std::invalid_argument("spectral_distance: tolerance must be positive");

  DistanceResult result;
  result.witness = RVector::Zero(p.basis.size());

  // equal states: avoid a degenerate LP
  if ((p.mu.rho() - p.nu.rho()).cwiseAbs().maxCoeff() <= 1e-14) {
    result.certified = true;
    return result;
  }

  if (!p.seminorm->kernel_is_scalars(p.basis))
    throw std::invalid_argument(
        "spectral_distance: seminorm kernel is larger than the scalars on the "
        "coordinate space (action not ergodic)");

  const Eigen::Index nvars = p.basis.size();
  Matrix delta = p.mu.rho() - p.nu.rho();
  RVector objective(nvars);
  // Delta(a) = trace(delta a) = sum_j x_j trace(delta b_j) for a = sum x_j b_j
  for (Eigen::Index j = 0; j < nvars; ++j)
    objective(j) = (delta * p.basis.element(j)).trace().real();

  const double radius = box_radius_for(p);

  CutPool pool;
  for (Eigen::Index j = 0; j < nvars; ++j) {
    for (double sign : {1.0, -1.0}) {
      Matrix b = sign * p.basis.element(j);
      if (auto cut = p.seminorm->cut(b, p.basis)) pool.add(std::move(*cut), 0);
    }
  }

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  RVector bestWitness = RVector::Zero(nvars);
  long iteration = 0;
  bool converged = false;

  for (; iteration < p.max_iterations; ++iteration) {
    const int ncuts = static_cast<int>(pool.cuts.size());
    LinearProgram lp;
    lp.c = objective;
    lp.a_ub = RMatrix::Zero(ncuts + 2 * nvars, nvars);
    lp.b_ub = RVector::Zero(ncuts + 2 * nvars);
    for (int i = 0; i < ncuts; ++i) {
      lp.a_ub.row(i) = pool.cuts[static_cast<std::size_t>(i)].gradient.transpose();
      lp.b_ub(i) = 1.0;
    }
    for (Eigen::Index j = 0; j < nvars; ++j) {
      lp.a_ub(ncuts + 2 * j, j) = 1.0;
      lp.b_ub(ncuts + 2 * j) = radius;
      lp.a_ub(ncuts + 2 * j + 1, j) = -1.0;
      lp.b_ub(ncuts + 2 * j + 1) = radius;
    }
    LpResult sol = lp_solve(lp);
    hi = std::min(hi, sol.value);

    Matrix a = p.basis.element_of(sol.x);
    double lvalue = p.seminorm->evaluate(a);
    double dvalue = objective.dot(sol.x);
    double scale = std::max(lvalue, 1.0);
    if (dvalue / scale > lo) {
      lo = dvalue / scale;
      bestWitness = sol.x / scale;
    }

    if (hi - lo <= p.tolerance) {
      converged = true;
      ++iteration;
      break;
    }

    if (lvalue <= 1.0 + 1e-12) {
      // LP optimizer already feasible: the bounds can only close by the
      // evaluation gap, nothing left to cut
      converged = hi - lo <= p.tolerance;
      ++iteration;
      break;
    }

    std::vector<Cut> fresh = p.seminorm->cuts(a, p.basis, p.cuts_per_iteration);
    if (fresh.empty()) break;
    for (Cut& c : fresh) pool.add(std::move(c), iteration + 1);
    pool.trim(p.max_cut_pool, sol.x, iteration + 1);
  }

  result.lo = std::max(lo, 0.0);
  result.hi = std::min(hi, std::numeric_limits<double>::max());
  result.witness = bestWitness;
  result.iterations = static_cast<int>(iteration);
  result.cuts_used = static_cast<int>(pool.cuts.size());
  result.certified = converged && p.seminorm->exact();
  return result;
}

std::vector<std::vector<DistanceResult>> distance_matrix(
    std::shared_ptr<const Seminorm> seminorm, const std::vector<DensityState>& states,
    const HermitianBasis& basis, double tolerance, int max_iterations) {
  const std::size_t n = states.size();
  for (const DensityState& s : states)
    if (s.dim() != basis.dim())
      throw std::invalid_argument("distance_matrix: state dimension mismatch");
  std::vector<std::vector<DistanceResult>> out(n, std::vector<DistanceResult>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out[i][i].witness = RVector::Zero(basis.size());
    out[i][i].certified = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      DistanceProblem p{seminorm, states[i], states[j], basis, tolerance, max_iterations};
      out[i][j] = spectral_distance(p);
      out[j][i] = out[i][j];
    }
  }
  return out;
}

double diameter_bound(const FiniteGroup& group, const std::vector<double>& ell) {
  if (static_cast<int>(ell.size()) != group.order())
    throw std::invalid_argument("diameter_bound: length size mismatch");
  double mean = 0.0;
  for (double v : ell) mean += v;
  return 2.0 * mean / static_cast<double>(group.order());
}

double diameter_bound(const LengthFunction& ell) {
  return diameter_bound(ell.group, ell.values);
}

double quotient_radius(const Seminorm& seminorm, const HermitianBasis& basis, int samples,
                       std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("quotient_radius: samples must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto ratio = [&](const RVector& coords) {
    Matrix a = basis.element_of(coords);
    double l = seminorm.evaluate(a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    double quot = 0.5 * (es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff());
    if (l <= 1e-12) {
      if (quot > 1e-10)
        throw std::runtime_error("quotient_radius: nonscalar element in the seminorm kernel");
      return 0.0;
    }
    return quot / l;
  };

  double best = 0.0;
  RVector bestCoords = RVector::Zero(basis.size());
  for (int s = 0; s < samples; ++s) {
    RVector coords(basis.size());
    for (Eigen::Index j = 0; j < basis.size(); ++j) coords(j) = gauss(rng);
    double r = ratio(coords);
    if (r > best) {
      best = r;
      bestCoords = coords;
    }
  }
  // local ascent with shrinking random perturbations
  double step = 0.5;
  for (int iter = 0; iter < 200 && step > 1e-6; ++iter) {
    RVector trial = bestCoords;
    for (Eigen::Index j = 0; j < basis.size(); ++j)
      trial(j) += step * bestCoords.norm() * gauss(rng);
    double r = ratio(trial);
    if (r > best) {
      best = r;
      bestCoords = trial;
    } else {
      step *= 0.9;
    }
  }
  return best;
}

}  // namespace ncm
