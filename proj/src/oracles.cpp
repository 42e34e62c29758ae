#include "ncm/oracles.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ncm/simplex.hpp"

namespace ncm {

FiniteMetricSpace::FiniteMetricSpace(RMatrix dist) : d(std::move(dist)) {
  const Eigen::Index n = d.rows();
  if (n < 1 || d.cols() != n) throw std::invalid_argument("FiniteMetricSpace: square matrix required");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(d(i, j) >= 0.0)) throw std::invalid_argument("FiniteMetricSpace: negative entry");
      if (i != j && d(i, j) <= 0.0)
        throw std::invalid_argument("FiniteMetricSpace: distinct points at distance zero");
      if (std::abs(d(i, j) - d(j, i)) > 1e-12)
        throw std::invalid_argument("FiniteMetricSpace: asymmetric");
      for (Eigen::Index k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k) + 1e-12)
          throw std::invalid_argument("FiniteMetricSpace: triangle inequality fails");
    }
  }
}

FiniteMetricSpace metric_from_length(const FiniteGroup& group, const std::vector<double>& ell) {
  if (!verify_length_function(group, ell))
    throw std::invalid_argument("metric_from_length: not a length function");
  const int n = group.order();
  RMatrix d(n, n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) d(y, z) = ell[static_cast<std::size_t>(group.op(y, group.inverse(z)))];
  return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace metric_from_length(const LengthFunction& ell) {
  return metric_from_length(ell.group, ell.values);
}

double kantorovich_lp(const FiniteMetricSpace& space, const RVector& mu, const RVector& nu) {
  const int n = space.size();
  if (mu.size() != n || nu.size() != n)
    throw std::invalid_argument("kantorovich_lp: distribution size mismatch");
  for (const RVector* v : {&mu, &nu}) {
    if (v->minCoeff() < -1e-12) throw std::invalid_argument("kantorovich_lp: negative mass");
    if (std::abs(v->sum() - 1.0) > 1e-12)
      throw std::invalid_argument("kantorovich_lp: mass does not sum to one");
  }

  // primal: min sum_{yz} pi_{yz} d(y,z) over couplings of (mu, nu)
  LinearProgram primal;
  primal.c = RVector(n * n);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) primal.c(y * n + z) = -space.d(y, z);
  primal.a_eq = RMatrix::Zero(2 * n, n * n);
  primal.b_eq = RVector(2 * n);
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      primal.a_eq(y, y * n + z) = 1.0;      // row marginal
      primal.a_eq(n + z, y * n + z) = 1.0;  // column marginal
    }
    primal.b_eq(y) = mu(y);
    primal.b_eq(n + y) = nu(y);
  }
  primal.nonneg.assign(static_cast<std::size_t>(n * n), true);
  double cost = -lp_solve(primal).value;

  // dual: max sum f_y (mu_y - nu_y) over 1-Lipschitz f, pinned at f_0 = 0
  LinearProgram dual;
  dual.c = mu - nu;
  dual.a_ub = RMatrix::Zero(n * (n - 1), n);
  dual.b_ub = RVector(n * (n - 1));
  int row = 0;
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      if (y == z) continue;
      dual.a_ub(row, y) = 1.0;
      dual.a_ub(row, z) = -1.0;
      dual.b_ub(row) = space.d(y, z);
      ++row;
    }
  dual.a_eq = RMatrix::Zero(1, n);
  dual.a_eq(0, 0) = 1.0;
  dual.b_eq = RVector::Zero(1);
  double lipschitz = lp_solve(dual).value;

  if (std::abs(cost - lipschitz) > 1e-9)
    throw std::runtime_error("kantorovich_lp: duality gap exceeds tolerance");
  return cost;
}

namespace {

struct BlochObjective {
  double dx, dy, dz;
  const std::function<double(double, double, double)>* seminorm;

  double ratio(double theta, double phi) const {
    double x = std::sin(theta) * std::cos(phi);
    double y = std::sin(theta) * std::sin(phi);
    double z = std::cos(theta);
    double gain = std::abs(dx * x + dy * y + dz * z);
    double l = (*seminorm)(x, y, z);
    if (l <= 1e-14) return gain > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
    return gain / l;
  }
};

}  // namespace

double bloch_bruteforce_m2(const std::function<double(double, double, double)>& seminorm,
                           const DensityState& mu, const DensityState& nu, int resolution) {
  if (mu.dim() != 2 || nu.dim() != 2)
    throw std::invalid_argument("bloch_bruteforce_m2: states must be 2-dimensional");
  if (resolution < 2) throw std::invalid_argument("bloch_bruteforce_m2: resolution too small");

  Matrix delta = mu.rho() - nu.rho();
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  BlochObjective obj{(delta * sx).trace().real(), (delta * sy).trace().real(),
                     (delta * sz).trace().real(), &seminorm};

  const double pi = std::numbers::pi;
  struct Point {
    double value, theta, phi;
  };
  std::vector<Point> top;  // a few best grid points, kept sorted descending
  for (int i = 0; i <= resolution; ++i) {
    double theta = pi * i / resolution;
    for (int j = 0; j < 2 * resolution; ++j) {
      double phi = pi * j / resolution;
      Point pt{obj.ratio(theta, phi), theta, phi};
      auto it = std::upper_bound(top.begin(), top.end(), pt,
                                 [](const Point& a, const Point& b) { return a.value > b.value; });
      top.insert(it, pt);
      if (top.size() > 8) top.pop_back();
    }
  }

  // pattern search from each candidate; the direction set rotates whenever
  // the step shrinks, so ridges of the nonsmooth objective do not stall it
  double best = top.front().value;
  for (const Point& start : top) {
    double value = start.value, theta = start.theta, phi = start.phi;
    double step = pi / resolution;
    double offset = 0.0;
    int movesLeft = 400;  // walking a ridge costs one move per step length
    while (step > 1e-9 && movesLeft > 0) {
      double bestMoveValue = value;
      double bestTheta = theta, bestPhi = phi;
      for (int k = 0; k < 12; ++k) {
        double angle = offset + k * pi / 6.0;
        double r = obj.ratio(theta + step * std::cos(angle), phi + step * std::sin(angle));
        if (r > bestMoveValue) {
          bestMoveValue = r;
          bestTheta = theta + step * std::cos(angle);
          bestPhi = phi + step * std::sin(angle);
        }
      }
      if (bestMoveValue > value * (1.0 + 1e-13)) {
        value = bestMoveValue;
        theta = bestTheta;
        phi = bestPhi;
        --movesLeft;
      } else {
        step *= 0.6;
        offset += 0.5;  // irrational fraction of the sector: directions never repeat
      }
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace ncm
