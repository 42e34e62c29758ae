#include "ncm/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace ncm {

namespace {
constexpr double kLengthTol = 1e-12;
constexpr double kErgodicTol = 1e-10;
constexpr double kActionLawTol = 1e-10;
}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> mul) {
  FiniteGroup g;
  g.order_ = static_cast<int>(mul.size());
  if (g.order_ < 1) throw std::invalid_argument("FiniteGroup: empty table");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != g.order_)
      throw std::invalid_argument("FiniteGroup: table is not square");
    for (int v : row)
      if (v < 0 || v >= g.order_)
        throw std::invalid_argument("FiniteGroup: table entry out of range");
  }
  g.mul_ = std::move(mul);
  // identity: the unique e with e*x = x*e = x for all x
  g.identity_ = -1;
  for (int e = 0; e < g.order_; ++e) {
    bool ok = true;
    for (int x = 0; x < g.order_ && ok; ++x)
      ok = g.op(e, x) == x && g.op(x, e) == x;
    if (ok) {
      g.identity_ = e;
      break;
    }
  }
  if (g.identity_ < 0) throw std::invalid_argument("FiniteGroup: no identity element");
  g.inv_.assign(static_cast<std::size_t>(g.order_), -1);
  for (int x = 0; x < g.order_; ++x) {
    for (int y = 0; y < g.order_; ++y) {
      if (g.op(x, y) == g.identity_ && g.op(y, x) == g.identity_) {
        g.inv_[static_cast<std::size_t>(x)] = y;
        break;
      }
    }
    if (g.inv_[static_cast<std::size_t>(x)] < 0)
      throw std::invalid_argument("FiniteGroup: element without inverse");
  }
  for (int x = 0; x < g.order_; ++x)
    for (int y = 0; y < g.order_; ++y)
      for (int z = 0; z < g.order_; ++z)
        if (g.op(g.op(x, y), z) != g.op(x, g.op(y, z)))
          throw std::invalid_argument("FiniteGroup: table is not associative");
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be >= 1");
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = (x + y) % n;
  return from_table(std::move(mul));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  int n = g.order() * h.order();
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < h.order(); ++b)
      for (int c = 0; c < g.order(); ++c)
        for (int d = 0; d < h.order(); ++d) {
          int lhs = a * h.order() + b;
          int rhs = c * h.order() + d;
          mul[static_cast<std::size_t>(lhs)][static_cast<std::size_t>(rhs)] =
              g.op(a, c) * h.order() + h.op(b, d);
        }
  return from_table(std::move(mul));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric: n must be in [1,5]");
  std::vector<int> base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  int order = static_cast<int>(perms.size());
  auto indexOf = [&](const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
  };
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(order),
                                    std::vector<int>(static_cast<std::size_t>(order)));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      std::vector<int> comp(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        comp[static_cast<std::size_t>(i)] =
            perms[static_cast<std::size_t>(x)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)])];
      mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = indexOf(comp);
    }
  FiniteGroup g = from_table(std::move(mul));
  g.perms_ = std::move(perms);
  return g;
}

const std::vector<int>& FiniteGroup::permutation(int x) const {
  if (perms_.empty()) throw std::logic_error("permutation: not a symmetric group instance");
  return perms_[static_cast<std::size_t>(x)];
}

bool verify_length_function(const FiniteGroup& group, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != group.order()) return false;
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
  for (int x = 0; x < group.order(); ++x) {
    if (x == group.identity()) {
      if (values[static_cast<std::size_t>(x)] > kLengthTol) return false;  // 2.1c
    } else if (values[static_cast<std::size_t>(x)] <= kLengthTol) {
      return false;  // 2.1c
    }
    if (std::abs(values[static_cast<std::size_t>(x)] -
                 values[static_cast<std::size_t>(group.inverse(x))]) > kLengthTol)
      return false;  // 2.1b
    for (int y = 0; y < group.order(); ++y)
      if (values[static_cast<std::size_t>(group.op(x, y))] >
          values[static_cast<std::size_t>(x)] + values[static_cast<std::size_t>(y)] + kLengthTol)
        return false;  // 2.1a
  }
  return true;
}

bool conjugation_invariance_check(const FiniteGroup& group, const std::vector<double>& values) {
  for (int z = 0; z < group.order(); ++z)
    for (int x = 0; x < group.order(); ++x) {
      int conj = group.op(group.op(z, x), group.inverse(z));
      if (std::abs(values[static_cast<std::size_t>(conj)] -
                   values[static_cast<std::size_t>(x)]) > kLengthTol)
        return false;
    }
  return true;
}

LengthFunction length_from_representation(const FiniteGroup& group,
                                          const std::vector<Matrix>& pi) {
  if (static_cast<int>(pi.size()) != group.order())
    throw std::invalid_argument("length_from_representation: one unitary per element required");
  for (const Matrix& u : pi)
    if (!is_unitary(u)) throw std::invalid_argument("length_from_representation: non-unitary");
  // true representation, not projective
  for (int x = 0; x < group.order(); ++x)
    for (int y = 0; y < group.order(); ++y) {
      Matrix lhs = pi[static_cast<std::size_t>(x)] * pi[static_cast<std::size_t>(y)];
      if (operator_norm(lhs - pi[static_cast<std::size_t>(group.op(x, y))]) > 1e-10)
        throw std::invalid_argument("length_from_representation: not a representation");
    }
  std::vector<double> values(static_cast<std::size_t>(group.order()));
  const Matrix id = identity(pi.front().rows());
  for (int x = 0; x < group.order(); ++x)
    values[static_cast<std::size_t>(x)] = operator_norm(pi[static_cast<std::size_t>(x)] - id);
  if (!verify_length_function(group, values))
    throw std::invalid_argument("length_from_representation: representation is not faithful");
  return LengthFunction{group, std::move(values)};
}

LengthFunction word_length(const FiniteGroup& group, const std::vector<int>& generators) {
  if (generators.empty()) throw std::invalid_argument("word_length: empty generating set");
  std::vector<int> gens = generators;
  for (int g : generators) gens.push_back(group.inverse(g));
  std::vector<double> dist(static_cast<std::size_t>(group.order()),
                           std::numeric_limits<double>::infinity());
  dist[static_cast<std::size_t>(group.identity())] = 0.0;
  std::deque<int> queue{group.identity()};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int g : gens) {
      int y = group.op(x, g);
      if (!std::isfinite(dist[static_cast<std::size_t>(y)])) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1.0;
        queue.push_back(y);
      }
    }
  }
  for (double d : dist)
    if (!std::isfinite(d))
      throw std::invalid_argument("word_length: generating set does not generate the group");
  return LengthFunction{group, std::move(dist)};
}

LengthFunction torus_embedding_length(int q, double w1, double w2) {
  if (q < 2) throw std::invalid_argument("torus_embedding_length: q must be >= 2");
  if (!(w1 > 0.0) || !(w2 > 0.0))
    throw std::invalid_argument("torus_embedding_length: weights must be positive");
  FiniteGroup g = FiniteGroup::product(FiniteGroup::cyclic(q), FiniteGroup::cyclic(q));
  const double step = 2.0 * M_PI / static_cast<double>(q);
  std::vector<double> values(static_cast<std::size_t>(q * q));
  for (int m = 0; m < q; ++m)
    for (int n = 0; n < q; ++n)
      values[static_cast<std::size_t>(m * q + n)] =
          w1 * step * std::min(m, q - m) + w2 * step * std::min(n, q - n);
  return LengthFunction{std::move(g), std::move(values)};
}

UnitaryImplementedAction::UnitaryImplementedAction(FiniteGroup group,
                                                   std::vector<Matrix> implementers,
                                                   bool cocycle_tolerant)
    : group_(std::move(group)),
      implementers_(std::move(implementers)),
      cocycle_tolerant_(cocycle_tolerant) {
  if (static_cast<int>(implementers_.size()) != group_.order())
    throw std::invalid_argument("UnitaryImplementedAction: one implementer per element required");
  for (const Matrix& u : implementers_)
    if (!is_unitary(u))
      throw std::invalid_argument("UnitaryImplementedAction: implementer is not unitary");
  if (!cocycle_tolerant_) {
    for (int x = 0; x < group_.order(); ++x)
      for (int y = 0; y < group_.order(); ++y) {
        Matrix lhs = implementers_[static_cast<std::size_t>(x)] *
                     implementers_[static_cast<std::size_t>(y)];
        if (operator_norm(lhs - implementers_[static_cast<std::size_t>(group_.op(x, y))]) >
            1e-10)
          throw std::invalid_argument(
              "UnitaryImplementedAction: implementers do not form a representation "
              "(set cocycle_tolerant for projective implementers)");
      }
  }
  // conjugation must respect the group law even for projective implementers
  HermitianBasis basis = HermitianBasis::full(algebra_dim());
  for (int x = 0; x < group_.order(); ++x)
    for (int y = 0; y < group_.order(); ++y)
      for (const Matrix& b : basis.elements()) {
        Matrix lhs = act(*this, x, act(*this, y, b));
        Matrix rhs = act(*this, group_.op(x, y), b);
        if (operator_norm(lhs - rhs) > kActionLawTol)
          throw std::invalid_argument(
              "UnitaryImplementedAction: conjugation does not respect the group law");
      }
}

Matrix act(const UnitaryImplementedAction& action, int x, const Matrix& a) {
  if (x < 0 || x >= action.group().order())
    throw std::invalid_argument("act: element index out of range");
  if (a.rows() != action.algebra_dim() || a.cols() != action.algebra_dim())
    throw std::invalid_argument("act: dimension mismatch");
  const Matrix& u = action.implementer(x);
  return u * a * u.adjoint();
}

Matrix conditional_expectation(const UnitaryImplementedAction& action, const Matrix& a) {
  if (a.rows() != action.algebra_dim() || a.cols() != action.algebra_dim())
    throw std::invalid_argument("conditional_expectation: dimension mismatch");
  Matrix avg = Matrix::Zero(a.rows(), a.cols());
  for (int x = 0; x < action.group().order(); ++x) avg += act(action, x, a);
  return avg / static_cast<double>(action.group().order());
}

bool is_ergodic(const UnitaryImplementedAction& action) {
  HermitianBasis basis = HermitianBasis::full(action.algebra_dim());
  for (const Matrix& b : basis.elements()) {
    // basis elements are traceless, so the invariant part must average to zero
    if (operator_norm(conditional_expectation(action, b)) > kErgodicTol) return false;
  }
  return true;
}

LieGenerators::LieGenerators(std::vector<Matrix> generators, RMatrix metric)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("LieGenerators: no generators");
  const Eigen::Index n = generators_.front().rows();
  for (const Matrix& x : generators_) {
    if (x.rows() != n || x.cols() != n)
      throw std::invalid_argument("LieGenerators: inconsistent dimensions");
    if ((x + x.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
      throw std::invalid_argument("LieGenerators: generator is not skew-adjoint");
  }
  const int m = lie_dim();
  if (metric.size() == 0) metric = RMatrix::Identity(m, m);
  if (metric.rows() != m || metric.cols() != m)
    throw std::invalid_argument("LieGenerators: metric dimension mismatch");
  if ((metric - metric.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("LieGenerators: metric is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(metric);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("LieGenerators: metric is not positive-definite");
  metric_ = std::move(metric);
  // M^{-1/2} columns give a metric-orthonormal frame
  RMatrix invSqrt = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    es.eigenvectors().transpose();
  ortho_.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    Matrix y = Matrix::Zero(n, n);
    for (int j = 0; j < m; ++j) y += invSqrt(j, k) * generators_[static_cast<std::size_t>(j)];
    ortho_.push_back(std::move(y));
  }
}

double LieGenerators::metric_norm(const RVector& x) const {
  if (x.size() != lie_dim()) throw std::invalid_argument("metric_norm: dimension mismatch");
  return std::sqrt(x.dot(metric_ * x));
}

Matrix lie_derivative(const LieGenerators& gens, const RVector& x, const Matrix& a) {
  if (x.size() != gens.lie_dim()) throw std::invalid_argument("lie_derivative: bad direction");
  if (a.rows() != gens.algebra_dim() || a.cols() != gens.algebra_dim())
    throw std::invalid_argument("lie_derivative: dimension mismatch");
  Matrix gen = Matrix::Zero(a.rows(), a.cols());
  for (int j = 0; j < gens.lie_dim(); ++j)
    gen += x(j) * gens.generators()[static_cast<std::size_t>(j)];
  return gen * a - a * gen;
}

std::pair<Matrix, double> sample_group_element(const LieGenerators& gens, const RVector& x) {
  if (x.size() != gens.lie_dim())
    throw std::invalid_argument("sample_group_element: bad direction");
  Matrix gen = Matrix::Zero(gens.algebra_dim(), gens.algebra_dim());
  for (int j = 0; j < gens.lie_dim(); ++j)
    gen += x(j) * gens.generators()[static_cast<std::size_t>(j)];
  return {gen.exp(), gens.metric_norm(x)};
}

}  // namespace ncm
