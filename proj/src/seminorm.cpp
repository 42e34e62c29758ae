#include "ncm/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace ncm {

namespace {

constexpr double kZeroTol = 1e-14;

struct SingularPair {
  double sigma = 0.0;
  CVector u, v;
};

SingularPair top_singular_pair(const Matrix& t) {
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularPair p;
  p.sigma = svd.singularValues()(0);
  p.u = svd.matrixU().col(0);
  p.v = svd.matrixV().col(0);
  return p;
}

// g_j = Re <u, T(b_j) v> for the linear map T realized by `image`.
template <typename ImageFn>
Cut cut_from_pair(const SingularPair& p, const HermitianBasis& basis, ImageFn image) {
  Cut cut;
  cut.value = p.sigma;
  cut.gradient.resize(basis.size());
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    Matrix tb = image(basis.element(j));
    cut.gradient(j) = p.u.dot(tb * p.v).real();
  }
  return cut;
}

}  // namespace

std::optional<Cut> Seminorm::cut(const Matrix& a, const HermitianBasis& basis) const {
  std::vector<Cut> all = cuts(a, basis, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool Seminorm::kernel_is_scalars(const HermitianBasis& basis) const {
  if (basis.size() == 0) return true;
  std::vector<std::vector<Matrix>> probes;
  probes.reserve(static_cast<std::size_t>(basis.size()));
  Eigen::Index rows = 0;
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    probes.push_back(kernel_probe(basis.element(j)));
    if (j == 0)
      for (const Matrix& im : probes.front()) rows += 2 * im.size();
  }
  RMatrix stacked(rows, basis.size());
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    Eigen::Index r = 0;
    for (const Matrix& im : probes[static_cast<std::size_t>(j)]) {
      for (Eigen::Index col = 0; col < im.cols(); ++col)
        for (Eigen::Index row = 0; row < im.rows(); ++row) {
          stacked(r++, j) = im(row, col).real();
          stacked(r++, j) = im(row, col).imag();
        }
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(stacked);
  double top = svd.singularValues()(0);
  double bottom = svd.singularValues()(svd.singularValues().size() - 1);
  return bottom > 1e-8 * std::max(1.0, top);
}

// ---------------------------------------------------------------------------
// Length-function seminorm (and Hoelder variant)

LengthLipschitzSeminorm::LengthLipschitzSeminorm(UnitaryImplementedAction action,
                                                 LengthFunction ell, double holder_exponent)
    : action_(std::move(action)), ell_(std::move(ell)), r_(holder_exponent) {
  if (ell_.group.order() != action_.group().order())
    throw std::invalid_argument("LengthLipschitzSeminorm: group order mismatch");
  if (!(r_ > 0.0) || r_ > 1.0)
    throw std::invalid_argument("LengthLipschitzSeminorm: exponent must be in (0, 1]");
  if (!verify_length_function(ell_.group, ell_.values))
    throw std::invalid_argument("LengthLipschitzSeminorm: invalid length function");
}

std::string LengthLipschitzSeminorm::kind() const {
  return r_ == 1.0 ? "length_lipschitz" : "holder";
}

std::vector<Matrix> LengthLipschitzSeminorm::difference_terms(const Matrix& a) const {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(action_.group().order() - 1));
  for (int x = 0; x < action_.group().order(); ++x) {
    if (x == action_.group().identity()) continue;
    out.push_back((act(action_, x, a) - a) / std::pow(ell_.at(x), r_));
  }
  return out;
}

double LengthLipschitzSeminorm::evaluate(const Matrix& a) const {
  double best = 0.0;
  for (const Matrix& t : difference_terms(a)) best = std::max(best, operator_norm(t));
  return best;
}

std::vector<Cut> LengthLipschitzSeminorm::cuts(const Matrix& a, const HermitianBasis& basis,
                                               int max_cuts) const {
  std::vector<int> elements;
  for (int x = 0; x < action_.group().order(); ++x)
    if (x != action_.group().identity()) elements.push_back(x);

  std::vector<std::pair<double, int>> ranked;
  std::vector<SingularPair> pairs(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    Matrix t = (act(action_, elements[i], a) - a) / std::pow(ell_.at(elements[i]), r_);
    pairs[i] = top_singular_pair(t);
    if (pairs[i].sigma > kZeroTol) ranked.emplace_back(pairs[i].sigma, static_cast<int>(i));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& l, const auto& r) {
    return l.first > r.first || (l.first == r.first && l.second < r.second);
  });
  std::vector<Cut> out;
  for (const auto& [sigma, i] : ranked) {
    if (static_cast<int>(out.size()) >= max_cuts) break;
    const int x = elements[static_cast<std::size_t>(i)];
    const double scale = std::pow(ell_.at(x), r_);
    out.push_back(cut_from_pair(pairs[static_cast<std::size_t>(i)], basis,
                                [&](const Matrix& b) {
                                  return Matrix((act(action_, x, b) - b) / scale);
                                }));
  }
  return out;
}

std::optional<double> LengthLipschitzSeminorm::diameter_hint() const {
  double mean = 0.0;
  for (double v : ell_.values) mean += std::pow(v, r_);
  mean /= static_cast<double>(ell_.group.order());
  return 2.0 * mean;
}

std::vector<Matrix> LengthLipschitzSeminorm::kernel_probe(const Matrix& b) const {
  return difference_terms(b);
}

// ---------------------------------------------------------------------------
// Lie-derivative seminorm

LieSeminorm::LieSeminorm(LieGenerators gens, int budget)
    : gens_(std::move(gens)), budget_(budget) {
  if (budget_ < 1) throw std::invalid_argument("LieSeminorm: budget must be >= 1");
}

namespace {

double pencil_norm(const std::vector<Matrix>& terms, const RVector& u) {
  Matrix t = Matrix::Zero(terms.front().rows(), terms.front().cols());
  for (Eigen::Index k = 0; k < u.size(); ++k) t += u(k) * terms[static_cast<std::size_t>(k)];
  return operator_norm(t);
}

}  // namespace

RVector LieSeminorm::best_direction(const Matrix& a) const {
  const int m = gens_.lie_dim();
  std::vector<Matrix> terms;
  terms.reserve(static_cast<std::size_t>(m));
  for (const Matrix& y : gens_.orthonormal_generators()) terms.push_back(y * a - a * y);

  if (m == 1) {
    RVector u(1);
    u(0) = 1.0;
    return u;
  }

  // deterministic sweep: coordinate axes plus a fixed-seed Gaussian point set
  std::mt19937_64 rng(0x6c078965u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RVector best = RVector::Unit(m, 0);
  double bestValue = pencil_norm(terms, best);
  for (int k = 1; k < m; ++k) {
    RVector u = RVector::Unit(m, k);
    double v = pencil_norm(terms, u);
    if (v > bestValue) {
      bestValue = v;
      best = u;
    }
  }
  for (int s = 0; s < budget_; ++s) {
    RVector u(m);
    for (int k = 0; k < m; ++k) u(k) = gauss(rng);
    double norm = u.norm();
    if (norm < 1e-12) continue;
    u /= norm;
    double v = pencil_norm(terms, u);
    if (v > bestValue) {
      bestValue = v;
      best = u;
    }
  }

  // projected gradient ascent on the sphere
  double step = 0.2;
  RVector u = best;
  for (int iter = 0; iter < 50; ++iter) {
    Matrix t = Matrix::Zero(terms.front().rows(), terms.front().cols());
    for (int k = 0; k < m; ++k) t += u(k) * terms[static_cast<std::size_t>(k)];
    SingularPair p = top_singular_pair(t);
    if (p.sigma < kZeroTol) break;
    RVector grad(m);
    for (int k = 0; k < m; ++k)
      grad(k) = p.u.dot(terms[static_cast<std::size_t>(k)] * p.v).real();
    RVector tangent = grad - grad.dot(u) * u;
    if (tangent.norm() < 1e-13) break;
    RVector candidate = (u + step * tangent).normalized();
    double value = pencil_norm(terms, candidate);
    if (value > bestValue) {
      bestValue = value;
      u = candidate;
      best = candidate;
    } else {
      step *= 0.5;
      if (step < 1e-10) break;
    }
  }
  return best;
}

double LieSeminorm::evaluate(const Matrix& a) const {
  if (a.rows() != gens_.algebra_dim() || a.cols() != gens_.algebra_dim())
    throw std::invalid_argument("LieSeminorm: dimension mismatch");
  RVector u = best_direction(a);
  std::vector<Matrix> terms;
  for (const Matrix& y : gens_.orthonormal_generators()) terms.push_back(y * a - a * y);
  return pencil_norm(terms, u);
}

std::vector<Cut> LieSeminorm::cuts(const Matrix& a, const HermitianBasis& basis,
                                   int max_cuts) const {
  (void)max_cuts;
  RVector u = best_direction(a);
  Matrix t = Matrix::Zero(a.rows(), a.cols());
  std::vector<Matrix> gens;
  for (const Matrix& y : gens_.orthonormal_generators()) gens.push_back(y);
  Matrix direction = Matrix::Zero(a.rows(), a.cols());
  for (int k = 0; k < gens_.lie_dim(); ++k) direction += u(k) * gens[static_cast<std::size_t>(k)];
  t = direction * a - a * direction;
  SingularPair p = top_singular_pair(t);
  if (p.sigma <= kZeroTol) return {};
  return {cut_from_pair(p, basis, [&](const Matrix& b) {
    return Matrix(direction * b - b * direction);
  })};
}

std::vector<Matrix> LieSeminorm::kernel_probe(const Matrix& b) const {
  std::vector<Matrix> out;
  for (const Matrix& y : gens_.orthonormal_generators()) out.push_back(y * b - b * y);
  return out;
}

// ---------------------------------------------------------------------------
// Clifford generators

namespace {

std::vector<Matrix> hermitian_gammas(int count) {
  // count = 2k pairwise-anticommuting Hermitian involutions on dim 2^k
  std::vector<Matrix> gammas;
  if (count == 0) return gammas;
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  sz << 1, 0, 0, -1;
  gammas = {sx, sy};
  while (static_cast<int>(gammas.size()) < count) {
    const Eigen::Index d = gammas.front().rows();
    std::vector<Matrix> next;
    for (const Matrix& g : gammas)
      next.push_back(Eigen::kroneckerProduct(sx, g).eval());
    next.push_back(Eigen::kroneckerProduct(sy, Matrix::Identity(d, d)).eval());
    next.push_back(Eigen::kroneckerProduct(sz, Matrix::Identity(d, d)).eval());
    gammas = std::move(next);
  }
  return gammas;
}

Matrix chirality(const std::vector<Matrix>& gammas) {
  const int k = static_cast<int>(gammas.size()) / 2;
  Matrix c = Matrix::Identity(gammas.empty() ? 1 : gammas.front().rows(),
                              gammas.empty() ? 1 : gammas.front().rows());
  for (const Matrix& g : gammas) c = c * g;
  return std::pow(Complex(0, -1), k) * c;
}

Matrix two_block(const Matrix& top, const Matrix& bottom) {
  const Eigen::Index d = top.rows();
  Matrix out = Matrix::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = top;
  out.bottomRightCorner(d, d) = bottom;
  return out;
}

}  // namespace

CliffordGenerators CliffordGenerators::make(int m) {
  if (m < 1) throw std::invalid_argument("CliffordGenerators: m must be >= 1");
  CliffordGenerators out;
  out.m = m;
  const Complex i(0, 1);
  if (m % 2 == 0) {
    std::vector<Matrix> gammas = hermitian_gammas(m);
    out.rep_dim = gammas.front().rows();
    for (const Matrix& g : gammas) out.e.push_back(i * g);
  } else {
    // odd case: the two inequivalent irreducible blocks, opposite signs
    std::vector<Matrix> gammas = hermitian_gammas(m - 1);
    Matrix top = chirality(gammas);
    gammas.push_back(top);
    out.rep_dim = 2 * top.rows();
    for (const Matrix& g : gammas) out.e.push_back(two_block(i * g, -i * g));
  }
  if (clifford_relation_residual(out) > 1e-12)
    throw std::logic_error("CliffordGenerators: relation residual too large");
  if (!clifford_faithful(out))
    throw std::logic_error("CliffordGenerators: representation is not faithful");
  return out;
}

double clifford_relation_residual(const CliffordGenerators& c) {
  double worst = 0.0;
  const Matrix id = Matrix::Identity(c.rep_dim, c.rep_dim);
  for (std::size_t j = 0; j < c.e.size(); ++j) {
    worst = std::max(worst, (c.e[j] + c.e[j].adjoint()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (c.e[j] * c.e[j] + id).cwiseAbs().maxCoeff());
    for (std::size_t k = j + 1; k < c.e.size(); ++k)
      worst = std::max(worst, (c.e[j] * c.e[k] + c.e[k] * c.e[j]).cwiseAbs().maxCoeff());
  }
  return worst;
}

bool clifford_faithful(const CliffordGenerators& c) {
  const int m = c.m;
  const Eigen::Index d = c.rep_dim;
  const Eigen::Index cols = d * d;
  RMatrix stacked(2 * cols, Eigen::Index(1) << m);
  for (int mask = 0; mask < (1 << m); ++mask) {
    Matrix prod = Matrix::Identity(d, d);
    for (int j = 0; j < m; ++j)
      if (mask & (1 << j)) prod = prod * c.e[static_cast<std::size_t>(j)];
    Eigen::Index r = 0;
    for (Eigen::Index col = 0; col < d; ++col)
      for (Eigen::Index row = 0; row < d; ++row) {
        stacked(r++, mask) = prod(row, col).real();
        stacked(r++, mask) = prod(row, col).imag();
      }
  }
  Eigen::JacobiSVD<RMatrix> svd(stacked);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > 1e-8 * std::max(1.0, sv(0));
}

CliffordGenerators clifford_generators(int m, const RMatrix& metric) {
  if (m < 1) throw std::invalid_argument("clifford_generators: m must be >= 1");
  if (metric.size() != 0) {
    if (metric.rows() != m || metric.cols() != m)
      throw std::invalid_argument("clifford_generators: metric dimension mismatch");
    Eigen::SelfAdjointEigenSolver<RMatrix> es(metric);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("clifford_generators: metric is not positive-definite");
  }
  // generators are built for the orthonormalized frame, so only m matters
  return CliffordGenerators::make(m);
}

// ---------------------------------------------------------------------------
// Dirac data and seminorm

namespace {

void validate_projections(const CliffordGenerators& c) {
  const Complex i(0, 1);
  const Matrix id = Matrix::Identity(c.rep_dim, c.rep_dim);
  for (const Matrix& e : c.e) {
    Matrix f = i * e;
    if ((f - f.adjoint()).cwiseAbs().maxCoeff() > 1e-12 ||
        (f * f - id).cwiseAbs().maxCoeff() > 1e-12)
      throw std::logic_error("DiracData: auxiliary f_j is not a self-adjoint involution");
    Matrix p = 0.5 * (id + f);
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-12 ||
        (p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::logic_error("DiracData: p_j is not a projection");
  }
}

}  // namespace

DiracData DiracData::make(LieGenerators gens) {
  CliffordGenerators clifford = CliffordGenerators::make(gens.lie_dim());
  validate_projections(clifford);
  return DiracData{std::move(gens), std::move(clifford)};
}

Matrix dirac_commutator(const DiracData& dd, const Matrix& a) {
  if (a.rows() != dd.algebra_dim() || a.cols() != dd.algebra_dim())
    throw std::invalid_argument("dirac_commutator: dimension mismatch");
  const auto& ortho = dd.gens.orthonormal_generators();
  Matrix out = Matrix::Zero(a.rows() * dd.clifford.rep_dim, a.cols() * dd.clifford.rep_dim);
  for (int k = 0; k < dd.gens.lie_dim(); ++k) {
    const Matrix& y = ortho[static_cast<std::size_t>(k)];
    Matrix dk = y * a - a * y;
    out += Eigen::kroneckerProduct(dk, dd.clifford.e[static_cast<std::size_t>(k)]).eval();
  }
  return out;
}

DiracSeminorm::DiracSeminorm(DiracData dd) : dd_(std::move(dd)) {
  if (dd_.clifford.m != dd_.gens.lie_dim())
    throw std::invalid_argument("DiracSeminorm: Clifford rank must match the Lie dimension");
  validate_projections(dd_.clifford);
}

double DiracSeminorm::evaluate(const Matrix& a) const {
  return operator_norm(dirac_commutator(dd_, a));
}

std::vector<Cut> DiracSeminorm::cuts(const Matrix& a, const HermitianBasis& basis,
                                     int max_cuts) const {
  (void)max_cuts;
  Matrix t = dirac_commutator(dd_, a);
  SingularPair p = top_singular_pair(t);
  if (p.sigma <= kZeroTol) return {};
  return {cut_from_pair(p, basis,
                        [&](const Matrix& b) { return dirac_commutator(dd_, b); })};
}

std::vector<Matrix> DiracSeminorm::kernel_probe(const Matrix& b) const {
  std::vector<Matrix> out;
  for (const Matrix& y : dd_.gens.orthonormal_generators()) out.push_back(y * b - b * y);
  return out;
}

Matrix gns_left_multiplication(const Matrix& a, const DensityState& eta) {
  const Eigen::Index n = eta.dim();
  if (a.rows() != n || a.cols() != n)
    throw std::invalid_argument("gns_left_multiplication: dimension mismatch");
  return Eigen::kroneckerProduct(Matrix::Identity(n, n), a).eval();
}

Matrix build_dirac_matrix(const DiracData& dd, const DensityState& eta) {
  const Eigen::Index n = dd.algebra_dim();
  if (eta.dim() != n) throw std::invalid_argument("build_dirac_matrix: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(eta.rho());
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw std::invalid_argument("build_dirac_matrix: eta is not faithful");
  Matrix sqrtRho = es.eigenvectors() *
                   es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() *
                   es.eigenvectors().adjoint();
  Matrix invSqrtRho = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
  const Matrix idN = Matrix::Identity(n, n);
  Matrix out = Matrix::Zero(n * n * dd.clifford.rep_dim, n * n * dd.clifford.rep_dim);
  for (int k = 0; k < dd.gens.lie_dim(); ++k) {
    const Matrix& y = dd.gens.orthonormal_generators()[static_cast<std::size_t>(k)];
    // right multiplication picks up the GNS change of basis for eta
    Matrix b = invSqrtRho * y * sqrtRho;
    Matrix gnsPart = Eigen::kroneckerProduct(idN, y).eval() -
                     Eigen::kroneckerProduct(b.transpose(), idN).eval();
    out += Eigen::kroneckerProduct(gnsPart, dd.clifford.e[static_cast<std::size_t>(k)]).eval();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scaled seminorm

ScaledSeminorm::ScaledSeminorm(std::shared_ptr<const Seminorm> inner, double factor)
    : inner_(std::move(inner)), factor_(factor) {
  if (!inner_) throw std::invalid_argument("ScaledSeminorm: null inner seminorm");
  if (!(factor_ > 0.0)) throw std::invalid_argument("ScaledSeminorm: factor must be positive");
}

double ScaledSeminorm::evaluate(const Matrix& a) const { return factor_ * inner_->evaluate(a); }

std::vector<Cut> ScaledSeminorm::cuts(const Matrix& a, const HermitianBasis& basis,
                                      int max_cuts) const {
  std::vector<Cut> out = inner_->cuts(a, basis, max_cuts);
  for (Cut& c : out) {
    c.gradient *= factor_;
    c.value *= factor_;
  }
  return out;
}

std::optional<double> ScaledSeminorm::diameter_hint() const {
  if (auto hint = inner_->diameter_hint()) return *hint / factor_;
  return std::nullopt;
}

bool ScaledSeminorm::kernel_is_scalars(const HermitianBasis& basis) const {
  // scaling by t > 0 leaves the kernel unchanged
  return inner_->kernel_is_scalars(basis);
}

std::vector<Matrix> ScaledSeminorm::kernel_probe(const Matrix& b) const {
  (void)b;
  return {};  // unused: kernel_is_scalars delegates to the inner seminorm
}

std::shared_ptr<Seminorm> scale_seminorm(std::shared_ptr<const Seminorm> inner, double t) {
  return std::make_shared<ScaledSeminorm>(std::move(inner), t);
}

std::optional<Cut> seminorm_cut(const Seminorm& seminorm, const Matrix& a,
                                const HermitianBasis& basis) {
  return seminorm.cut(a, basis);
}

}  // namespace ncm
