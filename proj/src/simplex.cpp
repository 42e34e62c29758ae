#include "ncm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncm {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kOptTol = 1e-9;

struct Tableau {
  RMatrix t;                // m x (ncols + 1), last column = rhs
  RVector obj;              // ncols + 1, objective row (starts as -c | 0)
  std::vector<int> basis;   // basic column per row
  int ncols = 0;

  int rows() const { return static_cast<int>(t.rows()); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    double f = obj(col);
    if (f != 0.0) obj.transpose() -= f * t.row(row);
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Returns false once optimal. `allowed` masks columns that may enter.
  bool step(const std::vector<bool>& allowed, bool bland) {
    int entering = -1;
    double best = -kOptTol;
    for (int j = 0; j < ncols; ++j) {
      if (!allowed[static_cast<std::size_t>(j)]) continue;
      if (obj(j) < best) {
        entering = j;
        best = obj(j);
        if (bland) break;
      }
    }
    if (entering < 0) return false;
    int leaving = -1;
    double bestRatio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows(); ++i) {
      double a = t(i, entering);
      if (a <= kPivotTol) continue;
      double ratio = t(i, ncols) / a;
      if (ratio < bestRatio - 1e-12 ||
          (ratio < bestRatio + 1e-12 && leaving >= 0 &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
        bestRatio = ratio;
        leaving = i;
      }
    }
    if (leaving < 0) throw LpUnbounded();
    pivot(leaving, entering);
    return true;
  }

  void run(const std::vector<bool>& allowed) {
    const long cap = 60L * (rows() + ncols) + 2000;
    long iter = 0;
    while (step(allowed, iter > cap)) {
      if (++iter > 4 * cap) throw std::runtime_error("simplex: iteration limit exceeded");
    }
  }
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int mu = static_cast<int>(lp.b_ub.size());
  const int me = static_cast<int>(lp.b_eq.size());
  if ((mu > 0 && lp.a_ub.cols() != n) || (me > 0 && lp.a_eq.cols() != n))
    throw std::invalid_argument("lp_solve: constraint width mismatch");
  if (!lp.nonneg.empty() && static_cast<int>(lp.nonneg.size()) != n)
    throw std::invalid_argument("lp_solve: nonneg mask size mismatch");

  // expand free variables into positive/negative parts
  std::vector<int> posCol(static_cast<std::size_t>(n)), negCol(static_cast<std::size_t>(n), -1);
  int nexp = 0;
  for (int j = 0; j < n; ++j) {
    bool isNonneg = !lp.nonneg.empty() && lp.nonneg[static_cast<std::size_t>(j)];
    posCol[static_cast<std::size_t>(j)] = nexp++;
    if (!isNonneg) negCol[static_cast<std::size_t>(j)] = nexp++;
  }

  const int m = mu + me;
  // columns: expanded vars | slack/surplus per ub row | artificials
  std::vector<int> artificialOf(static_cast<std::size_t>(m), -1);
  int nslack = mu;
  int nart = 0;
  std::vector<double> rowSign(static_cast<std::size_t>(m), 1.0);
  for (int i = 0; i < mu; ++i) {
    if (lp.b_ub(i) < 0) {
      rowSign[static_cast<std::size_t>(i)] = -1.0;
      artificialOf[static_cast<std::size_t>(i)] = nart++;
    }
  }
  for (int i = 0; i < me; ++i) {
    if (lp.b_eq(i) < 0) rowSign[static_cast<std::size_t>(mu + i)] = -1.0;
    artificialOf[static_cast<std::size_t>(mu + i)] = nart++;
  }
  const int ncols = nexp + nslack + nart;

  Tableau tab;
  tab.ncols = ncols;
  tab.t = RMatrix::Zero(m, ncols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);

  auto fillVarRow = [&](int row, const RMatrix& a, int srcRow, double sign) {
    for (int j = 0; j < n; ++j) {
      double v = sign * a(srcRow, j);
      tab.t(row, posCol[static_cast<std::size_t>(j)]) = v;
      if (negCol[static_cast<std::size_t>(j)] >= 0)
        tab.t(row, negCol[static_cast<std::size_t>(j)]) = -v;
    }
  };

  for (int i = 0; i < mu; ++i) {
    double s = rowSign[static_cast<std::size_t>(i)];
    fillVarRow(i, lp.a_ub, i, s);
    tab.t(i, nexp + i) = s;  // slack (or surplus when the row was flipped)
    tab.t(i, ncols) = s * lp.b_ub(i);
    if (artificialOf[static_cast<std::size_t>(i)] >= 0) {
      int col = nexp + nslack + artificialOf[static_cast<std::size_t>(i)];
      tab.t(i, col) = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = col;
    } else {
      tab.basis[static_cast<std::size_t>(i)] = nexp + i;
    }
  }
  for (int i = 0; i < me; ++i) {
    int row = mu + i;
    double s = rowSign[static_cast<std::size_t>(row)];
    fillVarRow(row, lp.a_eq, i, s);
    tab.t(row, ncols) = s * lp.b_eq(i);
    int col = nexp + nslack + artificialOf[static_cast<std::size_t>(row)];
    tab.t(row, col) = 1.0;
    tab.basis[static_cast<std::size_t>(row)] = col;
  }

  std::vector<bool> allowAll(static_cast<std::size_t>(ncols), true);

  if (nart > 0) {
    // phase 1: minimize the sum of artificials
    tab.obj = RVector::Zero(ncols + 1);
    for (int j = nexp + nslack; j < ncols; ++j) tab.obj(j) = 1.0;
    for (int i = 0; i < m; ++i) {
      int b = tab.basis[static_cast<std::size_t>(i)];
      if (b >= nexp + nslack) tab.obj.transpose() -= tab.t.row(i);
    }
    tab.run(allowAll);
    if (tab.obj(ncols) < -1e-7) throw LpInfeasible();
    // drive remaining artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
      int b = tab.basis[static_cast<std::size_t>(i)];
      if (b < nexp + nslack) continue;
      int col = -1;
      for (int j = 0; j < nexp + nslack; ++j)
        if (std::abs(tab.t(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      if (col >= 0) tab.pivot(i, col);
    }
    for (int j = nexp + nslack; j < ncols; ++j) allowAll[static_cast<std::size_t>(j)] = false;
  }

  // phase 2 objective
  tab.obj = RVector::Zero(ncols + 1);
  for (int j = 0; j < n; ++j) {
    tab.obj(posCol[static_cast<std::size_t>(j)]) = -lp.c(j);
    if (negCol[static_cast<std::size_t>(j)] >= 0)
      tab.obj(negCol[static_cast<std::size_t>(j)]) = lp.c(j);
  }
  for (int i = 0; i < m; ++i) {
    int b = tab.basis[static_cast<std::size_t>(i)];
    if (b >= 0 && std::abs(tab.obj(b)) > 0.0) tab.obj.transpose() -= tab.obj(b) * tab.t.row(i);
  }
  tab.run(allowAll);

  RVector expanded = RVector::Zero(ncols);
  for (int i = 0; i < m; ++i) {
    int b = tab.basis[static_cast<std::size_t>(i)];
    if (b >= 0 && b < ncols) expanded(b) = tab.t(i, ncols);
  }
  LpResult out;
  out.x = RVector::Zero(n);
  for (int j = 0; j < n; ++j) {
    out.x(j) = expanded(posCol[static_cast<std::size_t>(j)]);
    if (negCol[static_cast<std::size_t>(j)] >= 0)
      out.x(j) -= expanded(negCol[static_cast<std::size_t>(j)]);
  }
  out.value = lp.c.dot(out.x);
  return out;
}

}  // namespace ncm
