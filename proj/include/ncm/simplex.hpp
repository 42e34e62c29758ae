#ifndef NCM_SIMPLEX_HPP
#define NCM_SIMPLEX_HPP

#include <stdexcept>
#include <vector>

#include "ncm/algebra.hpp"

namespace ncm {

struct LpInfeasible : std::runtime_error {
  LpInfeasible() : std::runtime_error("linear program is infeasible") {}
};
struct LpUnbounded : std::runtime_error {
  LpUnbounded() : std::runtime_error("linear program is unbounded") {}
};

/// maximize c^T x subject to a_ub x <= b_ub, a_eq x = b_eq, and x_j >= 0
/// where nonneg[j] is set (x_j free otherwise). Callers must ensure
/// boundedness (e.g. with box rows).
struct LinearProgram {
  RVector c;
  RMatrix a_ub;  // may be 0 x n
  RVector b_ub;
  RMatrix a_eq;  // may be 0 x n
  RVector b_eq;
  std::vector<bool> nonneg;  // empty = all free
};

struct LpResult {
  double value = 0.0;
  RVector x;
};

/// Dense two-phase simplex with deterministic pivoting (largest-coefficient
/// rule with lowest-index tie-breaks, Bland's rule after an iteration cap).
LpResult lp_solve(const LinearProgram& lp);

}  // namespace ncm

#endif
