#ifndef NCM_VERIFY_HPP
#define NCM_VERIFY_HPP

#include <string>
#include <vector>

#include "ncm/instances.hpp"

namespace ncm {

/// One named inequality check. `margin` is the slack by which the check
/// passed (negative when it failed); boolean checks report 0 / -1.
struct Verdict {
  std::string name;
  bool pass = false;
  double margin = 0.0;
};

/// Runs every check applicable to the instance kind: length axioms,
/// ergodicity, trace property of the invariant expectation, smoothness,
/// diameter / scaling / comparison laws for computed distances, Clifford
/// relations and the Dirac commutator identity, the seminorm sandwich, and
/// the numerical-radius constant.
std::vector<Verdict> verify_suite(const Instance& inst, double tolerance = 1e-3,
                                  std::uint64_t seed = 1);

bool all_pass(const std::vector<Verdict>& verdicts);

}  // namespace ncm

#endif
