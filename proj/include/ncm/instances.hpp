#ifndef NCM_INSTANCES_HPP
#define NCM_INSTANCES_HPP

#include <memory>
#include <optional>
#include <string>

#include "ncm/algebra.hpp"
#include "ncm/group.hpp"
#include "ncm/seminorm.hpp"

namespace ncm {

/// A fully wired algebra-action-seminorm bundle ready for the optimizer and
/// the verification suite.
struct Instance {
  std::string kind;
  Eigen::Index dim;
  HermitianBasis basis;  // coordinate space handed to the optimizer
  std::shared_ptr<const Seminorm> seminorm;
  std::optional<UnitaryImplementedAction> action;
  std::optional<LengthFunction> ell;
  std::shared_ptr<const DiracData> dirac;
};

/// Clock-and-shift implementers of Z_q x Z_q on M_q: element (m, n) acts by
/// conjugation with S^m C^n where S is the cyclic shift and C = diag(omega^j).
UnitaryImplementedAction weyl_action(int q);

/// Word length for the generators (1,0), (0,1) of Z_q x Z_q.
LengthFunction torus_word_length(int q);

/// M_q with the Weyl action. Weights (w1, w2) > 0 select the embedded
/// geodesic length; (0, 0) selects the word length.
Instance fuzzy_torus(int q, double w1 = 0.0, double w2 = 0.0);

/// M_n carrying the spin-(n-1)/2 generators X_j = -i J_j, with the Dirac
/// seminorm of the orthonormal frame.
Instance fuzzy_sphere(int n);
LieGenerators spin_generators(int n);

/// C(G) embedded as diagonal matrices in M_|G| with the translation action
/// (P_x e_z = e_{xz}) and the Lipschitz seminorm of ell. The coordinate basis
/// is the traceless diagonal one.
Instance commutative_instance(const FiniteGroup& group, const LengthFunction& ell);
UnitaryImplementedAction translation_action(const FiniteGroup& group);

/// Arbitrary implementers + length over an explicit group table.
Instance custom_instance(const FiniteGroup& group, std::vector<Matrix> implementers,
                         const LengthFunction& ell, bool cocycle_tolerant = false);

DensityState pure_basis_state(Eigen::Index dim, Eigen::Index k);
DensityState maximally_mixed(Eigen::Index dim);
/// Diagonal (commutative) random state, for instances confined to C(G).
DensityState random_diagonal_state(Eigen::Index dim, std::uint64_t seed);

}  // namespace ncm

#endif
