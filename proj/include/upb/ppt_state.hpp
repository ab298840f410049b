#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "upb/basis.hpp"
#include "upb/coarse.hpp"
#include "upb/uom.hpp"

namespace upb {

// x[0]..x[7] are the eight sine/cosine products; each lies in (0,1) for
// angles strictly inside (0, pi/2).
struct XCoefficients {
  std::array<double, 8> x{};
};

XCoefficients x_coefficients(const AngleAssignment& angles);

// The 8x8 real orthogonal matrix of +-x_i entries; u u^T = I is asserted to
// 1e-10 (a violation means the sign pattern was transcribed wrong).
Eigen::MatrixXd coefficient_matrix(const AngleAssignment& angles);

// The eight orthonormal 16-dim states psi_1..psi_8. Each is built twice, as
// a combination of complement product kets and as the explicit 16-amplitude
// expansion, and the two must agree to 1e-12. psi[0] is |a',b',c',d'>.
std::vector<Vec> psi_states(const AngleAssignment& angles);

struct DensityMatrix {
  Mat op;
  PartyLayout layout;
  std::string source;
};

// The rho-family generator: the renamed size-9 matrix with one letter pair
// per column.
SymbolicUOM rho_generator_uom();

// rho = (I - sum of member projectors) / (D - s) on the basis's layout.
// Requires pairwise-orthogonal members and s < D.
DensityMatrix build_rho(const ProductBasis& upb);

// Instantiates the renamed generator at the given binding, builds rho, and
// cross-checks the three equivalent constructions against each other
// (complement of the 9 members, the 8 product kets minus |a',b',c',d'>,
// and the psi_2..psi_8 projector sum) to 1e-10.
DensityMatrix build_rho_family(const AngleAssignment& angles);

struct PptReport {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

// Partial transpose over the first block of a two-block partition; PPT iff
// the minimum eigenvalue stays above -tol.
PptReport is_ppt(const DensityMatrix& rho, const CoarsePartition& bipartition,
                 double tol = 1e-10);

// Range criterion for the complement state of `upb`: entangled at the
// partition exactly when the coarse-grained set is still unextendible.
bool certify_entangled_range(const ProductBasis& upb,
                             const CoarsePartition& partition);

// Rank of the reduced state on every nonempty proper block of parties,
// ordered by block size then label; tolerance 1e-9 relative.
std::vector<std::pair<std::string, int>> reduced_ranks(
    const DensityMatrix& rho);

}  // namespace upb
