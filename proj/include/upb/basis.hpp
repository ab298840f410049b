#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upb/tensor.hpp"

namespace upb {

struct PartyLayout {
  std::vector<int> dims;
  std::vector<std::string> labels;

  long total_dim() const;
  int party_index(const std::string& label) const;  // throws on unknown label
};

PartyLayout make_layout(std::vector<int> dims, std::vector<std::string> labels);

struct ProductVector {
  std::vector<Vec> components;  // one normalized ket per party

  Vec full() const;  // tensor product of the components
};

// Normalizes every component; rejects zero components and empty lists.
ProductVector make_product_vector(std::vector<Vec> components);

struct ProductBasis {
  PartyLayout layout;
  std::vector<ProductVector> members;
};

struct OrthogonalityReport {
  bool orthogonal = true;
  double max_overlap = 0.0;  // worst off-diagonal |<v|w>|
  int worst_i = -1, worst_j = -1;
};

struct ExtendibilityVerdict {
  bool unextendible = false;
  // Present exactly when the verdict came out of the assignment search.
  // Verdicts produced by the dimension-bound shortcut carry neither.
  std::optional<ProductVector> witness;
  std::optional<std::vector<int>> assignment;  // member -> party index
};

OrthogonalityReport check_pairwise_orthogonality(const ProductBasis& basis,
                                                 double tol = 1e-10);

// A product vector orthogonal to all members exists iff some assignment
// member -> party leaves every party's assigned components spanning at most
// dims[party]-1 directions. Depth-first over members in listed order and
// parties in layout order, pruning saturated parties; the witness comes from
// the first successful assignment, one complement sample per party.
ExtendibilityVerdict check_unextendible(const ProductBasis& basis,
                                        double tol = 1e-10);

// In C^d (x) C^2 any orthogonal product set of size < 2d is extendible, so
// bipartite layouts with a qubit factor can skip the search. Returns nullopt
// when the bound does not apply.
std::optional<ExtendibilityVerdict> small_system_shortcut(
    const ProductBasis& basis);

// New party j is old party sigma[j].
ProductBasis permute_parties(const ProductBasis& basis,
                             const std::vector<int>& sigma);

// One unitary per party, each checked against U^dag U = I at 1e-12.
ProductBasis apply_local_unitaries(const ProductBasis& basis,
                                   const std::vector<Mat>& U);

}  // namespace upb
