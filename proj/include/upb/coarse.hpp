#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upb/basis.hpp"

namespace upb {

// Blocks are kept canonical: labels inside a block follow layout order, and
// blocks are sorted by their earliest label. "AB|C|D" style strings use the
// same ordering.
struct CoarsePartition {
  std::vector<std::vector<std::string>> blocks;

  std::string str() const;
};

CoarsePartition make_partition(std::vector<std::vector<std::string>> blocks,
                               const PartyLayout& layout);

// Parse "AB|CD" against single-character party labels.
CoarsePartition parse_partition(const std::string& cut,
                                const PartyLayout& layout);

// Merge each block's components into one tensor factor.
ProductBasis coarse_grain(const ProductBasis& basis,
                          const CoarsePartition& partition);

// All 13 proper coarse grainings of a 4-party layout, in a fixed order:
// the six pair merges, the three 2+2 splits, the four 3+1 splits.
std::vector<CoarsePartition> enumerate_coarse_grainings(
    const PartyLayout& layout);

struct PartitionVerdict {
  CoarsePartition partition;
  PartyLayout merged_layout;
  bool unextendible = false;
  std::optional<ProductVector> witness;  // on the merged layout
  bool via_shortcut = false;
};

struct GrainingReport {
  std::vector<PartitionVerdict> verdicts;
  bool in_u224 = false;  // some three-block graining stays a UPB
  bool in_u44 = false;   // some 2+2 graining stays a UPB
};

// Full search on the nine 2/3-block partitions; the 3+1 partitions are
// settled by the dimension bound (witness-less verdicts).
GrainingReport classify_upb_across_grainings(const ProductBasis& basis);

// Structural witness for a 2+2-merged graining of a 4-qubit basis of size n,
// with 0 <= m <= n-4: look for a group of n-3-m members splitting into a
// block with equal first-qubit components and a block with equal second-qubit
// components, while the other m+3 members contain m+1 mutually collinear
// merged components. On success the witness is |f', g', phi> with phi
// orthogonal to those m+3 merged components. Group subsets are scanned in
// lexicographic member order, qubit roles in layout order then swapped, and
// the equal-component block is always maximal for its value.
std::optional<ProductVector> structural_witness_shortcut(const ProductBasis& basis,
                                             std::pair<int, int> merged_pair,
                                             int m);

}  // namespace upb
