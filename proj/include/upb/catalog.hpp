#pragma once

#include <string>
#include <vector>

#include "upb/uom.hpp"

namespace upb {

struct CatalogEntry {
  std::string name;
  int size = 0;
  SymbolicUOM uom;
  std::string provenance;  // "bundled-paper" or "external-table"
};

// alpha=0.3, beta=0.7, gamma=1.1, delta=0.4: a binding far from any special
// point, used whenever the caller does not pin angles itself.
AngleAssignment generic_angles();

std::vector<std::string> builtin_names();
CatalogEntry builtin(const std::string& name);

// JSON array of symbolic matrices, ordered; entries are named table-1,
// table-2, ... by position since downstream counts cite them by ordinal.
// Every entry is instantiated (own binding, generic angles when unbound) to
// confirm pairwise orthogonality; with verify_unextendible the full-layout
// search must also come back unextendible. Failures name the entry index.
std::vector<CatalogEntry> load_table(const std::string& path,
                                     bool verify_unextendible = false);

struct PartitionWitness {
  std::string entry;
  std::string partition;
};

// (entry, coarse graining) pairs that certify an unextendible basis with
// three blocks (2x2x4 type) and with two blocks of two parties each (4x4
// type), summed over the given entries.
struct CountReport {
  int count_224 = 0;
  int count_44 = 0;
  std::vector<PartitionWitness> witnessing;
};

CountReport reproduce_counts(const std::vector<CatalogEntry>& entries);

// Two worked step-by-step equivalence demonstrations between size-9
// matrices; each chain alternates a matrix with the steps leading to the
// next one and is checkable with verify_chain.
std::vector<std::vector<ChainLink>> transformation_chains();

}  // namespace upb
