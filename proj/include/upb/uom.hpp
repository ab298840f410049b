#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upb/basis.hpp"

namespace upb {

// One cell of a symbolic matrix. base is '0', '1', or a letter a..d; a letter
// with primed=true is the second member of that letter's orthonormal pair.
struct Symbol {
  char base = '0';
  bool primed = false;

  bool operator==(const Symbol&) const = default;
  bool operator<(const Symbol& o) const {
    return base != o.base ? base < o.base : primed < o.primed;
  }
};

// "0", "1", "a", "a'", ... with the prime as a trailing apostrophe
Symbol parse_symbol(const std::string& text);
std::string symbol_str(const Symbol& s);

struct AngleAssignment {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  double of(char letter) const;  // a->alpha, b->beta, c->gamma, d->delta
};

struct SymbolicUOM {
  std::vector<std::vector<Symbol>> rows;
  std::optional<AngleAssignment> binding;

  int size() const { return static_cast<int>(rows.size()); }
  int width() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

bool same_symbols(const SymbolicUOM& a, const SymbolicUOM& b);

// The four moves that preserve instantiated orthogonality. Permutations are
// given as new[i] = old[perm[i]]. symbol_swap exchanges x and x' within one
// column (letter '0' means the computational pair); basis_relabel exchanges
// 0 with x and 1 with x' within one column.
struct TransformStep {
  enum class Kind { row_permute, column_permute, symbol_swap, basis_relabel };

  Kind kind = Kind::row_permute;
  std::vector<int> perm;
  int column = -1;
  char letter = '0';

  static TransformStep row_permutation(std::vector<int> perm);
  static TransformStep column_permutation(std::vector<int> perm);
  static TransformStep swap_pair(int column, char letter);
  static TransformStep relabel(int column, char letter);
};

std::string step_str(const TransformStep& step);

// Numeric realization: 0 -> (1,0), 1 -> (0,1), x -> (cos th, sin th),
// x' -> (sin th, -cos th) with th the angle bound to the letter. Pairwise
// orthogonality of the rows is verified numerically.
ProductBasis instantiate(const SymbolicUOM& uom, const AngleAssignment& angles);

SymbolicUOM apply_transform(const SymbolicUOM& uom, const TransformStep& step);

// One printed matrix plus the steps that should turn it into the next one.
// The last link's steps are ignored.
struct ChainLink {
  SymbolicUOM uom;
  std::vector<TransformStep> steps;
};

bool verify_chain(const std::vector<ChainLink>& chain);

// Bounded iterative-deepening search for a step sequence turning a into b
// exactly. Moves are tried in a fixed order (pair swaps, relabels, column
// permutations), a sorted-row fingerprint detects when only a row permutation
// is left. nullopt means "not found within budget", not a disproof.
std::optional<std::vector<TransformStep>> equivalent(const SymbolicUOM& a,
                                                     const SymbolicUOM& b,
                                                     long budget = 1000000);

enum class Size9Category { cat1, cat2, cat3, none };

std::string category_str(Size9Category c);

// Structural classifier for 9x4 matrices: cat1 = a column with 4 identical
// symbols plus another column with 2 identical among the remaining rows;
// cat2 = the 3+3 analog; cat3 = 3+2 plus two rows outside both groups that
// agree in both remaining columns. Groups are arbitrary disjoint row subsets
// (no contiguity assumed); first match in the order cat1, cat2, cat3 wins.
Size9Category classify_size9_category(const SymbolicUOM& uom);

// Give each column its own letter: every letter symbol in column j gets base
// column_letters[j] (primes kept). Columns mixing two different letters are
// rejected; 0/1 cells are untouched.
SymbolicUOM rename_letters(const SymbolicUOM& uom,
                           const std::vector<char>& column_letters);

}  // namespace upb
