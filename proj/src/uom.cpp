#include "upb/uom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace upb {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool is_letter(char c) { return c >= 'a' && c <= 'd'; }

void check_rect(const SymbolicUOM& u) {
  require(!u.rows.empty(), "matrix has no rows");
  size_t w = u.rows[0].size();
  require(w > 0, "matrix has empty rows");
  for (const auto& r : u.rows)
    require(r.size() == w, "matrix rows differ in width");
}

bool is_permutation(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

void join_perm(std::ostringstream& os, const std::vector<int>& perm) {
  for (size_t i = 0; i < perm.size(); ++i) {
    if (i) os << ',';
    os << perm[i];
  }
}

}  // namespace

Symbol parse_symbol(const std::string& text) {
  require(!text.empty() && text.size() <= 2, "bad symbol '" + text + "'");
  Symbol s;
  s.base = text[0];
  s.primed = text.size() == 2;
  if (s.primed) require(text[1] == '\'', "bad symbol '" + text + "'");
  require(s.base == '0' || s.base == '1' || is_letter(s.base),
          "bad symbol '" + text + "'");
  require(!s.primed || is_letter(s.base),
          "bad symbol '" + text + "': only letters take a prime");
  return s;
}

std::string symbol_str(const Symbol& s) {
  std::string out(1, s.base);
  if (s.primed) out += '\'';
  return out;
}

double AngleAssignment::of(char letter) const {
  switch (letter) {
    case 'a': return alpha;
    case 'b': return beta;
    case 'c': return gamma;
    case 'd': return delta;
    default: break;
  }
  throw std::invalid_argument(std::string("no angle bound to '") + letter + "'");
}

bool same_symbols(const SymbolicUOM& a, const SymbolicUOM& b) {
  return a.rows == b.rows;
}

TransformStep TransformStep::row_permutation(std::vector<int> perm) {
  TransformStep s;
  s.kind = Kind::row_permute;
  s.perm = std::move(perm);
  return s;
}

TransformStep TransformStep::column_permutation(std::vector<int> perm) {
  TransformStep s;
  s.kind = Kind::column_permute;
  s.perm = std::move(perm);
  return s;
}

TransformStep TransformStep::swap_pair(int column, char letter) {
  TransformStep s;
  s.kind = Kind::symbol_swap;
  s.column = column;
  s.letter = letter;
  return s;
}

TransformStep TransformStep::relabel(int column, char letter) {
  TransformStep s;
  s.kind = Kind::basis_relabel;
  s.column = column;
  s.letter = letter;
  return s;
}

std::string step_str(const TransformStep& step) {
  std::ostringstream os;
  switch (step.kind) {
    case TransformStep::Kind::row_permute:
      os << "row_permute(";
      join_perm(os, step.perm);
      os << ")";
      break;
    case TransformStep::Kind::column_permute:
      os << "column_permute(";
      join_perm(os, step.perm);
      os << ")";
      break;
    case TransformStep::Kind::symbol_swap:
      if (step.letter == '0')
        os << "symbol_swap(col " << step.column << ", 0<->1)";
      else
        os << "symbol_swap(col " << step.column << ", " << step.letter
           << "<->" << step.letter << "')";
      break;
    case TransformStep::Kind::basis_relabel:
      os << "basis_relabel(col " << step.column << ", 0<->" << step.letter
         << ", 1<->" << step.letter << "')";
      break;
  }
  return os.str();
}

ProductBasis instantiate(const SymbolicUOM& uom, const AngleAssignment& angles) {
  check_rect(uom);
  int w = uom.width();
  require(w <= 26, "matrix too wide to label parties");

  std::vector<int> dims(w, 2);
  std::vector<std::string> labels;
  for (int j = 0; j < w; ++j) labels.emplace_back(1, static_cast<char>('A' + j));

  ProductBasis basis;
  basis.layout = make_layout(dims, labels);
  for (const auto& row : uom.rows) {
    std::vector<Vec> comps;
    comps.reserve(w);
    for (const Symbol& s : row) {
      Vec v(2);
      if (s.base == '0') {
        v << 1.0, 0.0;
      } else if (s.base == '1') {
        v << 0.0, 1.0;
      } else {
        double th = angles.of(s.base);
        require(th > 0.0 && th < M_PI / 2,
                std::string("angle for '") + s.base +
                    "' must lie strictly inside (0, pi/2)");
        if (!s.primed)
          v << std::cos(th), std::sin(th);
        else
          v << std::sin(th), -std::cos(th);
      }
      comps.push_back(std::move(v));
    }
    basis.members.push_back(make_product_vector(std::move(comps)));
  }

  OrthogonalityReport rep = check_pairwise_orthogonality(basis);
  if (!rep.orthogonal) {
    std::ostringstream os;
    os << "rows " << rep.worst_i << " and " << rep.worst_j
       << " are not orthogonal at the given angles (overlap " << rep.max_overlap
       << ")";
    throw std::invalid_argument(os.str());
  }
  return basis;
}

SymbolicUOM apply_transform(const SymbolicUOM& uom, const TransformStep& step) {
  check_rect(uom);
  int n = uom.size();
  int w = uom.width();
  SymbolicUOM out = uom;
  switch (step.kind) {
    case TransformStep::Kind::row_permute: {
      require(is_permutation(step.perm, n),
              "row permutation does not match the row count");
      for (int i = 0; i < n; ++i) out.rows[i] = uom.rows[step.perm[i]];
      break;
    }
    case TransformStep::Kind::column_permute: {
      require(is_permutation(step.perm, w),
              "column permutation does not match the width");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < w; ++j) out.rows[i][j] = uom.rows[i][step.perm[j]];
      break;
    }
    case TransformStep::Kind::symbol_swap: {
      require(step.column >= 0 && step.column < w, "column index out of range");
      char L = step.letter;
      require(L == '0' || is_letter(L), "swap letter must be '0' or a..d");
      for (int i = 0; i < n; ++i) {
        Symbol& s = out.rows[i][step.column];
        if (L == '0') {
          if (s.base == '0')
            s.base = '1';
          else if (s.base == '1')
            s.base = '0';
        } else if (s.base == L) {
          s.primed = !s.primed;
        }
      }
      break;
    }
    case TransformStep::Kind::basis_relabel: {
      require(step.column >= 0 && step.column < w, "column index out of range");
      char L = step.letter;
      require(is_letter(L), "relabel letter must be a..d");
      for (int i = 0; i < n; ++i) {
        Symbol& s = out.rows[i][step.column];
        if (s.base == '0') {
          s.base = L;
          s.primed = false;
        } else if (s.base == '1') {
          s.base = L;
          s.primed = true;
        } else if (s.base == L) {
          s.base = s.primed ? '1' : '0';
          s.primed = false;
        }
      }
      break;
    }
  }
  return out;
}

bool verify_chain(const std::vector<ChainLink>& chain) {
  require(!chain.empty(), "chain has no links");
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    SymbolicUOM cur = chain[i].uom;
    for (const TransformStep& st : chain[i].steps) cur = apply_transform(cur, st);
    if (!same_symbols(cur, chain[i + 1].uom)) return false;
  }
  return true;
}

namespace {

// Sorted-row encoding; two matrices share it iff they differ by a row
// permutation only.
std::string fingerprint(const SymbolicUOM& u) {
  std::vector<std::string> enc;
  enc.reserve(u.rows.size());
  for (const auto& row : u.rows) {
    std::string s;
    for (const Symbol& sym : row) {
      s += sym.base;
      s += sym.primed ? '\'' : '.';
    }
    enc.push_back(std::move(s));
  }
  std::sort(enc.begin(), enc.end());
  std::string all;
  for (const auto& s : enc) {
    all += s;
    all += ';';
  }
  return all;
}

// The moves worth trying from a given state: pair swaps and relabels drawn
// from the symbols actually present, then every non-identity column
// permutation, all in a fixed order so the search is deterministic.
std::vector<TransformStep> column_moves(const SymbolicUOM& u) {
  std::vector<TransformStep> moves;
  int w = u.width();
  for (int j = 0; j < w; ++j) {
    std::set<char> bases;
    for (const auto& row : u.rows) {
      char b = row[j].base;
      bases.insert(b == '1' ? '0' : b);
    }
    for (char b : bases) moves.push_back(TransformStep::swap_pair(j, b));
  }
  for (int j = 0; j < w; ++j) {
    std::set<char> letters;
    for (const auto& row : u.rows)
      if (is_letter(row[j].base)) letters.insert(row[j].base);
    for (char L : letters) moves.push_back(TransformStep::relabel(j, L));
  }
  std::vector<int> perm(w);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end()))
    moves.push_back(TransformStep::column_permutation(perm));
  return moves;
}

// perm with cur.rows[perm[i]] == target.rows[i]; only called once the sorted
// fingerprints agree, so a matching always exists.
std::vector<int> match_rows(const SymbolicUOM& cur, const SymbolicUOM& target) {
  int n = cur.size();
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!used[j] && cur.rows[j] == target.rows[i]) {
        used[j] = 1;
        perm[i] = j;
        break;
      }
    }
    if (perm[i] < 0)
      throw std::logic_error("row matching failed despite equal fingerprints");
  }
  return perm;
}

bool is_identity(const std::vector<int>& perm) {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

bool search_steps(const SymbolicUOM& cur, const SymbolicUOM& target,
                  const std::string& goal, int remaining,
                  std::vector<TransformStep>& steps, long& nodes, long budget,
                  std::unordered_map<std::string, int>& seen) {
  for (const TransformStep& mv : column_moves(cur)) {
    if (++nodes > budget) return false;
    SymbolicUOM child = apply_transform(cur, mv);
    std::string fp = fingerprint(child);
    if (fp == goal) {
      steps.push_back(mv);
      std::vector<int> perm = match_rows(child, target);
      if (!is_identity(perm))
        steps.push_back(TransformStep::row_permutation(perm));
      return true;
    }
    if (remaining > 1) {
      auto it = seen.find(fp);
      if (it != seen.end() && it->second >= remaining - 1) continue;
      seen[fp] = remaining - 1;
      steps.push_back(mv);
      if (search_steps(child, target, goal, remaining - 1, steps, nodes, budget,
                       seen))
        return true;
      steps.pop_back();
      if (nodes > budget) return false;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<TransformStep>> equivalent(const SymbolicUOM& a,
                                                     const SymbolicUOM& b,
                                                     long budget) {
  check_rect(a);
  check_rect(b);
  require(a.size() == b.size() && a.width() == b.width(),
          "matrices differ in shape");
  if (same_symbols(a, b)) return std::vector<TransformStep>{};

  const std::string goal = fingerprint(b);
  if (fingerprint(a) == goal) {
    std::vector<TransformStep> steps;
    steps.push_back(TransformStep::row_permutation(match_rows(a, b)));
    return steps;
  }

  long nodes = 0;
  for (int depth = 1; depth <= 16 && nodes < budget; ++depth) {
    std::unordered_map<std::string, int> seen;
    std::vector<TransformStep> steps;
    if (search_steps(a, b, goal, depth, steps, nodes, budget, seen))
      return steps;
  }
  return std::nullopt;
}

std::string category_str(Size9Category c) {
  switch (c) {
    case Size9Category::cat1: return "cat1";
    case Size9Category::cat2: return "cat2";
    case Size9Category::cat3: return "cat3";
    case Size9Category::none: return "none";
  }
  return "none";
}

namespace {

std::vector<std::vector<int>> subsets_of(const std::vector<int>& pool, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (size_t i = start;
         i < pool.size() && pool.size() - i >= k - cur.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::map<std::string, std::vector<int>> symbol_classes(
    const SymbolicUOM& u, int col, const std::vector<int>& pool) {
  std::map<std::string, std::vector<int>> m;
  for (int r : pool) m[symbol_str(u.rows[r][col])].push_back(r);
  return m;
}

std::vector<int> without(const std::vector<int>& pool,
                         const std::vector<int>& drop) {
  std::vector<int> out;
  for (int r : pool)
    if (std::find(drop.begin(), drop.end(), r) == drop.end()) out.push_back(r);
  return out;
}

}  // namespace

Size9Category classify_size9_category(const SymbolicUOM& uom) {
  check_rect(uom);
  require(uom.size() == 9 && uom.width() == 4,
          "classifier expects a 9x4 matrix");

  std::vector<int> all(9);
  std::iota(all.begin(), all.end(), 0);

  // a column with four identical symbols plus, among the other rows, two
  // identical symbols in a second column
  for (int c1 = 0; c1 < 4; ++c1) {
    for (const auto& [s1, rows1] : symbol_classes(uom, c1, all)) {
      if (rows1.size() < 4) continue;
      for (const auto& g1 : subsets_of(rows1, 4)) {
        std::vector<int> rest = without(all, g1);
        for (int c2 = 0; c2 < 4; ++c2) {
          if (c2 == c1) continue;
          for (const auto& [s2, rows2] : symbol_classes(uom, c2, rest))
            if (rows2.size() >= 2) return Size9Category::cat1;
        }
      }
    }
  }

  // disjoint triples of identical symbols in two different columns
  for (int c1 = 0; c1 < 4; ++c1) {
    for (const auto& [s1, rows1] : symbol_classes(uom, c1, all)) {
      if (rows1.size() < 3) continue;
      for (const auto& g1 : subsets_of(rows1, 3)) {
        std::vector<int> rest = without(all, g1);
        for (int c2 = 0; c2 < 4; ++c2) {
          if (c2 == c1) continue;
          for (const auto& [s2, rows2] : symbol_classes(uom, c2, rest))
            if (rows2.size() >= 3) return Size9Category::cat2;
        }
      }
    }
  }

  // a triple and a disjoint pair in two columns, plus two leftover rows that
  // agree in both remaining columns
  for (int c1 = 0; c1 < 4; ++c1) {
    for (const auto& [s1, rows1] : symbol_classes(uom, c1, all)) {
      if (rows1.size() < 3) continue;
      for (const auto& g1 : subsets_of(rows1, 3)) {
        std::vector<int> rest1 = without(all, g1);
        for (int c2 = 0; c2 < 4; ++c2) {
          if (c2 == c1) continue;
          std::vector<int> others;
          for (int c = 0; c < 4; ++c)
            if (c != c1 && c != c2) others.push_back(c);
          for (const auto& [s2, rows2] : symbol_classes(uom, c2, rest1)) {
            if (rows2.size() < 2) continue;
            for (const auto& g2 : subsets_of(rows2, 2)) {
              std::vector<int> rest2 = without(rest1, g2);
              for (size_t i = 0; i < rest2.size(); ++i)
                for (size_t j = i + 1; j < rest2.size(); ++j) {
                  const auto& ri = uom.rows[rest2[i]];
                  const auto& rj = uom.rows[rest2[j]];
                  if (ri[others[0]] == rj[others[0]] &&
                      ri[others[1]] == rj[others[1]])
                    return Size9Category::cat3;
                }
            }
          }
        }
      }
    }
  }

  return Size9Category::none;
}

SymbolicUOM rename_letters(const SymbolicUOM& uom,
                           const std::vector<char>& column_letters) {
  check_rect(uom);
  require(static_cast<int>(column_letters.size()) == uom.width(),
          "need one letter per column");
  SymbolicUOM out = uom;
  for (int j = 0; j < uom.width(); ++j) {
    char target = column_letters[j];
    require(is_letter(target), "column letters must be a..d");
    char present = 0;
    for (const auto& row : uom.rows) {
      char b = row[j].base;
      if (!is_letter(b)) continue;
      if (present == 0)
        present = b;
      else
        require(present == b, "column mixes two different letters");
    }
    for (auto& row : out.rows)
      if (is_letter(row[j].base)) row[j].base = target;
  }
  return out;
}

}  // namespace upb
