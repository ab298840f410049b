#include "upb/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace upb {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool is_permutation(const std::vector<int>& sigma, size_t n) {
  if (sigma.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int s : sigma) {
    if (s < 0 || s >= static_cast<int>(n) || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

}  // namespace

long PartyLayout::total_dim() const {
  long d = 1;
  for (int x : dims) d *= x;
  return d;
}

int PartyLayout::party_index(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw std::invalid_argument("unknown party label: " + label);
}

PartyLayout make_layout(std::vector<int> dims, std::vector<std::string> labels) {
  require(dims.size() == labels.size(), "layout: dims/labels length mismatch");
  require(dims.size() >= 2, "layout: need at least two parties");
  for (int d : dims) require(d >= 1, "layout: dims must be positive");
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      require(labels[i] != labels[j], "layout: duplicate party label");
  return PartyLayout{std::move(dims), std::move(labels)};
}

Vec ProductVector::full() const { return tensor_product(components); }

ProductVector make_product_vector(std::vector<Vec> components) {
  require(!components.empty(), "product vector: no components");
  for (Vec& c : components) {
    const double n = c.norm();
    require(n > 1e-14, "product vector: zero component");
    c /= n;
  }
  return ProductVector{std::move(components)};
}

OrthogonalityReport check_pairwise_orthogonality(const ProductBasis& basis,
                                                 double tol) {
  OrthogonalityReport rep;
  const size_t s = basis.members.size();
  std::vector<Vec> fulls(s);
  for (size_t i = 0; i < s; ++i) fulls[i] = basis.members[i].full();
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = i + 1; j < s; ++j) {
      const double ov = std::abs(fulls[i].dot(fulls[j]));
      if (ov > rep.max_overlap) {
        rep.max_overlap = ov;
        rep.worst_i = static_cast<int>(i);
        rep.worst_j = static_cast<int>(j);
      }
    }
  }
  rep.orthogonal = rep.max_overlap <= tol;
  return rep;
}

namespace {

struct AssignmentSearch {
  const ProductBasis& basis;
  std::vector<std::vector<Vec>> assigned;  // per party
  std::vector<int> choice;                 // member -> party

  explicit AssignmentSearch(const ProductBasis& b)
      : basis(b),
        assigned(b.layout.dims.size()),
        choice(b.members.size(), -1) {}

  bool dfs(size_t k) {
    if (k == basis.members.size()) return true;
    const int nparties = static_cast<int>(basis.layout.dims.size());
    for (int p = 0; p < nparties; ++p) {
      assigned[p].push_back(basis.members[k].components[p]);
      // rank cutoff fixed at 1e-9 relative; the constructions are exact
      if (span_dimension(assigned[p]) <= basis.layout.dims[p] - 1) {
        choice[k] = p;
        if (dfs(k + 1)) return true;
      }
      assigned[p].pop_back();
    }
    choice[k] = -1;
    return false;
  }
};

}  // namespace

ExtendibilityVerdict check_unextendible(const ProductBasis& basis, double tol) {
  for (const ProductVector& m : basis.members)
    require(m.components.size() == basis.layout.dims.size(),
            "check_unextendible: member does not match layout");

  AssignmentSearch search(basis);
  if (!search.dfs(0)) return ExtendibilityVerdict{true, std::nullopt, std::nullopt};

  std::vector<Vec> comps;
  comps.reserve(basis.layout.dims.size());
  for (size_t p = 0; p < basis.layout.dims.size(); ++p) {
    auto w = orthogonal_complement_sample(search.assigned[p],
                                          basis.layout.dims[p]);
    if (!w) throw std::runtime_error(
        "check_unextendible: complement vanished after successful search");
    comps.push_back(*w);
  }
  ProductVector witness = make_product_vector(std::move(comps));

  // soundness is asserted on every call
  const Vec wfull = witness.full();
  for (size_t i = 0; i < basis.members.size(); ++i) {
    const double ov = std::abs(wfull.dot(basis.members[i].full()));
    if (ov > tol)
      throw std::runtime_error("check_unextendible: witness overlaps member " +
                               std::to_string(i));
  }
  return ExtendibilityVerdict{false, std::move(witness), search.choice};
}

std::optional<ExtendibilityVerdict> small_system_shortcut(
    const ProductBasis& basis) {
  if (basis.layout.dims.size() != 2) return std::nullopt;
  const int d0 = basis.layout.dims[0], d1 = basis.layout.dims[1];
  int big = 0;
  if (d0 == 2) big = d1;
  else if (d1 == 2) big = d0;
  else return std::nullopt;
  if (static_cast<int>(basis.members.size()) < 2 * big)
    return ExtendibilityVerdict{false, std::nullopt, std::nullopt};
  return std::nullopt;
}

ProductBasis permute_parties(const ProductBasis& basis,
                             const std::vector<int>& sigma) {
  const size_t n = basis.layout.dims.size();
  require(is_permutation(sigma, n), "permute_parties: invalid permutation");
  PartyLayout layout;
  layout.dims.resize(n);
  layout.labels.resize(n);
  for (size_t j = 0; j < n; ++j) {
    layout.dims[j] = basis.layout.dims[sigma[j]];
    layout.labels[j] = basis.layout.labels[sigma[j]];
  }
  ProductBasis out{layout, {}};
  out.members.reserve(basis.members.size());
  for (const ProductVector& m : basis.members) {
    std::vector<Vec> comps(n);
    for (size_t j = 0; j < n; ++j) comps[j] = m.components[sigma[j]];
    out.members.push_back(ProductVector{std::move(comps)});
  }
  return out;
}

ProductBasis apply_local_unitaries(const ProductBasis& basis,
                                   const std::vector<Mat>& U) {
  const size_t n = basis.layout.dims.size();
  require(U.size() == n, "apply_local_unitaries: need one unitary per party");
  for (size_t p = 0; p < n; ++p) {
    require(U[p].rows() == basis.layout.dims[p] &&
                U[p].cols() == basis.layout.dims[p],
            "apply_local_unitaries: dimension mismatch");
    const Mat gram = U[p].adjoint() * U[p];
    const double dev =
        (gram - Mat::Identity(U[p].rows(), U[p].cols())).cwiseAbs().maxCoeff();
    require(dev <= 1e-12, "apply_local_unitaries: matrix not unitary");
  }
  ProductBasis out{basis.layout, {}};
  out.members.reserve(basis.members.size());
  for (const ProductVector& m : basis.members) {
    std::vector<Vec> comps(n);
    for (size_t p = 0; p < n; ++p) comps[p] = U[p] * m.components[p];
    out.members.push_back(ProductVector{std::move(comps)});
  }
  return out;
}

}  // namespace upb
