#include "upb/ppt_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "upb/catalog.hpp"

namespace upb {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_angles(const AngleAssignment& angles) {
  for (double th : {angles.alpha, angles.beta, angles.gamma, angles.delta})
    require(th > 0.0 && th < M_PI / 2,
            "angles must lie strictly inside (0, pi/2)");
}

Vec qubit(double c0, double c1) {
  Vec v(2);
  v << c0, c1;
  return v;
}

// the eight complement product kets carrying the coefficients u_{i1}..u_{i8}
std::vector<Vec> complement_kets(const AngleAssignment& an) {
  const Vec k0 = qubit(1, 0), k1 = qubit(0, 1);
  const Vec ap = qubit(std::sin(an.alpha), -std::cos(an.alpha));
  const Vec bp = qubit(std::sin(an.beta), -std::cos(an.beta));
  const Vec cp = qubit(std::sin(an.gamma), -std::cos(an.gamma));
  const Vec dp = qubit(std::sin(an.delta), -std::cos(an.delta));
  return {
      tensor_product({ap, k0, k0, k0}), tensor_product({k1, bp, k1, k0}),
      tensor_product({k1, k0, cp, k1}), tensor_product({k1, k1, k0, dp}),
      tensor_product({ap, k1, k1, k1}), tensor_product({k0, bp, k0, k1}),
      tensor_product({k0, k1, cp, k0}), tensor_product({k0, k0, k1, dp}),
  };
}

}  // namespace

XCoefficients x_coefficients(const AngleAssignment& angles) {
  check_angles(angles);
  const double sa = std::sin(angles.alpha), ca = std::cos(angles.alpha);
  const double sb = std::sin(angles.beta), cb = std::cos(angles.beta);
  const double sg = std::sin(angles.gamma), cg = std::cos(angles.gamma);
  const double sd = std::sin(angles.delta), cd = std::cos(angles.delta);
  XCoefficients out;
  out.x[0] = sb * sg * sd;
  out.x[1] = ca * cg * sd;
  out.x[2] = ca * sb * cd;
  out.x[3] = ca * cb * sg;
  out.x[4] = cb * cg * cd;
  out.x[5] = sa * sg * cd;
  out.x[6] = sa * cb * sd;
  out.x[7] = sa * sb * cg;
  return out;
}

Eigen::MatrixXd coefficient_matrix(const AngleAssignment& angles) {
  const XCoefficients xc = x_coefficients(angles);
  static const int idx[8][8] = {
      {1, 2, 3, 4, 5, 6, 7, 8}, {2, 1, 4, 3, 6, 5, 8, 7},
      {3, 4, 1, 2, 7, 8, 5, 6}, {4, 3, 2, 1, 8, 7, 6, 5},
      {5, 6, 7, 8, 1, 2, 3, 4}, {6, 5, 8, 7, 2, 1, 4, 3},
      {7, 8, 5, 6, 3, 4, 1, 2}, {8, 7, 6, 5, 4, 3, 2, 1}};
  static const int sgn[8][8] = {
      {+1, +1, +1, +1, -1, -1, -1, -1}, {+1, -1, -1, +1, +1, -1, -1, +1},
      {+1, +1, -1, -1, +1, +1, -1, -1}, {+1, -1, +1, -1, +1, -1, +1, -1},
      {-1, -1, -1, -1, -1, -1, -1, -1}, {-1, +1, -1, +1, +1, -1, +1, -1},
      {+1, -1, -1, +1, -1, +1, +1, -1}, {+1, +1, -1, -1, -1, -1, +1, +1}};
  Eigen::MatrixXd u(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) u(i, j) = sgn[i][j] * xc.x[idx[i][j] - 1];
  const double dev =
      (u * u.transpose() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "coefficient matrix is not orthogonal (deviation " << dev << ")";
    throw std::runtime_error(os.str());
  }
  return u;
}

std::vector<Vec> psi_states(const AngleAssignment& an) {
  const Eigen::MatrixXd u = coefficient_matrix(an);
  const std::vector<Vec> kets = complement_kets(an);
  const double sa = std::sin(an.alpha), ca = std::cos(an.alpha);
  const double sb = std::sin(an.beta), cb = std::cos(an.beta);
  const double sg = std::sin(an.gamma), cg = std::cos(an.gamma);
  const double sd = std::sin(an.delta), cd = std::cos(an.delta);

  std::vector<Vec> psis;
  psis.reserve(8);
  for (int i = 0; i < 8; ++i) {
    Vec sum = Vec::Zero(16);
    for (int k = 0; k < 8; ++k) sum += u(i, k) * kets[k];

    // the same state written out amplitude by amplitude on |2j+k>
    Vec flat(16);
    flat << u(i, 0) * sa, u(i, 5) * sb, u(i, 7) * sd, -u(i, 7) * cd,
        u(i, 6) * sg, -u(i, 5) * cb, -u(i, 6) * cg, u(i, 4) * sa,
        -u(i, 0) * ca, u(i, 2) * sg, u(i, 1) * sb, -u(i, 2) * cg,
        u(i, 3) * sd, -u(i, 3) * cd, -u(i, 1) * cb, -u(i, 4) * ca;

    const double dev = (sum - flat).cwiseAbs().maxCoeff();
    if (dev > 1e-12) {
      std::ostringstream os;
      os << "the two expansions of state " << i + 1 << " disagree by " << dev;
      throw std::runtime_error(os.str());
    }
    psis.push_back(std::move(sum));
  }
  return psis;
}

SymbolicUOM rho_generator_uom() {
  return rename_letters(builtin("size9-11th").uom, {'a', 'b', 'c', 'd'});
}

DensityMatrix build_rho(const ProductBasis& upb) {
  const OrthogonalityReport rep = check_pairwise_orthogonality(upb);
  if (!rep.orthogonal) {
    std::ostringstream os;
    os << "members " << rep.worst_i << " and " << rep.worst_j
       << " are not orthogonal (overlap " << rep.max_overlap << ")";
    throw std::invalid_argument(os.str());
  }
  const long D = upb.layout.total_dim();
  const long s = static_cast<long>(upb.members.size());
  require(s < D, "the basis already fills the space; no complement state");

  Mat op = Mat::Identity(D, D);
  for (const ProductVector& m : upb.members) {
    const Vec v = m.full();
    op -= v * v.adjoint();
  }
  op /= static_cast<double>(D - s);

  DensityMatrix rho;
  rho.op = std::move(op);
  rho.layout = upb.layout;
  std::ostringstream os;
  os << "complement of " << s << "-member product basis";
  rho.source = os.str();
  return rho;
}

DensityMatrix build_rho_family(const AngleAssignment& angles) {
  check_angles(angles);
  const ProductBasis basis = instantiate(rho_generator_uom(), angles);
  DensityMatrix rho = build_rho(basis);

  // second form: the eight complement kets minus the |a',b',c',d'> projector
  const std::vector<Vec> kets = complement_kets(angles);
  const Vec psi1 = tensor_product(
      {qubit(std::sin(angles.alpha), -std::cos(angles.alpha)),
       qubit(std::sin(angles.beta), -std::cos(angles.beta)),
       qubit(std::sin(angles.gamma), -std::cos(angles.gamma)),
       qubit(std::sin(angles.delta), -std::cos(angles.delta))});
  Mat form2 = Mat::Zero(16, 16);
  for (const Vec& k : kets) form2 += k * k.adjoint();
  form2 -= psi1 * psi1.adjoint();
  form2 /= 7.0;

  // third form: the psi_2..psi_8 projector sum
  const std::vector<Vec> psis = psi_states(angles);
  Mat form3 = Mat::Zero(16, 16);
  for (int i = 1; i < 8; ++i) form3 += psis[i] * psis[i].adjoint();
  form3 /= 7.0;

  const double d2 = (rho.op - form2).cwiseAbs().maxCoeff();
  const double d3 = (rho.op - form3).cwiseAbs().maxCoeff();
  if (d2 > 1e-10 || d3 > 1e-10) {
    std::ostringstream os;
    os << "the three constructions of the state disagree (deviations " << d2
       << ", " << d3 << ")";
    throw std::runtime_error(os.str());
  }
  rho.source = "rank-seven family state";
  return rho;
}

PptReport is_ppt(const DensityMatrix& rho, const CoarsePartition& bipartition,
                 double tol) {
  require(bipartition.blocks.size() == 2,
          "partial transpose needs a two-block partition");
  std::vector<int> block;
  for (const std::string& label : bipartition.blocks[0])
    block.push_back(rho.layout.party_index(label));
  const Mat pt = partial_transpose(rho.op, rho.layout.dims, block);
  const Eigensystem es = hermitian_eigensystem(pt);
  PptReport out;
  out.min_eigenvalue = es.values.back();
  out.ppt = out.min_eigenvalue >= -tol;
  return out;
}

bool certify_entangled_range(const ProductBasis& upb,
                             const CoarsePartition& partition) {
  const ProductBasis merged = coarse_grain(upb, partition);
  return check_unextendible(merged).unextendible;
}

std::vector<std::pair<std::string, int>> reduced_ranks(
    const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.layout.dims.size());
  std::vector<std::pair<std::string, int>> out;
  for (int size = 1; size < n; ++size) {
    std::vector<int> keep(size);
    for (int i = 0; i < size; ++i) keep[i] = i;
    while (true) {
      std::string label;
      for (int p : keep) label += rho.layout.labels[p];
      const Mat red = partial_trace(rho.op, rho.layout.dims, keep);
      const Eigensystem es = hermitian_eigensystem(red);
      int rank = 0;
      if (!es.values.empty() && es.values[0] > 0.0)
        for (double v : es.values)
          if (v > 1e-9 * es.values[0]) ++rank;
      out.emplace_back(label, rank);

      int i = size - 1;
      while (i >= 0 && keep[i] == n - size + i) --i;
      if (i < 0) break;
      ++keep[i];
      for (int j = i + 1; j < size; ++j) keep[j] = keep[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace upb
