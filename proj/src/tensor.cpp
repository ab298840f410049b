#include "upb/tensor.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

namespace upb {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// digits of a flat index under the layout, slowest first
std::vector<int> decode(long index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (int p = static_cast<int>(dims.size()) - 1; p >= 0; --p) {
    digits[p] = static_cast<int>(index % dims[p]);
    index /= dims[p];
  }
  return digits;
}

long encode(const std::vector<int>& digits, const std::vector<int>& dims) {
  long index = 0;
  for (size_t p = 0; p < dims.size(); ++p) index = index * dims[p] + digits[p];
  return index;
}

long total_dim(const std::vector<int>& dims) {
  long d = 1;
  for (int x : dims) {
    require(x >= 1, "layout dims must be positive");
    d *= x;
  }
  return d;
}

}  // namespace

Vec tensor_product(const std::vector<Vec>& factors) {
  require(!factors.empty(), "tensor_product: empty factor list");
  Vec out = Vec::Ones(1);
  for (const Vec& f : factors) {
    require(f.size() > 0 && f.norm() > 0.0, "tensor_product: zero factor");
    Vec next(out.size() * f.size());
    for (long i = 0; i < out.size(); ++i)
      for (long j = 0; j < f.size(); ++j) next(i * f.size() + j) = out(i) * f(j);
    out.swap(next);
  }
  return out;
}

int span_dimension(const std::vector<Vec>& vectors, double tol) {
  if (vectors.empty()) return 0;
  const long dim = vectors[0].size();
  for (const Vec& v : vectors)
    require(v.size() == dim, "span_dimension: mismatched dimensions");
  Mat A(vectors.size(), dim);
  for (size_t i = 0; i < vectors.size(); ++i) A.row(i) = vectors[i].transpose();
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

std::optional<Vec> orthogonal_complement_sample(const std::vector<Vec>& vectors,
                                                int dim, double tol) {
  require(dim >= 1, "orthogonal_complement_sample: dim must be positive");
  if (vectors.empty()) {
    Vec e = Vec::Zero(dim);
    e(dim - 1) = 1.0;
    return e;
  }
  for (const Vec& v : vectors)
    require(v.size() == dim, "orthogonal_complement_sample: wrong dimension");
  Mat A(vectors.size(), dim);
  for (size_t i = 0; i < vectors.size(); ++i) A.row(i) = vectors[i].adjoint();
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  if (rank >= dim) return std::nullopt;
  Vec w = svd.matrixV().col(dim - 1);
  return normalize_phase(w / w.norm());
}

Eigensystem hermitian_eigensystem(const Mat& M) {
  require(M.rows() == M.cols(), "hermitian_eigensystem: matrix not square");
  const double dev = (M - M.adjoint()).cwiseAbs().maxCoeff();
  require(dev <= 1e-12, "hermitian_eigensystem: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es((M + M.adjoint()) / 2.0);
  require(es.info() == Eigen::Success, "hermitian_eigensystem: solver failed");
  const long n = M.rows();
  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n);
  for (long i = 0; i < n; ++i) {  // Eigen sorts ascending; we want descending
    out.values[i] = es.eigenvalues()(n - 1 - i);
    out.vectors[i] = normalize_phase(es.eigenvectors().col(n - 1 - i));
  }
  return out;
}

Mat partial_transpose(const Mat& M, const std::vector<int>& dims,
                      const std::vector<int>& block) {
  const long D = total_dim(dims);
  require(M.rows() == D && M.cols() == D,
          "partial_transpose: layout does not match matrix");
  std::vector<bool> flip(dims.size(), false);
  for (int p : block) {
    require(p >= 0 && p < static_cast<int>(dims.size()),
            "partial_transpose: party index out of range");
    require(!flip[p], "partial_transpose: duplicate party in block");
    flip[p] = true;
  }
  Mat out(D, D);
  for (long r = 0; r < D; ++r) {
    std::vector<int> rd = decode(r, dims);
    for (long c = 0; c < D; ++c) {
      std::vector<int> cd = decode(c, dims);
      std::vector<int> nr = rd, nc = cd;
      for (size_t p = 0; p < dims.size(); ++p)
        if (flip[p]) std::swap(nr[p], nc[p]);
      out(encode(nr, dims), encode(nc, dims)) = M(r, c);
    }
  }
  return out;
}

Mat partial_trace(const Mat& M, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  const long D = total_dim(dims);
  require(M.rows() == D && M.cols() == D,
          "partial_trace: layout does not match matrix");
  std::vector<bool> kept(dims.size(), false);
  long dkeep = 1;
  for (int p : keep) {
    require(p >= 0 && p < static_cast<int>(dims.size()),
            "partial_trace: party index out of range");
    require(!kept[p], "partial_trace: duplicate party");
    kept[p] = true;
    dkeep *= dims[p];
  }
  Mat out = Mat::Zero(dkeep, dkeep);
  for (long r = 0; r < D; ++r) {
    std::vector<int> rd = decode(r, dims);
    for (long c = 0; c < D; ++c) {
      std::vector<int> cd = decode(c, dims);
      bool diag = true;
      for (size_t p = 0; p < dims.size(); ++p)
        if (!kept[p] && rd[p] != cd[p]) { diag = false; break; }
      if (!diag) continue;
      long rk = 0, ck = 0;
      for (int p : keep) {
        rk = rk * dims[p] + rd[p];
        ck = ck * dims[p] + cd[p];
      }
      out(rk, ck) += M(r, c);
    }
  }
  return out;
}

Mat permute_party_operator(const Mat& M, const std::vector<int>& dims,
                           const std::vector<int>& order) {
  const long D = total_dim(dims);
  require(M.rows() == D && M.cols() == D,
          "permute_party_operator: layout does not match matrix");
  require(order.size() == dims.size(),
          "permute_party_operator: order has wrong length");
  std::vector<bool> seen(dims.size(), false);
  std::vector<int> new_dims(dims.size());
  for (size_t j = 0; j < order.size(); ++j) {
    const int p = order[j];
    require(p >= 0 && p < static_cast<int>(dims.size()) && !seen[p],
            "permute_party_operator: order is not a permutation");
    seen[p] = true;
    new_dims[j] = dims[p];
  }
  std::vector<long> map(D);
  for (long i = 0; i < D; ++i) {
    std::vector<int> nd = decode(i, new_dims);
    std::vector<int> od(dims.size());
    for (size_t j = 0; j < order.size(); ++j) od[order[j]] = nd[j];
    map[i] = encode(od, dims);
  }
  Mat out(D, D);
  for (long r = 0; r < D; ++r)
    for (long c = 0; c < D; ++c) out(r, c) = M(map[r], map[c]);
  return out;
}

Mat reduced_contraction(const Mat& rho, const std::vector<int>& dims,
                        const std::vector<std::optional<Vec>>& fixed,
                        int free_party) {
  const long D = total_dim(dims);
  require(rho.rows() == D && rho.cols() == D,
          "reduced_contraction: layout does not match matrix");
  require(free_party >= 0 && free_party < static_cast<int>(dims.size()),
          "reduced_contraction: free party out of range");
  require(fixed.size() == dims.size(),
          "reduced_contraction: fixed table has wrong length");
  for (size_t p = 0; p < dims.size(); ++p) {
    if (static_cast<int>(p) == free_party) continue;
    require(fixed[p].has_value() && fixed[p]->size() == dims[p],
            "reduced_contraction: missing or mis-sized fixed ket");
  }
  const int df = dims[free_party];
  Mat out = Mat::Zero(df, df);
  for (long r = 0; r < D; ++r) {
    std::vector<int> rd = decode(r, dims);
    cxd wr = 1.0;
    for (size_t p = 0; p < dims.size(); ++p)
      if (static_cast<int>(p) != free_party) wr *= std::conj((*fixed[p])(rd[p]));
    if (wr == cxd(0.0, 0.0)) continue;
    for (long c = 0; c < D; ++c) {
      std::vector<int> cd = decode(c, dims);
      cxd wc = 1.0;
      for (size_t p = 0; p < dims.size(); ++p)
        if (static_cast<int>(p) != free_party) wc *= (*fixed[p])(cd[p]);
      out(rd[free_party], cd[free_party]) += wr * rho(r, c) * wc;
    }
  }
  return out;
}

Vec normalize_phase(const Vec& v) {
  for (long i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > 1e-14) return v * (std::conj(v(i)) / m);
  }
  return v;
}

bool projectively_equal(const Vec& a, const Vec& b, double tol) {
  if (a.size() != b.size()) return false;
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return na == nb;
  Vec pa = normalize_phase(a / na), pb = normalize_phase(b / nb);
  return (pa - pb).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace upb
