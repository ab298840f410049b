#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace upb {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Global Kronecker convention: leftmost factor is the slowest index, so a
// 4-party amplitude sits at ((iA*dB + iB)*dC + iC)*dD + iD. Every module
// relies on this; do not reorder.
Vec tensor_product(const std::vector<Vec>& factors);

// Number of singular values above tol * (largest singular value).
// Empty input gives 0. All vectors must share one dimension.
int span_dimension(const std::vector<Vec>& vectors, double tol = 1e-9);

// Unit vector orthogonal to every input, or nullopt when the inputs span the
// whole space. Deterministic: the null-space column of smallest singular
// value, phase-normalized. An empty input yields e_{dim-1}.
std::optional<Vec> orthogonal_complement_sample(const std::vector<Vec>& vectors,
                                                int dim, double tol = 1e-9);

struct Eigensystem {
  std::vector<double> values;  // descending
  std::vector<Vec> vectors;    // orthonormal, matching order
};

// Throws std::invalid_argument unless max|M - M^dag| <= 1e-12.
Eigensystem hermitian_eigensystem(const Mat& M);

// Transpose the tensor factors listed in `block` (party indices into dims).
Mat partial_transpose(const Mat& M, const std::vector<int>& dims,
                      const std::vector<int>& block);

// Trace out every party not listed in `keep` (indices into dims, ascending).
Mat partial_trace(const Mat& M, const std::vector<int>& dims,
                  const std::vector<int>& keep);

// Reorder tensor factors of an operator: new party j is old party order[j].
Mat permute_party_operator(const Mat& M, const std::vector<int>& dims,
                           const std::vector<int>& order);

// Operator on the free party obtained by sandwiching rho with the fixed
// kets on all other parties: <w|result|w> = <fixed (x) w|rho|fixed (x) w>.
// fixed[i] must hold a ket for every party i != free_party.
Mat reduced_contraction(const Mat& rho, const std::vector<int>& dims,
                        const std::vector<std::optional<Vec>>& fixed,
                        int free_party);

// Scale v so its first nonzero amplitude is positive real (norm preserved).
Vec normalize_phase(const Vec& v);

// Equality up to a global scalar, after normalization.
bool projectively_equal(const Vec& a, const Vec& b, double tol = 1e-10);

}  // namespace upb
