#include "catch_amalgamated.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>

#include "upb/tensor.hpp"

using namespace upb;
using Catch::Matchers::WithinAbs;

namespace {

Vec ket(std::initializer_list<cxd> amps) {
  Vec v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (cxd a : amps) v(i++) = a;
  return v;
}

Vec e(int dim, int k) {
  Vec v = Vec::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("tensor product ordering", "[tensor]") {
  SECTION("leftmost factor is the slowest index") {
    const Vec v = tensor_product({e(2, 1), e(3, 0), e(2, 1)});
    REQUIRE(v.size() == 12);
    // index = (1*3 + 0)*2 + 1 = 7
    for (Eigen::Index i = 0; i < 12; ++i)
      REQUIRE_THAT(std::abs(v(i)), WithinAbs(i == 7 ? 1.0 : 0.0, 1e-14));
  }

  SECTION("amplitudes multiply") {
    const Vec a = ket({cxd(0.6, 0.0), cxd(0.0, 0.8)});
    const Vec b = ket({cxd(1.0, 0.0), cxd(0.0, -1.0)});
    const Vec v = tensor_product({a, b});
    REQUIRE_THAT(std::abs(v(0) - cxd(0.6, 0.0)), WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(std::abs(v(1) - cxd(0.0, -0.6)), WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(std::abs(v(2) - cxd(0.0, 0.8)), WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(std::abs(v(3) - cxd(0.8, 0.0)), WithinAbs(0.0, 1e-14));
  }

  SECTION("single factor is returned unchanged") {
    const Vec a = ket({cxd(0.0, 1.0), cxd(1.0, 0.0)});
    REQUIRE((tensor_product({a}) - a).norm() < 1e-15);
  }
}

TEST_CASE("span dimension", "[tensor]") {
  REQUIRE(span_dimension({}) == 0);
  REQUIRE(span_dimension({e(3, 0)}) == 1);
  REQUIRE(span_dimension({e(3, 0), e(3, 0)}) == 1);
  REQUIRE(span_dimension({e(3, 0), e(3, 1)}) == 2);

  const Vec sum = (e(3, 0) + e(3, 1)).normalized();
  REQUIRE(span_dimension({e(3, 0), e(3, 1), sum}) == 2);
  REQUIRE(span_dimension({e(3, 0), e(3, 1), e(3, 2), sum}) == 3);

  SECTION("tolerance is relative to the largest direction") {
    const Vec tiny = e(3, 0) + 1e-12 * e(3, 1);
    REQUIRE(span_dimension({e(3, 0), tiny}) == 1);
    REQUIRE(span_dimension({e(3, 0), tiny}, 1e-14) == 2);
  }
}

TEST_CASE("orthogonal complement sample", "[tensor]") {
  SECTION("complement of a partial span") {
    const auto w = orthogonal_complement_sample({e(3, 0), e(3, 2)}, 3);
    REQUIRE(w.has_value());
    REQUIRE_THAT(w->norm(), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(std::abs(w->dot(e(3, 0))), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(std::abs(w->dot(e(3, 2))), WithinAbs(0.0, 1e-12));
  }

  SECTION("full span has no complement") {
    REQUIRE_FALSE(
        orthogonal_complement_sample({e(2, 0), e(2, 1)}, 2).has_value());
  }

  SECTION("empty input yields the last basis vector") {
    const auto w = orthogonal_complement_sample({}, 4);
    REQUIRE(w.has_value());
    REQUIRE(projectively_equal(*w, e(4, 3)));
  }

  SECTION("deterministic") {
    const auto w1 = orthogonal_complement_sample({e(3, 1)}, 3);
    const auto w2 = orthogonal_complement_sample({e(3, 1)}, 3);
    REQUIRE((*w1 - *w2).norm() < 1e-15);
  }
}

TEST_CASE("hermitian eigensystem", "[tensor]") {
  Mat M(2, 2);
  M << cxd(1.0, 0.0), cxd(0.0, -1.0), cxd(0.0, 1.0), cxd(1.0, 0.0);

  const Eigensystem es = hermitian_eigensystem(M);
  REQUIRE(es.values.size() == 2);
  REQUIRE_THAT(es.values[0], WithinAbs(2.0, 1e-12));
  REQUIRE_THAT(es.values[1], WithinAbs(0.0, 1e-12));
  REQUIRE(std::abs((M * es.vectors[0] - 2.0 * es.vectors[0]).norm()) < 1e-12);
  REQUIRE_THAT(std::abs(es.vectors[0].dot(es.vectors[1])),
               WithinAbs(0.0, 1e-12));

  SECTION("rejects non-hermitian input") {
    Mat bad(2, 2);
    bad << 1.0, 2.0, 3.0, 4.0;
    REQUIRE_THROWS_AS(hermitian_eigensystem(bad), std::invalid_argument);
  }
}

TEST_CASE("partial transpose", "[tensor]") {
  const std::vector<int> dims{2, 2};

  // maximally entangled pair: the partial transpose has eigenvalue -1/2
  Vec bell = (tensor_product({e(2, 0), e(2, 0)}) +
              tensor_product({e(2, 1), e(2, 1)})) /
             std::sqrt(2.0);
  const Mat rho = bell * bell.adjoint();
  const Mat pt = partial_transpose(rho, dims, {0});

  const Eigensystem es = hermitian_eigensystem(pt);
  REQUIRE_THAT(es.values.back(), WithinAbs(-0.5, 1e-12));

  SECTION("transposing both parties is a full transpose") {
    const Mat both = partial_transpose(rho, dims, {0, 1});
    REQUIRE((both - rho.transpose()).norm() < 1e-14);
  }

  SECTION("involution") {
    const Mat twice = partial_transpose(pt, dims, {0});
    REQUIRE((twice - rho).norm() < 1e-14);
  }

  SECTION("product operators transpose factor-wise") {
    Mat A(2, 2), B(2, 2);
    A << cxd(1, 0), cxd(2, 1), cxd(0, 3), cxd(4, 0);
    B << cxd(0, 1), cxd(5, 0), cxd(2, 2), cxd(1, -1);
    const Mat kron = Eigen::kroneckerProduct(A, B).eval();
    const Mat expect = Eigen::kroneckerProduct(A.transpose().eval(), B).eval();
    REQUIRE((partial_transpose(kron, dims, {0}) - expect).norm() < 1e-13);
  }
}

TEST_CASE("partial trace", "[tensor]") {
  Mat A(2, 2), B(3, 3);
  A << cxd(1, 0), cxd(0, 2), cxd(0, -2), cxd(3, 0);
  B << cxd(2, 0), cxd(1, 1), cxd(0, 0), cxd(1, -1), cxd(1, 0), cxd(0, 1),
      cxd(0, 0), cxd(0, -1), cxd(4, 0);
  const Mat kron = Eigen::kroneckerProduct(A, B).eval();

  const Mat ra = partial_trace(kron, {2, 3}, {0});
  REQUIRE((ra - B.trace() * A).norm() < 1e-12);
  const Mat rb = partial_trace(kron, {2, 3}, {1});
  REQUIRE((rb - A.trace() * B).norm() < 1e-12);

  SECTION("trace is preserved") {
    REQUIRE_THAT(std::abs(ra.trace() - kron.trace()), WithinAbs(0.0, 1e-12));
  }

  SECTION("keeping everything is the identity map") {
    REQUIRE((partial_trace(kron, {2, 3}, {0, 1}) - kron).norm() < 1e-13);
  }

  SECTION("middle party of three") {
    const Vec v =
        tensor_product({e(2, 1), ket({cxd(0.6, 0), cxd(0.8, 0)}), e(2, 0)});
    const Mat r = partial_trace(v * v.adjoint(), {2, 2, 2}, {1});
    Mat expect(2, 2);
    expect << 0.36, 0.48, 0.48, 0.64;
    REQUIRE((r - expect).norm() < 1e-12);
  }
}

TEST_CASE("party permutation of operators", "[tensor]") {
  Mat A(2, 2), B(3, 3);
  A << cxd(1, 0), cxd(0, 2), cxd(0, -2), cxd(3, 0);
  B << cxd(2, 0), cxd(1, 1), cxd(0, 0), cxd(1, -1), cxd(1, 0), cxd(0, 1),
      cxd(0, 0), cxd(0, -1), cxd(4, 0);
  const Mat ab = Eigen::kroneckerProduct(A, B).eval();
  const Mat ba = Eigen::kroneckerProduct(B, A).eval();

  // new party 0 is old party 1
  REQUIRE((permute_party_operator(ab, {2, 3}, {1, 0}) - ba).norm() < 1e-12);

  SECTION("identity permutation") {
    REQUIRE((permute_party_operator(ab, {2, 3}, {0, 1}) - ab).norm() < 1e-13);
  }

  SECTION("three parties, cyclic") {
    Mat C(2, 2);
    C << cxd(0, 0), cxd(1, 0), cxd(1, 0), cxd(0, 0);
    const Mat abc =
        Eigen::kroneckerProduct(A, Eigen::kroneckerProduct(B, C).eval())
            .eval();
    const Mat cab =
        Eigen::kroneckerProduct(C, Eigen::kroneckerProduct(A, B).eval())
            .eval();
    REQUIRE((permute_party_operator(abc, {2, 3, 2}, {2, 0, 1}) - cab).norm() <
            1e-12);
  }
}

TEST_CASE("reduced contraction", "[tensor]") {
  const Vec a = ket({cxd(0.6, 0), cxd(0, 0.8)});
  const Vec b = ket({cxd(1, 0), cxd(1, 0)}).normalized();
  const Vec c = ket({cxd(0, 1), cxd(0, 0)});

  const Vec full = tensor_product({a, b, c});
  const Mat rho = full * full.adjoint();

  std::vector<std::optional<Vec>> fixed{a, std::nullopt, c};
  const Mat M = reduced_contraction(rho, {2, 2, 2}, fixed, 1);
  REQUIRE(M.rows() == 2);

  // sandwich identity: <w|M|w> = <a,w,c|rho|a,w,c>
  const Vec w = ket({cxd(0.28, 0.1), cxd(-0.5, 0.4)}).normalized();
  const Vec swc = tensor_product({a, w, c});
  const cxd lhs = w.dot(M * w);
  const cxd rhs = swc.dot(rho * swc);
  REQUIRE_THAT(std::abs(lhs - rhs), WithinAbs(0.0, 1e-12));

  SECTION("top eigenvector of the contraction maximizes the sandwich") {
    const Eigensystem es = hermitian_eigensystem(M);
    REQUIRE_THAT(es.values[0], WithinAbs(1.0, 1e-12));
    REQUIRE(projectively_equal(es.vectors[0], b, 1e-10));
  }
}

TEST_CASE("phase normalization", "[tensor]") {
  const Vec v = ket({cxd(0, 0), cxd(0, -2)});
  const Vec n = normalize_phase(v);
  REQUIRE_THAT(n(1).real(), WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(n(1).imag(), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(n.norm(), WithinAbs(v.norm(), 1e-14));

  SECTION("projective equality ignores global phase") {
    const Vec a = ket({cxd(0.6, 0), cxd(0.8, 0)});
    const Vec rotated = cxd(std::cos(1.1), std::sin(1.1)) * a;
    REQUIRE(projectively_equal(a, rotated));
    REQUIRE_FALSE(projectively_equal(a, ket({cxd(0.8, 0), cxd(0.6, 0)})));
  }
}
