#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "upb/basis.hpp"
#include "upb/catalog.hpp"
#include "upb/uom.hpp"

using namespace upb;
using Catch::Matchers::WithinAbs;

namespace {

Vec qubit(double theta) {
  Vec v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

double witness_residual(const ProductBasis& basis, const ProductVector& w) {
  double worst = 0.0;
  const Vec wf = w.full();
  for (const ProductVector& m : basis.members)
    worst = std::max(worst, std::abs(wf.dot(m.full())));
  return worst;
}

// Exhaustive reference for two qubits: a product vector orthogonal to every
// member exists iff the members can be split so each party's share spans at
// most one direction.
bool extendible_by_enumeration(const ProductBasis& basis) {
  const int s = static_cast<int>(basis.members.size());
  for (int mask = 0; mask < (1 << s); ++mask) {
    bool ok = true;
    for (int p = 0; p < 2 && ok; ++p) {
      std::vector<Vec> share;
      for (int i = 0; i < s; ++i)
        if (((mask >> i) & 1) == p) share.push_back(basis.members[i].components[p]);
      if (span_dimension(share) > 1) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

Mat haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = cxd(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(G);
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    cxd d = R(j, j);
    Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

}  // namespace

TEST_CASE("party layout", "[basis]") {
  const PartyLayout layout = make_layout({2, 2, 4}, {"A", "B", "C"});
  REQUIRE(layout.total_dim() == 16);
  REQUIRE(layout.party_index("B") == 1);
  REQUIRE_THROWS_AS(layout.party_index("X"), std::invalid_argument);

  SECTION("defaults and validation") {
    REQUIRE_THROWS_AS(make_layout({2, 0}, {"A", "B"}), std::invalid_argument);
    REQUIRE_THROWS_AS(make_layout({2, 2}, {"A"}), std::invalid_argument);
    REQUIRE_THROWS_AS(make_layout({2, 2}, {"A", "A"}), std::invalid_argument);
  }
}

TEST_CASE("product vectors", "[basis]") {
  Vec a(2), b(3);
  a << 3.0, 4.0;
  b << 0.0, cxd(0.0, 2.0), 0.0;
  const ProductVector v = make_product_vector({a, b});
  REQUIRE_THAT(v.components[0].norm(), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(v.components[1].norm(), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(v.full().norm(), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(std::abs(v.full()(1) - cxd(0.0, 0.6)), WithinAbs(0.0, 1e-14));

  REQUIRE_THROWS_AS(make_product_vector({}), std::invalid_argument);
  REQUIRE_THROWS_AS(make_product_vector({a, Vec::Zero(3)}),
                    std::invalid_argument);
}

TEST_CASE("pairwise orthogonality report", "[basis]") {
  const ProductBasis basis = instantiate(builtin("size6").uom, generic_angles());
  const OrthogonalityReport rep = check_pairwise_orthogonality(basis);
  REQUIRE(rep.orthogonal);
  REQUIRE_THAT(rep.max_overlap, WithinAbs(0.0, 1e-12));

  SECTION("a broken pair is located") {
    ProductBasis bad = basis;
    bad.members[3] = bad.members[0];
    const OrthogonalityReport r = check_pairwise_orthogonality(bad);
    REQUIRE_FALSE(r.orthogonal);
    REQUIRE(r.worst_i == 0);
    REQUIRE(r.worst_j == 3);
    REQUIRE_THAT(r.max_overlap, WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("unextendibility of the bundled four-party sets", "[basis]") {
  for (const std::string& name : {"size6", "size7", "size9-11th"}) {
    ProductBasis basis = instantiate(builtin(name).uom, generic_angles());
    const ExtendibilityVerdict v = check_unextendible(basis);
    INFO(name);
    REQUIRE(v.unextendible);
    REQUIRE_FALSE(v.witness.has_value());

    // dropping any single member opens a hole, and the witness certifies it
    for (std::size_t drop = 0; drop < basis.members.size(); ++drop) {
      ProductBasis smaller = basis;
      smaller.members.erase(smaller.members.begin() + drop);
      const ExtendibilityVerdict sv = check_unextendible(smaller);
      REQUIRE_FALSE(sv.unextendible);
      REQUIRE(sv.witness.has_value());
      REQUIRE(witness_residual(smaller, *sv.witness) < 1e-9);
    }
  }
}

TEST_CASE("assignment witness matches the reported assignment", "[basis]") {
  ProductBasis basis = instantiate(builtin("size6").uom, generic_angles());
  basis.members.pop_back();
  const ExtendibilityVerdict v = check_unextendible(basis);
  REQUIRE_FALSE(v.unextendible);
  REQUIRE(v.assignment.has_value());
  REQUIRE(v.assignment->size() == basis.members.size());

  // each member is orthogonal to the witness already on its assigned party
  for (std::size_t i = 0; i < basis.members.size(); ++i) {
    const int p = (*v.assignment)[i];
    const cxd ip =
        v.witness->components[p].dot(basis.members[i].components[p]);
    REQUIRE_THAT(std::abs(ip), WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("search agrees with exhaustive enumeration on two qubits",
          "[basis]") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  std::uniform_int_distribution<int> size(2, 4);

  const PartyLayout layout = make_layout({2, 2}, {"A", "B"});
  int extendible_seen = 0, unextendible_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    ProductBasis basis;
    basis.layout = layout;
    const int s = size(rng);
    for (int i = 0; i < s; ++i)
      basis.members.push_back(
          make_product_vector({qubit(angle(rng)), qubit(angle(rng))}));

    const ExtendibilityVerdict v = check_unextendible(basis);
    REQUIRE(v.unextendible == !extendible_by_enumeration(basis));
    if (v.unextendible) {
      ++unextendible_seen;
    } else {
      ++extendible_seen;
      REQUIRE(witness_residual(basis, *v.witness) < 1e-9);
    }
  }
  REQUIRE(extendible_seen > 0);
  REQUIRE(unextendible_seen > 0);
}

TEST_CASE("small system shortcut", "[basis]") {
  SECTION("undersized bipartite sets with a qubit factor") {
    for (bool qubit_first : {true, false}) {
      ProductBasis basis;
      basis.layout = qubit_first ? make_layout({2, 4}, {"A", "B"})
                                 : make_layout({4, 2}, {"A", "B"});
      Vec e0 = Vec::Zero(4), e1 = Vec::Zero(4);
      e0(0) = 1.0;
      e1(1) = 1.0;
      const Vec q0 = qubit(0.0), q1 = qubit(M_PI / 2);
      if (qubit_first) {
        basis.members.push_back(make_product_vector({q0, e0}));
        basis.members.push_back(make_product_vector({q1, e1}));
      } else {
        basis.members.push_back(make_product_vector({e0, q0}));
        basis.members.push_back(make_product_vector({e1, q1}));
      }
      const auto v = small_system_shortcut(basis);
      REQUIRE(v.has_value());
      REQUIRE_FALSE(v->unextendible);
      REQUIRE_FALSE(v->witness.has_value());
      // the full search must agree
      REQUIRE_FALSE(check_unextendible(basis).unextendible);
    }
  }

  SECTION("full-size sets and non-qubit layouts are not covered") {
    ProductBasis full;
    full.layout = make_layout({2, 4}, {"A", "B"});
    for (int x = 0; x < 2; ++x)
      for (int k = 0; k < 4; ++k) {
        Vec ek = Vec::Zero(4);
        ek(k) = 1.0;
        full.members.push_back(
            make_product_vector({qubit(x * M_PI / 2), ek}));
      }
    REQUIRE_FALSE(small_system_shortcut(full).has_value());
    REQUIRE(check_unextendible(full).unextendible);

    const ProductBasis fourparty =
        instantiate(builtin("size6").uom, generic_angles());
    REQUIRE_FALSE(small_system_shortcut(fourparty).has_value());
  }
}

TEST_CASE("verdicts are invariant under local moves", "[basis]") {
  std::mt19937_64 rng(777);
  const ProductBasis upb = instantiate(builtin("size7").uom, generic_angles());
  ProductBasis extendible = upb;
  extendible.members.pop_back();

  for (const ProductBasis* start :
       std::initializer_list<const ProductBasis*>{&upb, &extendible}) {
    const bool expect = check_unextendible(*start).unextendible;

    SECTION(expect ? "unextendible input" : "extendible input") {
      ProductBasis permuted = permute_parties(*start, {2, 0, 3, 1});
      REQUIRE(check_unextendible(permuted).unextendible == expect);

      std::vector<Mat> U;
      for (int p = 0; p < 4; ++p) U.push_back(haar_unitary(2, rng));
      ProductBasis rotated = apply_local_unitaries(*start, U);
      REQUIRE(check_unextendible(rotated).unextendible == expect);
    }
  }

  SECTION("non-unitary matrices are rejected") {
    Mat bad = Mat::Identity(2, 2);
    bad(0, 0) = 2.0;
    REQUIRE_THROWS_AS(
        apply_local_unitaries(upb, {bad, Mat::Identity(2, 2),
                                    Mat::Identity(2, 2), Mat::Identity(2, 2)}),
        std::invalid_argument);
  }
}
