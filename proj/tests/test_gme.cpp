#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "upb/catalog.hpp"
#include "upb/gme.hpp"
#include "upb/ppt_state.hpp"

using namespace upb;
using Catch::Matchers::WithinAbs;

namespace {

const AngleAssignment kQuarter{M_PI / 4, M_PI / 4, M_PI / 4, M_PI / 4};

// the closed-form peak of the product overlap at the equal-angle point
const double kPeak = 3.0 * std::sqrt(6.0) / 56.0;

}  // namespace

TEST_CASE("product states from optimization points", "[gme]") {
  OptimizationPoint p;
  p.mu = {0.0, M_PI / 2, M_PI, 0.0};
  p.nu = {0.0, M_PI / 4, M_PI / 2, 1.0};
  const ProductVector v = product_state(p);

  REQUIRE(v.components.size() == 4);
  REQUIRE_THAT(std::abs(v.components[0](0) - 1.0), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(v.components[1](1) - cxd(0.0, 1.0 / std::sqrt(2.0))),
               WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(v.components[2](0)), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(v.components[2](1) + 1.0), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(std::abs(v.components[3](1) - std::sin(1.0)),
               WithinAbs(0.0, 1e-14));
}

TEST_CASE("overlap with a state document", "[gme]") {
  const DensityMatrix rho = build_rho_family(kQuarter);

  OptimizationPoint p;  // all zeros: |0000>
  const double g = overlap(rho, product_state(p));
  REQUIRE_THAT(g, WithinAbs(1.0 / 16.0, 1e-12));

  SECTION("component shape is validated") {
    ProductVector bad = product_state(p);
    bad.components.pop_back();
    REQUIRE_THROWS_AS(overlap(rho, bad), std::invalid_argument);

    ProductVector wide = product_state(p);
    wide.components[1] = Vec::Ones(3).eval();
    REQUIRE_THROWS_AS(overlap(rho, wide), std::invalid_argument);
  }

  SECTION("overlap on merged blocks matches the fine overlap") {
    const CoarsePartition cut = parse_partition("AB|CD", rho.layout);
    const ProductVector fine = product_state(p);
    const ProductVector merged = make_product_vector(
        {tensor_product({fine.components[0], fine.components[1]}),
         tensor_product({fine.components[2], fine.components[3]})});
    REQUIRE_THAT(overlap_on(rho, cut, merged),
                 WithinAbs(overlap(rho, fine), 1e-13));
  }
}

TEST_CASE("closed form of the product overlap", "[gme]") {
  SECTION("the all-zero point at the equal-angle state") {
    OptimizationPoint p;
    REQUIRE_THAT(general_g(kQuarter, p), WithinAbs(1.0 / 16.0, 1e-13));
  }

  SECTION("matches the matrix overlap at random points") {
    std::mt19937_64 rng(1789);
    std::uniform_real_distribution<double> um(0.0, 2 * M_PI);
    std::uniform_real_distribution<double> un(0.0, M_PI / 2);
    std::uniform_real_distribution<double> ua(0.1, M_PI / 2 - 0.1);

    for (int trial = 0; trial < 3; ++trial) {
      const AngleAssignment an =
          trial == 0 ? kQuarter
                     : AngleAssignment{ua(rng), ua(rng), ua(rng), ua(rng)};
      const DensityMatrix rho = build_rho_family(an);
      for (int k = 0; k < 40; ++k) {
        OptimizationPoint p;
        for (int j = 0; j < 4; ++j) {
          p.mu[j] = um(rng);
          p.nu[j] = un(rng);
        }
        REQUIRE_THAT(general_g(an, p),
                     WithinAbs(overlap(rho, product_state(p)), 1e-10));
      }
    }
  }

  SECTION("family angles must stay inside the open quadrant") {
    OptimizationPoint p;
    REQUIRE_THROWS_AS(general_g({0.0, 0.7, 1.1, 0.4}, p),
                      std::invalid_argument);
  }
}

TEST_CASE("symmetric slice of the equal-angle overlap", "[gme]") {
  SECTION("known values on the two branches") {
    REQUIRE_THAT(symmetric_h(M_PI / 4, 0.0, 0.0, 0.0),
                 WithinAbs(0.0, 1e-13));

    const double inner = 0.5 * std::asin(2.0 / 3.0);
    REQUIRE_THAT(symmetric_h(M_PI / 4, inner, inner, inner),
                 WithinAbs(1.0 / 126.0, 1e-12));

    const double outer = 0.5 * std::asin((std::sqrt(6.0) - 2.0) / 2.0);
    REQUIRE_THAT(symmetric_h(-M_PI / 4, outer, outer, outer),
                 WithinAbs(kPeak, 1e-12));
  }

  SECTION("slice maximum approaches the peak on a finer grid") {
    const double coarse = symmetric_grid_max(M_PI / 36);
    const double fine = symmetric_grid_max(M_PI / 360);
    REQUIRE(coarse <= fine + 1e-15);
    REQUIRE(fine <= kPeak + 1e-12);
    REQUIRE_THAT(fine, WithinAbs(kPeak, 1e-4));
  }

  SECTION("the slice never exceeds the global maximum") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ul(-M_PI / 2, M_PI / 2);
    for (int k = 0; k < 200; ++k) {
      const double h = symmetric_h(ul(rng), ul(rng), ul(rng), ul(rng));
      REQUIRE(h <= kPeak + 1e-12);
    }
  }
}

TEST_CASE("see-saw maximization", "[gme]") {
  const DensityMatrix rho = build_rho_family(kQuarter);
  const CoarsePartition full = parse_partition("A|B|C|D", rho.layout);

  const GmeResult res = seesaw_maximize(rho, full, 32, 500, 1e-12, 2024);
  REQUIRE_THAT(res.max_overlap, WithinAbs(kPeak, 1e-6));
  REQUIRE_THAT(res.G, WithinAbs(-std::log2(kPeak), 1e-4));
  REQUIRE(res.restarts_used == 32);
  REQUIRE(res.converged_iterations >= 1);

  SECTION("argmax reproduces the reported overlap") {
    REQUIRE(res.layout.dims == std::vector<int>{2, 2, 2, 2});
    REQUIRE_THAT(overlap_on(rho, full, res.argmax),
                 WithinAbs(res.max_overlap, 1e-12));
  }

  SECTION("same seed, same bits") {
    const GmeResult again = seesaw_maximize(rho, full, 32, 500, 1e-12, 2024);
    REQUIRE(again.max_overlap == res.max_overlap);
    REQUIRE(again.converged_iterations == res.converged_iterations);
    for (int p = 0; p < 4; ++p)
      REQUIRE((again.argmax.components[p] - res.argmax.components[p])
                  .norm() == 0.0);
  }

  SECTION("merged partitions give a larger or equal overlap") {
    const GmeResult merged = seesaw_maximize(
        rho, parse_partition("AB|CD", rho.layout), 32, 500, 1e-12, 2024);
    REQUIRE(merged.layout.dims == std::vector<int>{4, 4});
    REQUIRE(merged.max_overlap >= res.max_overlap - 1e-9);
  }

  SECTION("a pure product state is found exactly") {
    Vec e0(2);
    e0 << 1.0, 0.0;
    const Vec prod = tensor_product({e0, e0});
    DensityMatrix pure{prod * prod.adjoint(),
                       make_layout({2, 2}, {"A", "B"}), "test"};
    const GmeResult r = seesaw_maximize(
        pure, parse_partition("A|B", pure.layout), 4, 100, 1e-12, 9);
    REQUIRE_THAT(r.max_overlap, WithinAbs(1.0, 1e-10));
    REQUIRE_THAT(r.G, WithinAbs(0.0, 1e-9));
  }

  SECTION("input validation") {
    REQUIRE_THROWS_AS(seesaw_maximize(rho, full, 0), std::invalid_argument);

    DensityMatrix notpsd = rho;
    notpsd.op(0, 0) -= 0.5;
    REQUIRE_THROWS_AS(seesaw_maximize(notpsd, full, 4),
                      std::invalid_argument);
  }
}

TEST_CASE("grid oracle", "[gme]") {
  const DensityMatrix rho = build_rho_family(kQuarter);
  const CoarsePartition full = parse_partition("A|B|C|D", rho.layout);

  // the peak configuration is real, so a real grid can approach it
  const double lower = grid_oracle(rho, full, 61);
  REQUIRE(lower <= kPeak + 1e-10);
  REQUIRE_THAT(lower, WithinAbs(kPeak, 5e-3));

  SECTION("a product pure state on two parties") {
    Vec e0(2);
    e0 << 1.0, 0.0;
    const Vec prod = tensor_product({e0, e0});
    DensityMatrix pure{prod * prod.adjoint(),
                       make_layout({2, 2}, {"A", "B"}), "test"};
    const double g =
        grid_oracle(pure, parse_partition("A|B", pure.layout), 41);
    REQUIRE_THAT(g, WithinAbs(1.0, 1e-8));
  }

  SECTION("the point cap is enforced") {
    REQUIRE_THROWS_AS(grid_oracle(rho, full, 500), std::invalid_argument);
    REQUIRE_THROWS_AS(grid_oracle(rho, full, 1), std::invalid_argument);
  }
}

TEST_CASE("monotonicity along coarsening chains", "[gme]") {
  const DensityMatrix rho = build_rho_family(kQuarter);
  std::vector<CoarsePartition> chain{
      parse_partition("A|B|C|D", rho.layout),
      parse_partition("A|B|CD", rho.layout),
      parse_partition("AB|CD", rho.layout)};

  std::vector<double> gs;
  REQUIRE(monotonicity_check(rho, chain, 24, 2024, &gs));
  REQUIRE(gs.size() == 3);
  REQUIRE_THAT(gs[0], WithinAbs(-std::log2(kPeak), 1e-4));
  for (std::size_t i = 0; i + 1 < gs.size(); ++i)
    REQUIRE(gs[i + 1] <= gs[i] + 1e-6);

  SECTION("chains must coarsen step by step") {
    std::vector<CoarsePartition> bad{
        parse_partition("A|B|CD", rho.layout),
        parse_partition("AC|B|D", rho.layout)};
    REQUIRE_THROWS_AS(monotonicity_check(rho, bad, 4, 1),
                      std::invalid_argument);
  }
}
