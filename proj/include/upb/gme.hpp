#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "upb/basis.hpp"
#include "upb/coarse.hpp"
#include "upb/ppt_state.hpp"

namespace upb {

// Qubit directions |a_j> = [cos nu_j; e^{i mu_j} sin nu_j], mu in [0,2pi],
// nu in [0,pi/2]. The folded coordinate lambda_j = nu_j cos(mu_j) is only
// meaningful when every cos(mu_j) is +-1; the symmetric analysis lives there.
struct OptimizationPoint {
  std::array<double, 4> mu{};
  std::array<double, 4> nu{};
};

// The 4-qubit product state a point describes.
ProductVector product_state(const OptimizationPoint& point);

struct GmeResult {
  double max_overlap = 0.0;
  double G = 0.0;  // ebits, -log2(max_overlap)
  ProductVector argmax;
  PartyLayout layout;  // merged layout the argmax components live on
  int restarts_used = 0;
  int converged_iterations = 0;
};

// <state|rho|state>; the state must carry one component per party of rho's
// own layout.
double overlap(const DensityMatrix& rho, const ProductVector& state);

// Same number for a state whose components live on the partition's merged
// blocks instead.
double overlap_on(const DensityMatrix& rho, const CoarsePartition& partition,
                  const ProductVector& state);

// The explicit five-term closed form of <a1..a4|rho(angles)|a1..a4> for the
// rho family; cross-checked against the matrix overlap in tests.
double general_g(const AngleAssignment& angles, const OptimizationPoint& point);

// The all-pi/4 reduction h = (f1 g1 + f2 g2 + f3 g3 + f4 g4 - f1f2f3f4)/7
// in folded lambda coordinates.
double symmetric_h(double l1, double l2, double l3, double l4);

// Max of symmetric_h over the 2-d slice (lambda_1, lambda_2=lambda_3=
// lambda_4), both variables gridded over [-pi/2, pi/2] with the given step.
double symmetric_grid_max(double step);

// Alternating maximization of the product overlap over the partition's
// blocks: each step replaces the free block's state with the top eigenvector
// of rho contracted against the others. Deterministic for a fixed seed; the
// per-run overlap sequence is checked to be nondecreasing.
GmeResult seesaw_maximize(const DensityMatrix& rho,
                          const CoarsePartition& partition, int restarts = 64,
                          int max_iters = 500, double tol = 1e-12,
                          std::uint64_t seed = 0);

// Brute-force lower bound: real unit vectors per block on a hyperspherical
// grid with steps_per_variable points per angle. Total grid size is capped
// at 1e8 points.
double grid_oracle(const DensityMatrix& rho, const CoarsePartition& partition,
                   int steps_per_variable);

// True iff the computed G values are nonincreasing along the fine-to-coarse
// chain within 1e-6. Each partition must refine into the next; g_out (when
// given) receives the G value per chain entry.
bool monotonicity_check(const DensityMatrix& rho,
                        const std::vector<CoarsePartition>& chain,
                        int restarts = 64, std::uint64_t seed = 0,
                        std::vector<double>* g_out = nullptr);

}  // namespace upb
