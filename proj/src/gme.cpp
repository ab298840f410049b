#include "upb/gme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace upb {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// A partition viewed against a concrete layout: original party indices in
// block order, plus the merged block dimensions and labels.
struct MergedView {
  std::vector<int> order;
  std::vector<int> dims;
  std::vector<std::string> labels;
};

MergedView merged_view(const PartyLayout& layout,
                       const CoarsePartition& partition) {
  std::vector<char> seen(layout.dims.size(), 0);
  MergedView mv;
  for (const std::vector<std::string>& block : partition.blocks) {
    require(!block.empty(), "partition has an empty block");
    int d = 1;
    std::string lab;
    for (const std::string& l : block) {
      const int p = layout.party_index(l);
      require(!seen[p], "partition repeats party " + l);
      seen[p] = 1;
      mv.order.push_back(p);
      d *= layout.dims[p];
      lab += l;
    }
    mv.dims.push_back(d);
    mv.labels.push_back(lab);
  }
  for (std::size_t p = 0; p < seen.size(); ++p)
    require(seen[p] != 0, "partition does not cover party " + layout.labels[p]);
  return mv;
}

bool lex_greater(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double d = a(i).real() - b(i).real();
    if (std::abs(d) > 1e-12) return d > 0;
  }
  return false;
}

}  // namespace

ProductVector product_state(const OptimizationPoint& point) {
  std::vector<Vec> comps;
  comps.reserve(4);
  for (int j = 0; j < 4; ++j) {
    Vec v(2);
    v << cxd(std::cos(point.nu[j]), 0.0),
        std::exp(cxd(0.0, point.mu[j])) * std::sin(point.nu[j]);
    comps.push_back(v);
  }
  return make_product_vector(comps);
}

double overlap(const DensityMatrix& rho, const ProductVector& state) {
  require(state.components.size() == rho.layout.dims.size(),
          "state has the wrong number of components for this layout");
  for (std::size_t p = 0; p < state.components.size(); ++p)
    require(state.components[p].size() == rho.layout.dims[p],
            "component " + std::to_string(p) + " has the wrong dimension");
  const Vec v = state.full();
  const double n2 = v.squaredNorm();
  require(n2 > 0.0, "state has zero norm");
  return v.dot(rho.op * v).real() / n2;
}

double overlap_on(const DensityMatrix& rho, const CoarsePartition& partition,
                  const ProductVector& state) {
  const MergedView mv = merged_view(rho.layout, partition);
  require(state.components.size() == mv.dims.size(),
          "state has the wrong number of block components");
  for (std::size_t t = 0; t < mv.dims.size(); ++t)
    require(state.components[t].size() == mv.dims[t],
            "block component " + std::to_string(t) + " has the wrong dimension");
  const Mat rp = permute_party_operator(rho.op, rho.layout.dims, mv.order);
  const Vec v = state.full();
  const double n2 = v.squaredNorm();
  require(n2 > 0.0, "state has zero norm");
  return v.dot(rp * v).real() / n2;
}

double general_g(const AngleAssignment& angles,
                 const OptimizationPoint& point) {
  const double theta[4] = {angles.alpha, angles.beta, angles.gamma,
                           angles.delta};
  double A[4], s2[4], c2[4];
  for (int j = 0; j < 4; ++j) {
    require(theta[j] > 0.0 && theta[j] < M_PI / 2,
            "angles must lie strictly inside (0, pi/2)");
    const double st = std::sin(theta[j]), ct = std::cos(theta[j]);
    const double cv = std::cos(point.nu[j]), sv = std::sin(point.nu[j]);
    A[j] = st * st * cv * cv + ct * ct * sv * sv -
           2.0 * std::cos(point.mu[j]) * st * cv * ct * sv;
    s2[j] = sv * sv;
    c2[j] = cv * cv;
  }
  const double B1 = c2[1] * c2[2] * c2[3] + s2[1] * s2[2] * s2[3];
  const double B2 = s2[0] * s2[2] * c2[3] + c2[0] * c2[2] * s2[3];
  const double B3 = s2[0] * c2[1] * s2[3] + c2[0] * s2[1] * c2[3];
  const double B4 = s2[0] * s2[1] * c2[2] + c2[0] * c2[1] * s2[2];
  return (A[0] * B1 + A[1] * B2 + A[2] * B3 + A[3] * B4 -
          A[0] * A[1] * A[2] * A[3]) /
         7.0;
}

double symmetric_h(double l1, double l2, double l3, double l4) {
  const double l[4] = {l1, l2, l3, l4};
  double f[4], s2[4], c2[4];
  for (int j = 0; j < 4; ++j) {
    f[j] = 0.5 - 0.5 * std::sin(2.0 * l[j]);
    const double s = std::sin(l[j]), c = std::cos(l[j]);
    s2[j] = s * s;
    c2[j] = c * c;
  }
  const double g1 = c2[1] * c2[2] * c2[3] + s2[1] * s2[2] * s2[3];
  const double g2 = s2[0] * s2[2] * c2[3] + c2[0] * c2[2] * s2[3];
  const double g3 = s2[0] * s2[3] * c2[1] + c2[0] * c2[3] * s2[1];
  const double g4 = s2[0] * s2[1] * c2[2] + c2[0] * c2[1] * s2[2];
  return (f[0] * g1 + f[1] * g2 + f[2] * g3 + f[3] * g4 -
          f[0] * f[1] * f[2] * f[3]) /
         7.0;
}

double symmetric_grid_max(double step) {
  require(step > 0.0, "step must be positive");
  std::vector<double> pts;
  for (int i = 0;; ++i) {
    const double l = -M_PI / 2 + i * step;
    if (l > M_PI / 2 + 1e-12) break;
    pts.push_back(l);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double l1 : pts)
    for (double l2 : pts) best = std::max(best, symmetric_h(l1, l2, l2, l2));
  return best;
}

GmeResult seesaw_maximize(const DensityMatrix& rho,
                          const CoarsePartition& partition, int restarts,
                          int max_iters, double tol, std::uint64_t seed) {
  require(restarts >= 1, "need at least one restart");
  require(max_iters >= 1, "need at least one iteration");
  require(tol >= 0.0, "tolerance must be nonnegative");
  {
    const Eigensystem es = hermitian_eigensystem(rho.op);
    require(es.values.back() >= -1e-10,
            "operator is not positive semidefinite");
  }
  const MergedView mv = merged_view(rho.layout, partition);
  const Mat rp = permute_party_operator(rho.op, rho.layout.dims, mv.order);
  const int k = static_cast<int>(mv.dims.size());

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  auto gaussian = [&]() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * uniform());
  };

  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<Vec> best_states;
  int best_iters = 0;

  for (int r = 0; r < restarts; ++r) {
    std::vector<Vec> states;
    states.reserve(k);
    for (int t = 0; t < k; ++t) {
      Vec v(mv.dims[t]);
      double n = 0.0;
      do {
        for (int i = 0; i < mv.dims[t]; ++i) v(i) = cxd(gaussian(), gaussian());
        n = v.norm();
      } while (n == 0.0);
      states.push_back(v / n);
    }
    Vec w = tensor_product(states);
    double prev = w.dot(rp * w).real();
    int iters = max_iters;
    for (int it = 1; it <= max_iters; ++it) {
      const double sweep_start = prev;
      for (int t = 0; t < k; ++t) {
        std::vector<std::optional<Vec>> fixed(k);
        for (int u = 0; u < k; ++u)
          if (u != t) fixed[u] = states[u];
        const Eigensystem es =
            hermitian_eigensystem(reduced_contraction(rp, mv.dims, fixed, t));
        int pick = 0;
        for (int j = 1; j < static_cast<int>(es.values.size()) &&
                        es.values[j] >= es.values[0] - 1e-12;
             ++j)
          if (lex_greater(es.vectors[j], es.vectors[pick])) pick = j;
        states[t] = es.vectors[pick];
        const double cur = es.values[pick];
        if (cur < prev - 1e-12)
          throw std::runtime_error("see-saw overlap decreased during a sweep");
        prev = cur;
      }
      if (prev - sweep_start < tol) {
        iters = it;
        break;
      }
    }
    if (prev > best_val) {
      best_val = prev;
      best_states = states;
      best_iters = iters;
    }
  }

  GmeResult out;
  out.max_overlap = best_val;
  out.G = best_val > 0.0 ? -std::log2(best_val)
                         : std::numeric_limits<double>::infinity();
  out.argmax = ProductVector{best_states};
  out.layout = make_layout(mv.dims, mv.labels);
  out.restarts_used = restarts;
  out.converged_iterations = best_iters;
  return out;
}

double grid_oracle(const DensityMatrix& rho, const CoarsePartition& partition,
                   int steps_per_variable) {
  require(steps_per_variable >= 2, "need at least two grid points per variable");
  const MergedView mv = merged_view(rho.layout, partition);
  double total = 1.0;
  for (int d : mv.dims)
    total *= std::pow(static_cast<double>(steps_per_variable), d - 1);
  require(total <= 1e8, "grid would exceed 1e8 points");
  const Mat rp = permute_party_operator(rho.op, rho.layout.dims, mv.order);
  const int k = static_cast<int>(mv.dims.size());

  // real unit vectors per block: hyperspherical angles, the first d-2 of
  // them over [0, pi], the last over [0, 2pi)
  std::vector<std::vector<Vec>> grids(k);
  for (int t = 0; t < k; ++t) {
    const int d = mv.dims[t];
    const int vars = d - 1;
    if (vars == 0) {
      Vec v(1);
      v(0) = 1.0;
      grids[t] = {v};
      continue;
    }
    std::vector<int> counter(vars, 0);
    while (true) {
      Vec v(d);
      double sines = 1.0;
      for (int i = 0; i < vars; ++i) {
        const double ang = (i + 1 < vars)
                               ? counter[i] * M_PI / (steps_per_variable - 1)
                               : counter[i] * 2.0 * M_PI / steps_per_variable;
        v(i) = sines * std::cos(ang);
        sines *= std::sin(ang);
      }
      v(d - 1) = sines;
      grids[t].push_back(v);
      int i = vars - 1;
      while (i >= 0 && ++counter[i] == steps_per_variable) {
        counter[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }

  // sweep the grids of all blocks but the last; the last block is contracted
  // to a small operator and scanned directly
  std::vector<int> counter(k - 1, 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::optional<Vec>> fixed(k);
    for (int t = 0; t + 1 < k; ++t) fixed[t] = grids[t][counter[t]];
    const Mat M = reduced_contraction(rp, mv.dims, fixed, k - 1);
    for (const Vec& v : grids[k - 1]) {
      const double val = v.dot(M * v).real();
      if (val > best) best = val;
    }
    int i = k - 2;
    while (i >= 0 && ++counter[i] == static_cast<int>(grids[i].size())) {
      counter[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return best;
}

bool monotonicity_check(const DensityMatrix& rho,
                        const std::vector<CoarsePartition>& chain,
                        int restarts, std::uint64_t seed,
                        std::vector<double>* g_out) {
  require(!chain.empty(), "partition chain is empty");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    for (const std::vector<std::string>& fine : chain[i].blocks) {
      bool contained = false;
      for (const std::vector<std::string>& coarse : chain[i + 1].blocks) {
        bool all = true;
        for (const std::string& l : fine)
          if (std::find(coarse.begin(), coarse.end(), l) == coarse.end()) {
            all = false;
            break;
          }
        if (all) {
          contained = true;
          break;
        }
      }
      require(contained, "chain entry " + std::to_string(i + 1) +
                             " does not coarsen entry " + std::to_string(i));
    }
  }
  std::vector<double> gs;
  gs.reserve(chain.size());
  for (const CoarsePartition& p : chain)
    gs.push_back(seesaw_maximize(rho, p, restarts, 500, 1e-12, seed).G);
  if (g_out) *g_out = gs;
  for (std::size_t i = 0; i + 1 < gs.size(); ++i)
    if (gs[i + 1] > gs[i] + 1e-6) return false;
  return true;
}

}  // namespace upb
