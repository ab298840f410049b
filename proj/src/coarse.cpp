#include "upb/coarse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace upb {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::vector<std::vector<int>> block_indices(const CoarsePartition& partition,
                                            const PartyLayout& layout) {
  std::vector<std::vector<int>> out;
  std::vector<bool> used(layout.labels.size(), false);
  for (const auto& block : partition.blocks) {
    require(!block.empty(), "partition: empty block");
    std::vector<int> idx;
    for (const std::string& label : block) {
      const int p = layout.party_index(label);
      require(!used[p], "partition: label used twice: " + label);
      used[p] = true;
      idx.push_back(p);
    }
    out.push_back(std::move(idx));
  }
  for (size_t p = 0; p < used.size(); ++p)
    require(used[p], "partition: label missing: " + layout.labels[p]);
  require(out.size() >= 2, "partition: need at least two blocks");
  return out;
}

}  // namespace

std::string CoarsePartition::str() const {
  std::string s;
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += '|';
    for (const std::string& label : blocks[b]) s += label;
  }
  return s;
}

CoarsePartition make_partition(std::vector<std::vector<std::string>> blocks,
                               const PartyLayout& layout) {
  CoarsePartition p{std::move(blocks)};
  auto idx = block_indices(p, layout);  // validates
  // canonical form: parties inside a block in layout order, blocks by first party
  std::vector<size_t> order(idx.size());
  for (size_t b = 0; b < idx.size(); ++b) {
    std::vector<std::pair<int, std::string>> tagged;
    for (size_t k = 0; k < idx[b].size(); ++k)
      tagged.emplace_back(idx[b][k], p.blocks[b][k]);
    std::sort(tagged.begin(), tagged.end());
    for (size_t k = 0; k < tagged.size(); ++k) {
      idx[b][k] = tagged[k].first;
      p.blocks[b][k] = tagged[k].second;
    }
    order[b] = b;
  }
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return idx[a][0] < idx[b][0]; });
  CoarsePartition canon;
  for (size_t b : order) canon.blocks.push_back(std::move(p.blocks[b]));
  return canon;
}

CoarsePartition parse_partition(const std::string& cut,
                                const PartyLayout& layout) {
  for (const std::string& label : layout.labels)
    require(label.size() == 1, "parse_partition: needs single-char labels");
  std::vector<std::vector<std::string>> blocks(1);
  for (char ch : cut) {
    if (ch == '|') {
      blocks.emplace_back();
      continue;
    }
    blocks.back().push_back(std::string(1, ch));
  }
  return make_partition(std::move(blocks), layout);
}

ProductBasis coarse_grain(const ProductBasis& basis,
                          const CoarsePartition& partition) {
  const CoarsePartition canon = make_partition(partition.blocks, basis.layout);
  const auto idx = block_indices(canon, basis.layout);

  PartyLayout merged;
  for (size_t b = 0; b < idx.size(); ++b) {
    int d = 1;
    std::string label;
    for (int p : idx[b]) {
      d *= basis.layout.dims[p];
      label += basis.layout.labels[p];
    }
    merged.dims.push_back(d);
    merged.labels.push_back(label);
  }

  ProductBasis out{merged, {}};
  out.members.reserve(basis.members.size());
  for (const ProductVector& m : basis.members) {
    std::vector<Vec> comps;
    comps.reserve(idx.size());
    for (const auto& block : idx) {
      std::vector<Vec> factors;
      for (int p : block) factors.push_back(m.components[p]);
      comps.push_back(tensor_product(factors));
    }
    out.members.push_back(ProductVector{std::move(comps)});
  }
  return out;
}

std::vector<CoarsePartition> enumerate_coarse_grainings(
    const PartyLayout& layout) {
  require(layout.labels.size() == 4,
          "enumerate_coarse_grainings: only 4-party layouts are supported");
  const auto& L = layout.labels;
  std::vector<CoarsePartition> out;
  auto add = [&](std::vector<std::vector<std::string>> blocks) {
    out.push_back(make_partition(std::move(blocks), layout));
  };
  // one merged pair, two singletons
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<std::string> rest;
      for (int k = 0; k < 4; ++k)
        if (k != i && k != j) rest.push_back(L[k]);
      add({{L[i], L[j]}, {rest[0]}, {rest[1]}});
    }
  // 2+2
  for (int j = 1; j < 4; ++j) {
    std::vector<std::string> rest;
    for (int k = 1; k < 4; ++k)
      if (k != j) rest.push_back(L[k]);
    add({{L[0], L[j]}, {rest[0], rest[1]}});
  }
  // 3+1
  for (int solo = 3; solo >= 0; --solo) {
    std::vector<std::string> triple;
    for (int k = 0; k < 4; ++k)
      if (k != solo) triple.push_back(L[k]);
    add({triple, {L[solo]}});
  }
  return out;
}

GrainingReport classify_upb_across_grainings(const ProductBasis& basis) {
  GrainingReport report;
  for (const CoarsePartition& partition :
       enumerate_coarse_grainings(basis.layout)) {
    ProductBasis merged = coarse_grain(basis, partition);
    PartitionVerdict pv;
    pv.partition = partition;
    pv.merged_layout = merged.layout;
    if (auto quick = small_system_shortcut(merged)) {
      pv.unextendible = quick->unextendible;
      pv.via_shortcut = true;
    } else {
      ExtendibilityVerdict verdict = check_unextendible(merged);
      pv.unextendible = verdict.unextendible;
      pv.witness = std::move(verdict.witness);
    }
    if (pv.unextendible) {
      if (partition.blocks.size() == 3) report.in_u224 = true;
      if (partition.blocks.size() == 2 && partition.blocks[0].size() == 2)
        report.in_u44 = true;
    }
    report.verdicts.push_back(std::move(pv));
  }
  return report;
}

namespace {

// next size-k subset of {0..n-1} in lexicographic order; false when done
bool next_subset(std::vector<int>& sub, int n) {
  const int k = static_cast<int>(sub.size());
  for (int i = k - 1; i >= 0; --i) {
    if (sub[i] < n - (k - i)) {
      ++sub[i];
      for (int j = i + 1; j < k; ++j) sub[j] = sub[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<ProductVector> structural_witness_shortcut(const ProductBasis& basis,
                                             std::pair<int, int> merged_pair,
                                             int m) {
  const int n = static_cast<int>(basis.members.size());
  require(basis.layout.dims.size() == 4, "structural_witness_shortcut: need 4 parties");
  for (int d : basis.layout.dims)
    require(d == 2, "structural_witness_shortcut: need qubit parties");
  require(m >= 0 && m <= n - 4, "structural_witness_shortcut: m out of range");
  auto [pa, pb] = merged_pair;
  require(pa >= 0 && pa < 4 && pb >= 0 && pb < 4 && pa != pb,
          "structural_witness_shortcut: bad merged pair");
  if (pa > pb) std::swap(pa, pb);

  std::vector<int> qubit_cols;  // the two parties that stay unmerged
  for (int p = 0; p < 4; ++p)
    if (p != pa && p != pb) qubit_cols.push_back(p);

  // merged components of every member, for the phi constraint
  std::vector<Vec> merged(n);
  for (int i = 0; i < n; ++i)
    merged[i] = tensor_product(
        {basis.members[i].components[pa], basis.members[i].components[pb]});

  const int group_size = n - 3 - m;
  if (group_size < 0) return std::nullopt;

  auto qubit_flip = [](const Vec& v) {
    Vec w(2);
    w(0) = std::conj(v(1));
    w(1) = -std::conj(v(0));
    return normalize_phase(w);
  };

  auto try_group = [&](const std::vector<int>& group, int fcol,
                       int gcol) -> std::optional<ProductVector> {
    std::vector<int> others;
    {
      std::vector<bool> in_group(n, false);
      for (int i : group) in_group[i] = true;
      for (int i = 0; i < n; ++i)
        if (!in_group[i]) others.push_back(i);
    }
    // condition (ii): m+1 mutually collinear merged components among the rest
    if (m >= 1) {
      int best = 0;
      for (size_t i = 0; i < others.size(); ++i) {
        int count = 1;
        for (size_t j = i + 1; j < others.size(); ++j)
          if (projectively_equal(merged[others[i]], merged[others[j]]))
            ++count;
        best = std::max(best, count);
      }
      if (best < m + 1) return std::nullopt;
    }

    // candidate blocks with a common first-qubit component, maximal per value,
    // in first-occurrence order; the empty block comes last
    std::vector<std::vector<int>> k_blocks;
    std::vector<Vec> k_values;
    for (int i : group) {
      const Vec& f = basis.members[i].components[fcol];
      bool seen = false;
      for (const Vec& v : k_values)
        if (projectively_equal(v, f)) { seen = true; break; }
      if (seen) continue;
      k_values.push_back(f);
      std::vector<int> blk;
      for (int j : group)
        if (projectively_equal(basis.members[j].components[fcol], f))
          blk.push_back(j);
      k_blocks.push_back(std::move(blk));
    }
    k_blocks.emplace_back();  // k = 0
    k_values.emplace_back();

    for (size_t c = 0; c < k_blocks.size(); ++c) {
      const auto& kblk = k_blocks[c];
      std::vector<int> rest;
      {
        std::vector<bool> in_k(n, false);
        for (int i : kblk) in_k[i] = true;
        for (int i : group)
          if (!in_k[i]) rest.push_back(i);
      }
      bool ok = true;
      for (size_t j = 1; j < rest.size(); ++j)
        if (!projectively_equal(basis.members[rest[0]].components[gcol],
                                basis.members[rest[j]].components[gcol])) {
          ok = false;
          break;
        }
      if (!ok) continue;

      std::vector<Vec> blockers;
      for (int i : others) blockers.push_back(merged[i]);
      auto phi = orthogonal_complement_sample(blockers, 4);
      if (!phi) continue;

      Vec fprime = kblk.empty() ? Vec((Vec(2) << 0, 1).finished())
                                : qubit_flip(basis.members[kblk[0]].components[fcol]);
      Vec gprime = rest.empty() ? Vec((Vec(2) << 0, 1).finished())
                                : qubit_flip(basis.members[rest[0]].components[gcol]);

      // assemble on the merged three-party layout, blocks in canonical order
      std::vector<std::pair<int, Vec>> slots = {
          {qubit_cols[0], fcol == qubit_cols[0] ? fprime : gprime},
          {qubit_cols[1], fcol == qubit_cols[1] ? fprime : gprime},
          {pa, *phi}};
      std::sort(slots.begin(), slots.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Vec> comps;
      for (auto& s : slots) comps.push_back(std::move(s.second));
      ProductVector witness = make_product_vector(std::move(comps));

      // keep only witnesses that actually kill the whole merged set
      const CoarsePartition partition = make_partition(
          {{basis.layout.labels[pa], basis.layout.labels[pb]},
           {basis.layout.labels[qubit_cols[0]]},
           {basis.layout.labels[qubit_cols[1]]}},
          basis.layout);
      ProductBasis grained = coarse_grain(basis, partition);
      const Vec wf = witness.full();
      bool sound = true;
      for (const ProductVector& member : grained.members)
        if (std::abs(wf.dot(member.full())) > 1e-10) { sound = false; break; }
      if (sound) return witness;
    }
    return std::nullopt;
  };

  std::vector<int> group(group_size);
  for (int i = 0; i < group_size; ++i) group[i] = i;
  if (group_size == 0) group.clear();
  do {
    for (const auto& roles :
         {std::pair{qubit_cols[0], qubit_cols[1]},
          std::pair{qubit_cols[1], qubit_cols[0]}}) {
      if (auto w = try_group(group, roles.first, roles.second)) return w;
    }
  } while (!group.empty() && next_subset(group, n));
  return std::nullopt;
}

}  // namespace upb
