#pragma once

#include <vector>

#include "hignn/encoder.hpp"
#include "hignn/featurize.hpp"
#include "hignn/rng.hpp"

namespace testutil {

// synthetic graph with random features (chemistry-free; for math checks)
inline hignn::feat::GraphData random_graph(int n_atoms, int atom_dim,
                                           uint64_t seed) {
  hignn::CounterRng rng(seed, 0);
  hignn::feat::GraphData g;
  g.n_atoms = n_atoms;
  g.atom_dim = atom_dim;
  g.x.resize(static_cast<size_t>(n_atoms) * atom_dim);
  for (auto& v : g.x) v = rng.next_uniform(1.0);
  for (int i = 1; i < n_atoms; ++i) {
    int j = static_cast<int>(rng.next_below(i));
    g.edge_src.push_back(j);
    g.edge_dst.push_back(i);
    g.edge_src.push_back(i);
    g.edge_dst.push_back(j);
    for (int k = 0; k < 2 * hignn::feat::kBondDim; ++k)
      g.e.push_back(rng.next_uniform(1.0));
  }
  return g;
}

// relabel atoms by perm (perm[i] = new index of old atom i)
inline hignn::feat::GraphData permute_graph(const hignn::feat::GraphData& g,
                                            const std::vector<int>& perm) {
  hignn::feat::GraphData out;
  out.n_atoms = g.n_atoms;
  out.atom_dim = g.atom_dim;
  out.x.resize(g.x.size());
  for (int i = 0; i < g.n_atoms; ++i)
    std::copy_n(g.x.data() + static_cast<size_t>(i) * g.atom_dim, g.atom_dim,
                out.x.data() + static_cast<size_t>(perm[i]) * g.atom_dim);
  out.edge_src.resize(g.edge_src.size());
  out.edge_dst.resize(g.edge_dst.size());
  out.e = g.e;
  for (size_t k = 0; k < g.edge_src.size(); ++k) {
    out.edge_src[k] = perm[g.edge_src[k]];
    out.edge_dst[k] = perm[g.edge_dst[k]];
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace testutil
