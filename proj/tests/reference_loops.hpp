// Straight-line loop reimplementation of the encoder, combiner and
// predictor math, written against plain vectors with no tensor-library
// code. Test-only: this is the independent route the engine is checked
// against, so keep it free of any hignn::tensor usage.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hignn/encoder.hpp"
#include "hignn/featurize.hpp"
#include "hignn/model.hpp"

namespace refloops {

using Vec = std::vector<double>;

inline double sigmoidf(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double reluf(double x) { return x > 0.0 ? x : 0.0; }
inline double lreluf(double x) { return x > 0.0 ? x : 0.01 * x; }

// y[m] = W[m x k] * x[k]
inline Vec matvec(const Vec& W, const Vec& x, int m, int k) {
  Vec y(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += W[static_cast<size_t>(i) * k + j] * x[j];
    y[i] = acc;
  }
  return y;
}

// per-node hidden states for one graph, evaluated with plain loops
inline std::vector<Vec> encode_nodes(const hignn::feat::GraphData& g,
                                     hignn::nn::EncoderParams& p,
                                     const hignn::nn::EncoderConfig& cfg) {
  const int d = cfg.d, a = cfg.slices, dd = d / a;
  const int n = g.n_atoms;
  const int ne = g.n_edges();
  using hignn::nn::MessageScheme;

  std::vector<Vec> h(n);
  for (int i = 0; i < n; ++i) {
    Vec x(g.x.begin() + static_cast<size_t>(i) * g.atom_dim,
          g.x.begin() + static_cast<size_t>(i + 1) * g.atom_dim);
    h[i] = matvec(p.w_in.value, x, d, g.atom_dim);
    for (double& v : h[i]) v = reluf(v);
  }
  std::vector<Vec> eproj(ne);
  for (int e = 0; e < ne; ++e) {
    Vec eb(g.e.begin() + static_cast<size_t>(e) * hignn::feat::kBondDim,
           g.e.begin() + static_cast<size_t>(e + 1) * hignn::feat::kBondDim);
    eproj[e] = matvec(p.w_e.value, eb, d, hignn::feat::kBondDim);
  }

  for (int layer = 0; layer < cfg.depth; ++layer) {
    auto& lp = p.layers[layer];
    std::vector<Vec> hk(n);
    for (int i = 0; i < n; ++i)
      hk[i] = lp.proj.shape.empty() ? h[i]
                                    : matvec(lp.proj.value, h[i], d, d);
    // interaction scores per directed edge (Eq 4 / Eq 6)
    std::vector<Vec> alpha(ne, Vec(a, 0.0));
    for (int e = 0; e < ne; ++e) {
      const Vec& hi = hk[g.edge_dst[e]];
      const Vec& hj = hk[g.edge_src[e]];
      for (int s = 0; s < a; ++s) {
        double bil = 0.0;
        for (int x1 = 0; x1 < d; ++x1)
          for (int x2 = 0; x2 < d; ++x2)
            bil += hi[x1] *
                   lp.w1.value[(static_cast<size_t>(s) * d + x1) * d + x2] *
                   hj[x2];
        Vec cat;
        cat.insert(cat.end(), hi.begin(), hi.end());
        if (cfg.scheme != MessageScheme::Att)
          cat.insert(cat.end(), eproj[e].begin(), eproj[e].end());
        cat.insert(cat.end(), hj.begin(), hj.end());
        double lin = 0.0;
        int w = cfg.score_in_width();
        for (int j = 0; j < w; ++j)
          lin += lp.w2.value[static_cast<size_t>(s) * w + j] * cat[j];
        alpha[e][s] = std::tanh(bil + lin + lp.b.value[s]);
      }
    }
    // message formation (Eq 5) with the scheme's payload, slice-scaled
    std::vector<Vec> msg(n, Vec(d, 0.0));
    for (int e = 0; e < ne; ++e) {
      const Vec& hj = hk[g.edge_src[e]];
      const Vec& ev = eproj[e];
      Vec payload(d);
      for (int t = 0; t < d; ++t) {
        switch (cfg.scheme) {
          case MessageScheme::Atom:
          case MessageScheme::Att: payload[t] = hj[t]; break;
          case MessageScheme::Bond: payload[t] = ev[t]; break;
          case MessageScheme::Mul: payload[t] = hj[t] * ev[t]; break;
          case MessageScheme::Mix:
            payload[t] = hj[t] + ev[t] + hj[t] * ev[t];
            break;
          case MessageScheme::Max: payload[t] = std::max(hj[t], ev[t]); break;
          case MessageScheme::Mean: payload[t] = 0.5 * (hj[t] + ev[t]); break;
          case MessageScheme::Sum: payload[t] = hj[t] + ev[t]; break;
        }
      }
      Vec& acc = msg[g.edge_dst[e]];
      for (int s = 0; s < a; ++s)
        for (int t = 0; t < dd; ++t)
          acc[s * dd + t] += payload[s * dd + t] * alpha[e][s];
    }
    for (int i = 0; i < n; ++i)
      for (double& v : msg[i]) v = reluf(v);
    // gated update (Eq 7, sigmoid-squashed gate)
    std::vector<Vec> hp(n, Vec(d, 0.0));
    for (int i = 0; i < n; ++i) {
      Vec z;
      z.insert(z.end(), hk[i].begin(), hk[i].end());
      z.insert(z.end(), msg[i].begin(), msg[i].end());
      for (int t = 0; t < d; ++t) z.push_back(hk[i][t] - msg[i][t]);
      for (int t = 0; t < d; ++t) {
        double beta = 0.0;
        for (int j = 0; j < 3 * d; ++j)
          beta += z[j] * p.w3.value[static_cast<size_t>(j) * d + t];
        beta = sigmoidf(beta);
        hp[i][t] = beta * hk[i][t] + (1.0 - beta) * msg[i][t];
      }
    }
    // feature-wise attention (Eqs 10-11)
    if (cfg.fa_enabled) {
      int dr = d / cfg.reduction;
      Vec fsum(d, 0.0), fmax(d, 0.0);
      for (int t = 0; t < d; ++t) {
        double mx = hp[0][t];
        for (int i = 0; i < n; ++i) {
          fsum[t] += hp[i][t];
          mx = std::max(mx, hp[i][t]);
        }
        fmax[t] = mx;
      }
      Vec a1 = matvec(p.w4.value, fsum, dr, d);
      Vec a2 = matvec(p.w4.value, fmax, dr, d);
      for (double& v : a1) v = reluf(v);
      for (double& v : a2) v = reluf(v);
      Vec c1 = matvec(p.w5.value, a1, d, dr);
      Vec c2 = matvec(p.w5.value, a2, d, dr);
      Vec c(d);
      for (int t = 0; t < d; ++t) c[t] = sigmoidf(c1[t] + c2[t]);
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < d; ++t) hp[i][t] *= c[t];
    }
    h = hp;
  }
  return h;
}

// Eq 8 readout
inline Vec encode_graph(const hignn::feat::GraphData& g,
                        hignn::nn::EncoderParams& p,
                        const hignn::nn::EncoderConfig& cfg) {
  auto nodes = encode_nodes(g, p, cfg);
  Vec out(cfg.d, 0.0);
  for (const auto& hv : nodes)
    for (int t = 0; t < cfg.d; ++t) out[t] += hv[t];
  return out;
}

// four-head additive inter-attention combiner (Eqs 12-13)
inline Vec combine(const Vec& hg, const std::vector<Vec>& frags,
                   hignn::nn::HignnModel& model) {
  const int d = model.cfg.encoder.d;
  const int heads = static_cast<int>(model.heads.size());
  const int d4 = d / heads;
  const int T = static_cast<int>(frags.size());
  Vec out;
  for (int hidx = 0; hidx < heads; ++hidx) {
    const Vec& w6 = model.heads[hidx].w6.value;
    const Vec& attn = model.heads[hidx].attn.value;
    Vec q = matvec(w6, hg, d4, d);
    std::vector<Vec> keys(T);
    Vec scores(T, 0.0);
    for (int t = 0; t < T; ++t) {
      keys[t] = matvec(w6, frags[t], d4, d);
      double s = 0.0;
      for (int j = 0; j < d4; ++j) s += attn[j] * q[j];
      for (int j = 0; j < d4; ++j) s += attn[d4 + j] * keys[t][j];
      scores[t] = lreluf(s);
    }
    double mx = *std::max_element(scores.begin(), scores.end());
    double denom = 0.0;
    Vec soft(T);
    for (int t = 0; t < T; ++t) {
      soft[t] = std::exp(scores[t] - mx);
      denom += soft[t];
    }
    Vec head(d4, 0.0);
    for (int t = 0; t < T; ++t)
      for (int j = 0; j < d4; ++j) head[j] += soft[t] / denom * keys[t][j];
    out.insert(out.end(), head.begin(), head.end());
  }
  return out;
}

// two affine layers with ReLU (dropout is identity in eval mode)
inline Vec predict(const Vec& input, hignn::nn::HignnModel& model) {
  const int d = model.cfg.encoder.d;
  int in = static_cast<int>(input.size());
  Vec h = matvec(model.pred_w1.value, input, d, in);
  for (int t = 0; t < d; ++t) h[t] = reluf(h[t] + model.pred_b1.value[t]);
  Vec y = matvec(model.pred_w2.value, h, model.cfg.n_tasks, d);
  for (int t = 0; t < model.cfg.n_tasks; ++t) y[t] += model.pred_b2.value[t];
  return y;
}

}  // namespace refloops
