#include "hignn/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "hignn/rng.hpp"

namespace hignn::nn {

using tensor::Param;
using tensor::Tape;
using tensor::Tensor;

MessageScheme scheme_from_string(const std::string& s) {
  if (s == "atom") return MessageScheme::Atom;
  if (s == "bond") return MessageScheme::Bond;
  if (s == "att") return MessageScheme::Att;
  if (s == "max") return MessageScheme::Max;
  if (s == "mean") return MessageScheme::Mean;
  if (s == "sum") return MessageScheme::Sum;
  if (s == "mul") return MessageScheme::Mul;
  if (s == "mix") return MessageScheme::Mix;
  throw ConfigError("unknown message scheme '" + s + "'");
}

std::string scheme_to_string(MessageScheme s) {
  switch (s) {
    case MessageScheme::Atom: return "atom";
    case MessageScheme::Bond: return "bond";
    case MessageScheme::Att: return "att";
    case MessageScheme::Max: return "max";
    case MessageScheme::Mean: return "mean";
    case MessageScheme::Sum: return "sum";
    case MessageScheme::Mul: return "mul";
    case MessageScheme::Mix: return "mix";
  }
  return "atom";
}

void EncoderConfig::validate() const {
  if (depth < 1) throw ConfigError("encoder depth must be >= 1");
  if (slices < 1 || d % slices != 0)
    throw ConfigError("slice count must divide hidden width");
  if (reduction < 1 || d % reduction != 0)
    throw ConfigError("reduction ratio must divide hidden width");
  if (!(dropout >= 0.0 && dropout < 1.0))
    throw ConfigError("dropout must be in [0,1)");
}

namespace {

void glorot(Param& p, const std::string& name, int fan_in, int fan_out,
            uint64_t seed) {
  p.name = name;
  p.resize();
  double w = std::sqrt(6.0 / (fan_in + fan_out));
  CounterRng rng(seed, stable_hash(name.c_str()));
  for (auto& v : p.value) v = rng.next_uniform(w);
}

void zeros(Param& p, const std::string& name) {
  p.name = name;
  p.resize();
}

}  // namespace

void EncoderParams::init(const EncoderConfig& cfg, uint64_t seed) {
  cfg.validate();
  int d = cfg.d, a = cfg.slices, r = cfg.reduction;
  w_in.shape = {d, cfg.atom_dim};
  glorot(w_in, "encoder.W_in", cfg.atom_dim, d, seed);
  w_e.shape = {d, cfg.bond_dim};
  glorot(w_e, "encoder.W_e", cfg.bond_dim, d, seed);
  layers.resize(cfg.depth);
  for (int k = 0; k < cfg.depth; ++k) {
    std::string base = "encoder.layer" + std::to_string(k);
    if (k > 0) {
      // the input projection doubles as the first layer's state projection;
      // deeper layers re-project d -> d
      layers[k].proj.shape = {d, d};
      glorot(layers[k].proj, base + ".proj", d, d, seed);
    }
    layers[k].w1.shape = {a, d, d};
    glorot(layers[k].w1, base + ".W1", d, d, seed);
    layers[k].w2.shape = {a, cfg.score_in_width()};
    glorot(layers[k].w2, base + ".W2", cfg.score_in_width(), a, seed);
    layers[k].b.shape = {a};
    zeros(layers[k].b, base + ".b");
  }
  w3.shape = {3 * d, d};
  glorot(w3, "encoder.gate.W3", 3 * d, d, seed);
  w4.shape = {d / r, d};
  glorot(w4, "encoder.fa.W4", d, d / r, seed);
  w5.shape = {d, d / r};
  glorot(w5, "encoder.fa.W5", d / r, d, seed);
}

std::vector<Param*> EncoderParams::all() {
  std::vector<Param*> out{&w_in, &w_e};
  for (auto& l : layers) {
    if (!l.proj.shape.empty()) out.push_back(&l.proj);
    out.push_back(&l.w1);
    out.push_back(&l.w2);
    out.push_back(&l.b);
  }
  out.push_back(&w3);
  out.push_back(&w4);
  out.push_back(&w5);
  return out;
}

GraphBatch make_batch(const std::vector<const feat::GraphData*>& graphs) {
  GraphBatch b;
  if (graphs.empty()) throw DataError("empty graph batch");
  b.atom_dim = graphs[0]->atom_dim;
  for (const auto* g : graphs) {
    if (g->atom_dim != b.atom_dim)
      throw ShapeMismatch("mixed atom feature widths in one batch");
    int off = b.n_nodes;
    b.x.insert(b.x.end(), g->x.begin(), g->x.end());
    b.e.insert(b.e.end(), g->e.begin(), g->e.end());
    for (int s : g->edge_src) b.src.push_back(s + off);
    for (int d : g->edge_dst) b.dst.push_back(d + off);
    for (int i = 0; i < g->n_atoms; ++i) b.node_seg.push_back(b.n_graphs);
    b.n_nodes += g->n_atoms;
    b.n_graphs += 1;
  }
  return b;
}

EncoderBind bind_encoder(Tape& tape, EncoderParams& p) {
  EncoderBind b;
  b.w_in = tape.param(p.w_in);
  b.w_e = tape.param(p.w_e);
  b.w3 = tape.param(p.w3);
  b.w4 = tape.param(p.w4);
  b.w5 = tape.param(p.w5);
  for (auto& l : p.layers) {
    EncoderBind::Layer lb;
    if (!l.proj.shape.empty()) lb.proj = tape.param(l.proj);
    lb.w1 = tape.param(l.w1);
    lb.w2 = tape.param(l.w2);
    lb.b = tape.param(l.b);
    b.layers.push_back(lb);
  }
  return b;
}

Tensor interaction_scores(const Tensor& hi, const Tensor& hj,
                          const Tensor& eji, const EncoderBind::Layer& layer,
                          MessageScheme scheme) {
  using namespace tensor;
  Tensor bil = bilinear(hi, layer.w1, hj);
  Tensor cat = scheme == MessageScheme::Att
                   ? concat_cols({hi, hj})
                   : concat_cols({hi, eji, hj});
  Tensor lin = linear(cat, layer.w2);
  return tanh_t(add_rowvec(add(bil, lin), layer.b));
}

Tensor message_pass(const Tensor& h_proj, const Tensor& e_proj,
                    const GraphBatch& batch, const EncoderBind::Layer& layer,
                    MessageScheme scheme, int slices) {
  using namespace tensor;
  Tensor hi = gather_rows(h_proj, batch.dst);
  Tensor hj = gather_rows(h_proj, batch.src);
  Tensor alpha = interaction_scores(hi, hj, e_proj, layer, scheme);
  Tensor payload;
  switch (scheme) {
    case MessageScheme::Atom:
    case MessageScheme::Att: payload = hj; break;
    case MessageScheme::Bond: payload = e_proj; break;
    case MessageScheme::Mul: payload = mul(hj, e_proj); break;
    case MessageScheme::Mix:
      payload = add(add(hj, e_proj), mul(hj, e_proj));
      break;
    case MessageScheme::Max: payload = emax(hj, e_proj); break;
    case MessageScheme::Mean: payload = cmul(add(hj, e_proj), 0.5); break;
    case MessageScheme::Sum: payload = add(hj, e_proj); break;
  }
  Tensor scaled = slice_scale(payload, alpha);
  Tensor summed = segment_sum(scaled, batch.dst, batch.n_nodes);
  return relu(summed);
}

Tensor gated_update(const Tensor& h, const Tensor& m, const Tensor& w3) {
  using namespace tensor;
  Tensor z = concat_cols({h, m, sub(h, m)});
  Tensor beta = sigmoid(matmul(z, w3));
  // h' = m + beta (h - m) = beta h + (1 - beta) m
  return add(m, mul(beta, sub(h, m)));
}

Tensor fa_recalibrate(const Tensor& h_prime, const Tensor& w4,
                      const Tensor& w5, const std::vector<int>& node_seg,
                      int n_graphs) {
  using namespace tensor;
  Tensor fsum = segment_sum(h_prime, node_seg, n_graphs);
  Tensor fmax = segment_max(h_prime, node_seg, n_graphs);
  Tensor c = sigmoid(add(linear(relu(linear(fsum, w4)), w5),
                         linear(relu(linear(fmax, w4)), w5)));
  return mul(h_prime, gather_rows(c, node_seg));
}

Tensor encode(Tape& tape, const EncoderBind& p, const EncoderConfig& cfg,
              const GraphBatch& batch, bool training, uint64_t seed,
              uint64_t step) {
  using namespace tensor;
  cfg.validate();
  Tensor x = tape.constant({batch.n_nodes, batch.atom_dim}, batch.x);
  Tensor h = relu(linear(x, p.w_in));
  Tensor e_proj;
  bool needs_bonds = cfg.scheme != MessageScheme::Att;
  if (needs_bonds) {
    Tensor eb = tape.constant({batch.n_edges(), cfg.bond_dim}, batch.e);
    e_proj = linear(eb, p.w_e);
  } else {
    // the ATT scheme is independent of bond features by construction
    e_proj = tape.constant({batch.n_edges(), cfg.d},
                           std::vector<double>(
                               static_cast<std::size_t>(batch.n_edges()) * cfg.d,
                               0.0));
  }
  for (int k = 0; k < cfg.depth; ++k) {
    const auto& layer = p.layers[k];
    Tensor hk = layer.proj.valid() ? linear(h, layer.proj) : h;
    Tensor m = message_pass(hk, e_proj, batch, layer, cfg.scheme, cfg.slices);
    Tensor hp = gated_update(hk, m, p.w3);
    Tensor ht = cfg.fa_enabled
                    ? fa_recalibrate(hp, p.w4, p.w5, batch.node_seg,
                                     batch.n_graphs)
                    : hp;
    h = dropout(ht, cfg.dropout, training, seed,
                (step << 8) ^ static_cast<uint64_t>(k));
  }
  return segment_sum(h, batch.node_seg, batch.n_graphs);
}

}  // namespace hignn::nn
