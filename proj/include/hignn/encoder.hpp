#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hignn/featurize.hpp"
#include "hignn/tensor.hpp"

namespace hignn::nn {

enum class MessageScheme { Atom, Bond, Att, Max, Mean, Sum, Mul, Mix };

MessageScheme scheme_from_string(const std::string& s);
std::string scheme_to_string(MessageScheme s);

struct EncoderConfig {
  int d = 64;           // hidden width
  int depth = 3;        // message passing layers
  int slices = 4;       // bilinear slices (must divide d)
  int reduction = 4;    // FA bottleneck ratio (must divide d)
  double dropout = 0.1;
  MessageScheme scheme = MessageScheme::Atom;
  bool fa_enabled = true;
  int atom_dim = feat::kAtomDimExtras;
  int bond_dim = feat::kBondDim;

  void validate() const;
  int score_in_width() const {  // W2 input width
    return scheme == MessageScheme::Att ? 2 * d : 3 * d;
  }
};

struct EncoderParams {
  tensor::Param w_in;  // {d, atom_dim} input projection (with ReLU)
  tensor::Param w_e;   // {d, bond_dim} bond projection
  struct Layer {
    tensor::Param proj;  // {d, d} per-layer state projection
    tensor::Param w1;    // {a, d, d} bilinear slices
    tensor::Param w2;    // {a, 3d} ({a, 2d} for the ATT scheme)
    tensor::Param b;     // {a}
  };
  std::vector<Layer> layers;
  // gate and FA blocks are single instances shared by every layer
  tensor::Param w3;        // {3d, d}
  tensor::Param w4, w5;    // {d/r, d}, {d, d/r}

  void init(const EncoderConfig& cfg, uint64_t seed);
  std::vector<tensor::Param*> all();
};

// disjoint union of featurized graphs
struct GraphBatch {
  int n_nodes = 0;
  int n_graphs = 0;
  int atom_dim = 0;
  std::vector<double> x;       // n_nodes x atom_dim
  std::vector<double> e;       // n_edges x bond_dim
  std::vector<int> src, dst;   // directed edges
  std::vector<int> node_seg;   // node -> graph index
  int n_edges() const { return static_cast<int>(src.size()); }
};

GraphBatch make_batch(const std::vector<const feat::GraphData*>& graphs);

// per-tape bound parameters
struct EncoderBind {
  tensor::Tensor w_in, w_e, w3, w4, w5;
  struct Layer {
    tensor::Tensor proj, w1, w2, b;
  };
  std::vector<Layer> layers;
};
EncoderBind bind_encoder(tensor::Tape& tape, EncoderParams& p);

// individual blocks (exposed for unit tests and the loop-reference checks)
tensor::Tensor interaction_scores(const tensor::Tensor& hi,
                                  const tensor::Tensor& hj,
                                  const tensor::Tensor& eji,
                                  const EncoderBind::Layer& layer,
                                  MessageScheme scheme);
tensor::Tensor message_pass(const tensor::Tensor& h_proj,
                            const tensor::Tensor& e_proj,
                            const GraphBatch& batch,
                            const EncoderBind::Layer& layer,
                            MessageScheme scheme, int slices);
tensor::Tensor gated_update(const tensor::Tensor& h, const tensor::Tensor& m,
                            const tensor::Tensor& w3);
tensor::Tensor fa_recalibrate(const tensor::Tensor& h_prime,
                              const tensor::Tensor& w4,
                              const tensor::Tensor& w5,
                              const std::vector<int>& node_seg, int n_graphs);

// K layers then sum readout; returns h_G [n_graphs, d]
tensor::Tensor encode(tensor::Tape& tape, const EncoderBind& p,
                      const EncoderConfig& cfg, const GraphBatch& batch,
                      bool training, uint64_t seed, uint64_t step);

}  // namespace hignn::nn
