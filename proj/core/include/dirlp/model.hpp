#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirlp/autodiff.hpp"
#include "dirlp/digraph.hpp"
#include "dirlp/eval.hpp"
#include "dirlp/featurize.hpp"
#include "dirlp/sampling.hpp"

namespace dirlp::model {

enum class EncoderKind { gcn, graphsage, dirgnn, mlp };
enum class DecoderKind { dp, hmlp, cmlp, mdp, mhmlp, mcmlp };

std::string to_string(EncoderKind k);
std::string to_string(DecoderKind k);
EncoderKind encoder_kind_from_string(const std::string& s);
DecoderKind decoder_kind_from_string(const std::string& s);

struct EncoderConfig {
  EncoderKind kind = EncoderKind::dirgnn;
  int layers = 1;       // K >= 1
  int hidden_dim = 64;  // width of layers before the last
  int out_dim = 48;     // d_enc
  double alpha = 0.5;   // in/out trade-off, DirGNN only
  double dropout = 0.0;
};

struct DecoderConfig {
  DecoderKind kind = DecoderKind::cmlp;
  std::vector<int> hidden = {64};  // MLP hidden widths; empty = single linear layer
  double dropout = 0.0;
};

struct LabelingConfig {
  bool enabled = false;
  featurize::LabelMode mode = featurize::LabelMode::de_k;
  int delta = 3;
  bool directed = true;
  int num_landmarks = 2;
};

/// Which structural feature block feeds the decoder. Only the CMLP decoder
/// accepts structural features (that combination is the DirLP decoder).
enum class StructuralMode { none, undirected_only, full };

std::string to_string(StructuralMode m);
StructuralMode structural_mode_from_string(const std::string& s);

struct ModelConfig {
  EncoderConfig encoder;
  DecoderConfig decoder;
  LabelingConfig labeling;
  int feature_radius = 2;
  StructuralMode structural = StructuralMode::none;
  bool structural_log1p = true;  // log1p-compress raw counts at the decoder boundary
  int embed_dim = 16;            // learnable node embeddings for featureless graphs

  void validate() const;
  std::string tag() const;  // short label, e.g. "dirgnn+cmlp"
};

/// The DirLP preset: directed de-k labels, DirGNN encoder, full structural
/// features, CMLP-with-z decoder.
ModelConfig dirlp_config();

/// A link prediction model bound to its training graph. Owns parameters,
/// label matrix and the structural feature cache; forward passes build a
/// fresh tape each time.
class LinkModel {
 public:
  LinkModel(const ModelConfig& cfg, const DirectedGraph& g_train, const NodeFeatures& raw,
            std::uint64_t seed);

  const ModelConfig& config() const { return cfg_; }
  const DirectedGraph& graph() const { return g_; }
  std::vector<ad::Parameter>& parameters() { return params_; }
  const std::vector<ad::Parameter>& parameters() const { return params_; }
  const std::vector<NodeId>& landmarks() const { return landmarks_; }

  /// Differentiable scores for a batch of pairs. Returns (logits tensor,
  /// lifted parameter tensors aligned with parameters()).
  struct Forward {
    ad::Tensor logits;
    std::vector<ad::Tensor> lifted;
  };
  Forward forward(ad::Tape& tape, const std::vector<Edge>& edges, bool train_mode,
                  std::uint64_t dropout_seed);

  /// One training step: BCE on (edges, targets), backward, gradients out.
  struct StepResult {
    double loss = 0;
    std::vector<std::vector<double>> grads;  // aligned with parameters()
  };
  StepResult loss_and_grads(const std::vector<Edge>& edges, const std::vector<double>& targets,
                            std::uint64_t dropout_seed);

  /// Inference scores (no dropout, no gradients).
  std::vector<double> score(const std::vector<Edge>& edges);

  /// Batched scorer with node embeddings computed once and reused across
  /// calls (parameters are snapshotted at the first call).
  eval::BatchScorer scorer();

  std::string checkpoint_json(int fold, std::uint64_t seed) const;
  void load_checkpoint_values(const std::string& json_text);

 private:
  ad::Tensor node_inputs(ad::Tape& tape, const std::vector<ad::Tensor>& lifted);
  ad::Tensor encode(ad::Tape& tape, const std::vector<ad::Tensor>& lifted, bool train_mode,
                    std::uint64_t dropout_seed);
  ad::Tensor decode(ad::Tape& tape, const std::vector<ad::Tensor>& lifted, ad::Tensor embeddings,
                    const std::vector<Edge>& edges, bool train_mode, std::uint64_t dropout_seed);
  ad::Tensor structural_tensor(ad::Tape& tape, const std::vector<Edge>& edges);
  std::size_t param_index(const std::string& name) const;

  ModelConfig cfg_;
  DirectedGraph g_;
  NodeFeatures raw_;
  featurize::NodeLabelMatrix labels_;
  std::vector<NodeId> landmarks_;
  std::unique_ptr<featurize::EdgeFeaturizer> featurizer_;
  std::size_t structural_dim_ = 0;
  std::size_t input_dim_ = 0;
  std::vector<ad::Parameter> params_;
  std::vector<std::vector<std::uint32_t>> in_groups_, out_groups_, sym_groups_, gcn_groups_;
  std::vector<std::vector<double>> gcn_weights_;
};

struct TrainConfig {
  double lr = 0.01;
  int max_epochs = 1000;
  int patience = 50;  // evaluated epochs without val MRR improvement
  int eval_every = 1;
  sampling::NegativeMode negative_mode = sampling::NegativeMode::directed;
  eval::Protocol val_protocol;
  std::uint64_t seed = 0;
};

struct EpochStat {
  int epoch = 0;
  double loss = 0;
  double val_mrr = -1;  // -1 when validation was not evaluated this epoch
};

struct TrainResult {
  std::vector<EpochStat> history;
  int best_epoch = -1;
  double best_val_mrr = 0;
  int epochs_run = 0;
};

/// Balanced-BCE training: each epoch resamples 1:1 negatives (mode per
/// config, all split edges excluded), runs one full-batch Adam step,
/// evaluates validation MRR every eval_every epochs on `g_candidates`, and
/// early-stops after `patience` evaluations without improvement. The model
/// ends up holding the best-validation parameters. Deterministic given the
/// seed. Throws NumericError (with the epoch index) on a non-finite loss.
TrainResult train(LinkModel& model, const sampling::EdgeSplit& split,
                  const DirectedGraph& g_candidates, const TrainConfig& cfg);

void write_history_csv(std::ostream& out, const std::vector<EpochStat>& history);

/// Hyperparameter search space (uniform sampling).
struct SearchSpace {
  std::vector<int> layers = {1, 2, 4};
  std::vector<int> hidden = {32, 64, 128};
  std::vector<int> final_dim = {24, 48, 72};
  double dropout_lo = 0.0;
  double dropout_hi = 0.9;
  double lr_lo = 0.0001;
  double lr_hi = 0.0600;
};

struct TrialConfig {
  int layers = 1;
  int hidden = 64;
  int final_dim = 48;
  double dropout = 0.0;
  double lr = 0.01;
};

struct Trial {
  TrialConfig config;
  double objective = 0;  // validation MRR
};

struct SearchResult {
  std::vector<Trial> trials;
  std::size_t best_index = 0;

  const Trial& best() const { return trials[best_index]; }
};

/// Seeded random search: draw `trials` configs from the space, score each
/// with `objective` (higher is better), return the full log and argmax.
SearchResult random_search(const SearchSpace& space, std::size_t trials, std::uint64_t seed,
                           const std::function<double(const TrialConfig&)>& objective);

}  // namespace dirlp::model
