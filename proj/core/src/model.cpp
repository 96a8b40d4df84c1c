#include "dirlp/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dirlp/error.hpp"
#include "dirlp/rng.hpp"

namespace dirlp::model {

std::string to_string(EncoderKind k) {
  switch (k) {
    case EncoderKind::gcn: return "gcn";
    case EncoderKind::graphsage: return "graphsage";
    case EncoderKind::dirgnn: return "dirgnn";
    case EncoderKind::mlp: return "mlp";
  }
  return "?";
}

std::string to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::dp: return "dp";
    case DecoderKind::hmlp: return "hmlp";
    case DecoderKind::cmlp: return "cmlp";
    case DecoderKind::mdp: return "mdp";
    case DecoderKind::mhmlp: return "mhmlp";
    case DecoderKind::mcmlp: return "mcmlp";
  }
  return "?";
}

EncoderKind encoder_kind_from_string(const std::string& s) {
  if (s == "gcn") return EncoderKind::gcn;
  if (s == "graphsage" || s == "sage") return EncoderKind::graphsage;
  if (s == "dirgnn") return EncoderKind::dirgnn;
  if (s == "mlp") return EncoderKind::mlp;
  throw DomainError("unknown encoder kind: " + s);
}

DecoderKind decoder_kind_from_string(const std::string& s) {
  if (s == "dp") return DecoderKind::dp;
  if (s == "hmlp") return DecoderKind::hmlp;
  if (s == "cmlp") return DecoderKind::cmlp;
  if (s == "mdp") return DecoderKind::mdp;
  if (s == "mhmlp") return DecoderKind::mhmlp;
  if (s == "mcmlp") return DecoderKind::mcmlp;
  throw DomainError("unknown decoder kind: " + s);
}

std::string to_string(StructuralMode m) {
  switch (m) {
    case StructuralMode::none: return "none";
    case StructuralMode::undirected_only: return "undirected";
    case StructuralMode::full: return "full";
  }
  return "?";
}

StructuralMode structural_mode_from_string(const std::string& s) {
  if (s == "none") return StructuralMode::none;
  if (s == "undirected" || s == "undirected_only") return StructuralMode::undirected_only;
  if (s == "full" || s == "directed") return StructuralMode::full;
  throw DomainError("unknown structural mode: " + s);
}

void ModelConfig::validate() const {
  if (encoder.layers < 1) throw ContractError("encoder layers must be >= 1");
  if (encoder.out_dim < 1) throw ContractError("encoder out_dim must be >= 1");
  if (encoder.alpha < 0 || encoder.alpha > 1) throw ContractError("alpha must be in [0,1]");
  if (encoder.dropout < 0 || encoder.dropout >= 1) throw ContractError("encoder dropout in [0,1)");
  if (decoder.dropout < 0 || decoder.dropout >= 1) throw ContractError("decoder dropout in [0,1)");
  if (feature_radius < 1) throw ContractError("feature_radius must be >= 1");
  if (structural != StructuralMode::none && decoder.kind != DecoderKind::cmlp) {
    throw ContractError("structural features require the cmlp decoder (the DirLP path)");
  }
  if (labeling.enabled && labeling.num_landmarks < 1) {
    throw ContractError("labeling needs at least one landmark");
  }
}

std::string ModelConfig::tag() const {
  std::string t = to_string(encoder.kind) + "+" + to_string(decoder.kind);
  if (structural != StructuralMode::none) t += "+z(" + to_string(structural) + ")";
  if (labeling.enabled) {
    t += labeling.mode == featurize::LabelMode::de_k
             ? "+de" + std::to_string(labeling.delta)
             : "+delog";
    t += labeling.directed ? "-d" : "-u";
  }
  return t;
}

ModelConfig dirlp_config() {
  ModelConfig cfg;
  cfg.encoder.kind = EncoderKind::dirgnn;
  cfg.decoder.kind = DecoderKind::cmlp;
  cfg.labeling.enabled = true;
  cfg.labeling.mode = featurize::LabelMode::de_k;
  cfg.labeling.delta = 3;
  cfg.labeling.directed = true;
  cfg.labeling.num_landmarks = 2;
  cfg.structural = StructuralMode::full;
  return cfg;
}

namespace {

std::vector<std::vector<std::uint32_t>> neighbor_groups(const DirectedGraph& g, Direction dir) {
  std::vector<std::vector<std::uint32_t>> groups(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto row = g.neighbors(u, dir);
    groups[u].assign(row.begin(), row.end());
  }
  return groups;
}

}  // namespace

LinkModel::LinkModel(const ModelConfig& cfg, const DirectedGraph& g_train,
                     const NodeFeatures& raw, std::uint64_t seed)
    : cfg_(cfg), g_(g_train), raw_(raw) {
  cfg_.validate();
  if (raw_.dim > 0 && raw_.num_nodes != g_.num_nodes()) {
    throw ShapeError("node feature row count differs from num_nodes");
  }

  if (cfg_.labeling.enabled) {
    std::size_t want = std::min<std::size_t>(cfg_.labeling.num_landmarks, g_.num_nodes());
    landmarks_ = featurize::select_landmarks(g_, want);
    labels_ = featurize::distance_encoding_labels(g_, landmarks_, cfg_.labeling.mode,
                                                  cfg_.labeling.delta, cfg_.labeling.directed);
  }

  input_dim_ = raw_.dim + (cfg_.labeling.enabled ? labels_.dim : 0);
  const bool featureless = raw_.dim == 0;
  if (featureless && cfg_.embed_dim > 0) input_dim_ += std::size_t(cfg_.embed_dim);
  if (input_dim_ == 0) {
    throw ContractError("model has no node inputs: no features, labels or embeddings");
  }

  if (cfg_.structural != StructuralMode::none) {
    featurizer_ = std::make_unique<featurize::EdgeFeaturizer>(g_, cfg_.feature_radius);
    structural_dim_ = cfg_.structural == StructuralMode::full
                          ? featurizer_->dim()
                          : featurize::undirected_feature_dim(cfg_.feature_radius);
  }

  // Message-passing index structures, fixed at construction.
  switch (cfg_.encoder.kind) {
    case EncoderKind::dirgnn:
      in_groups_ = neighbor_groups(g_, Direction::in);
      out_groups_ = neighbor_groups(g_, Direction::out);
      break;
    case EncoderKind::graphsage:
      sym_groups_ = neighbor_groups(g_.symmetrize(), Direction::out);
      break;
    case EncoderKind::gcn: {
      DirectedGraph g_sym = g_.symmetrize();
      gcn_groups_.resize(g_.num_nodes());
      gcn_weights_.resize(g_.num_nodes());
      std::vector<double> inv_sqrt(g_.num_nodes());
      for (NodeId u = 0; u < g_.num_nodes(); ++u) {
        inv_sqrt[u] = 1.0 / std::sqrt(double(g_sym.out_degree(u)) + 1.0);
      }
      for (NodeId u = 0; u < g_.num_nodes(); ++u) {
        auto row = g_sym.neighbors(u, Direction::out);
        gcn_groups_[u].reserve(row.size() + 1);
        gcn_weights_[u].reserve(row.size() + 1);
        bool self_inserted = false;
        auto push_self = [&] {
          gcn_groups_[u].push_back(u);
          gcn_weights_[u].push_back(inv_sqrt[u] * inv_sqrt[u]);
          self_inserted = true;
        };
        for (NodeId v : row) {
          if (!self_inserted && v > u) push_self();
          gcn_groups_[u].push_back(v);
          gcn_weights_[u].push_back(inv_sqrt[u] * inv_sqrt[v]);
        }
        if (!self_inserted) push_self();
      }
      break;
    }
    case EncoderKind::mlp:
      break;
  }

  // Parameters. Seeds derive from (seed, running index) so layouts are
  // reproducible and independent of name lengths.
  std::uint64_t pi = 0;
  auto add = [&](const std::string& name, std::size_t r, std::size_t c, ad::Init init) {
    for (const auto& p : params_) {
      if (p.name == name) throw ContractError("duplicate parameter name: " + name);
    }
    params_.push_back(ad::make_parameter(name, r, c, init, derive_seed(seed, pi++)));
  };

  const bool embed = featureless && cfg_.embed_dim > 0;
  if (embed) add("embed.table", g_.num_nodes(), std::size_t(cfg_.embed_dim), ad::Init::glorot_uniform);

  const int K = cfg_.encoder.layers;
  std::size_t in_dim = input_dim_;
  for (int k = 0; k < K; ++k) {
    std::size_t out_dim = (k == K - 1) ? std::size_t(cfg_.encoder.out_dim)
                                       : std::size_t(cfg_.encoder.hidden_dim);
    const std::string prefix = "enc.l" + std::to_string(k) + ".";
    switch (cfg_.encoder.kind) {
      case EncoderKind::dirgnn:
        add(prefix + "w_in_self", in_dim, out_dim, ad::Init::glorot_uniform);
        add(prefix + "w_in", in_dim, out_dim, ad::Init::glorot_uniform);
        add(prefix + "w_out_self", in_dim, out_dim, ad::Init::glorot_uniform);
        add(prefix + "w_out", in_dim, out_dim, ad::Init::glorot_uniform);
        break;
      case EncoderKind::graphsage:
        add(prefix + "w_self", in_dim, out_dim, ad::Init::glorot_uniform);
        add(prefix + "w_neigh", in_dim, out_dim, ad::Init::glorot_uniform);
        break;
      case EncoderKind::gcn:
        add(prefix + "w", in_dim, out_dim, ad::Init::glorot_uniform);
        break;
      case EncoderKind::mlp:
        add(prefix + "w", in_dim, out_dim, ad::Init::glorot_uniform);
        add(prefix + "b", 1, out_dim, ad::Init::zeros);
        break;
    }
    in_dim = out_dim;
  }

  const std::size_t d_enc = std::size_t(cfg_.encoder.out_dim);
  if (cfg_.decoder.kind == DecoderKind::mdp || cfg_.decoder.kind == DecoderKind::mhmlp ||
      cfg_.decoder.kind == DecoderKind::mcmlp) {
    add("dec.bilinear_w", d_enc, d_enc, ad::Init::glorot_uniform);
  }

  std::size_t dec_in = 0;
  switch (cfg_.decoder.kind) {
    case DecoderKind::dp:
    case DecoderKind::mdp:
      dec_in = 0;  // no MLP
      break;
    case DecoderKind::hmlp:
    case DecoderKind::mhmlp:
      dec_in = d_enc;
      break;
    case DecoderKind::cmlp:
    case DecoderKind::mcmlp:
      dec_in = 2 * d_enc + structural_dim_;
      break;
  }
  if (dec_in > 0) {
    std::size_t cur = dec_in;
    std::size_t li = 0;
    for (int h : cfg_.decoder.hidden) {
      const std::string prefix = "dec.l" + std::to_string(li++) + ".";
      add(prefix + "w", cur, std::size_t(h), ad::Init::glorot_uniform);
      add(prefix + "b", 1, std::size_t(h), ad::Init::zeros);
      cur = std::size_t(h);
    }
    add("dec.out.w", cur, 1, ad::Init::glorot_uniform);
    add("dec.out.b", 1, 1, ad::Init::zeros);
  }
}

std::size_t LinkModel::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return i;
  }
  throw ContractError("unknown parameter: " + name);
}

ad::Tensor LinkModel::node_inputs(ad::Tape& tape, const std::vector<ad::Tensor>& lifted) {
  std::optional<ad::Tensor> x;
  auto append = [&](ad::Tensor t) { x = x ? tape.concat(*x, t, 1) : t; };
  if (raw_.dim > 0) {
    append(tape.constant(raw_.num_nodes, raw_.dim, raw_.values));
  } else if (cfg_.embed_dim > 0) {
    append(lifted[param_index("embed.table")]);
  }
  if (cfg_.labeling.enabled) {
    append(tape.constant(labels_.num_nodes, labels_.dim, labels_.values));
  }
  return *x;
}

ad::Tensor LinkModel::encode(ad::Tape& tape, const std::vector<ad::Tensor>& lifted,
                             bool train_mode, std::uint64_t dropout_seed) {
  ad::Tensor h = node_inputs(tape, lifted);
  const int K = cfg_.encoder.layers;
  for (int k = 0; k < K; ++k) {
    const std::string prefix = "enc.l" + std::to_string(k) + ".";
    switch (cfg_.encoder.kind) {
      case EncoderKind::dirgnn: {
        ad::Tensor mean_in = tape.mean_rows(h, in_groups_);
        ad::Tensor mean_out = tape.mean_rows(h, out_groups_);
        ad::Tensor m_in = tape.add(tape.matmul(h, lifted[param_index(prefix + "w_in_self")]),
                                   tape.matmul(mean_in, lifted[param_index(prefix + "w_in")]));
        ad::Tensor m_out = tape.add(tape.matmul(h, lifted[param_index(prefix + "w_out_self")]),
                                    tape.matmul(mean_out, lifted[param_index(prefix + "w_out")]));
        h = tape.add(tape.scale(m_in, cfg_.encoder.alpha),
                     tape.scale(m_out, 1.0 - cfg_.encoder.alpha));
        break;
      }
      case EncoderKind::graphsage: {
        ad::Tensor mean_n = tape.mean_rows(h, sym_groups_);
        h = tape.add(tape.matmul(h, lifted[param_index(prefix + "w_self")]),
                     tape.matmul(mean_n, lifted[param_index(prefix + "w_neigh")]));
        break;
      }
      case EncoderKind::gcn: {
        ad::Tensor propagated = tape.aggregate_rows(h, gcn_groups_, gcn_weights_);
        h = tape.matmul(propagated, lifted[param_index(prefix + "w")]);
        break;
      }
      case EncoderKind::mlp: {
        h = tape.add(tape.matmul(h, lifted[param_index(prefix + "w")]),
                     lifted[param_index(prefix + "b")]);
        break;
      }
    }
    if (k < K - 1) {
      h = tape.relu(h);
      if (cfg_.encoder.dropout > 0) {
        h = tape.dropout(h, cfg_.encoder.dropout, derive_seed(dropout_seed, 100 + k), train_mode);
      }
    }
  }
  return h;
}

ad::Tensor LinkModel::structural_tensor(ad::Tape& tape, const std::vector<Edge>& edges) {
  const std::size_t dim_full = featurizer_->dim();
  const std::size_t dim_undir = featurize::undirected_feature_dim(cfg_.feature_radius);
  const std::size_t offset =
      cfg_.structural == StructuralMode::undirected_only ? dim_full - dim_undir : 0;
  std::vector<double> z;
  z.reserve(edges.size() * structural_dim_);
  for (const Edge& e : edges) {
    const std::vector<double>& row = featurizer_->features(e.first, e.second);
    for (std::size_t j = offset; j < dim_full; ++j) {
      z.push_back(cfg_.structural_log1p ? std::log1p(row[j]) : row[j]);
    }
  }
  return tape.constant(edges.size(), structural_dim_, std::move(z));
}

ad::Tensor LinkModel::decode(ad::Tape& tape, const std::vector<ad::Tensor>& lifted,
                             ad::Tensor embeddings, const std::vector<Edge>& edges,
                             bool train_mode, std::uint64_t dropout_seed) {
  std::vector<std::uint32_t> src, dst;
  src.reserve(edges.size());
  dst.reserve(edges.size());
  for (const Edge& e : edges) {
    src.push_back(e.first);
    dst.push_back(e.second);
  }
  ad::Tensor e_u = tape.take_rows(embeddings, src);
  ad::Tensor e_v = tape.take_rows(embeddings, dst);
  const std::size_t d_enc = std::size_t(cfg_.encoder.out_dim);

  auto row_dot = [&](ad::Tensor a, ad::Tensor b) {
    ad::Tensor prod = tape.elementwise_mul(a, b);
    return tape.matmul(prod, tape.constant(d_enc, 1, std::vector<double>(d_enc, 1.0)));
  };
  auto mlp = [&](ad::Tensor x) {
    std::size_t li = 0;
    for (std::size_t i = 0; i < cfg_.decoder.hidden.size(); ++i) {
      const std::string prefix = "dec.l" + std::to_string(li++) + ".";
      x = tape.add(tape.matmul(x, lifted[param_index(prefix + "w")]),
                   lifted[param_index(prefix + "b")]);
      x = tape.relu(x);
      if (cfg_.decoder.dropout > 0) {
        x = tape.dropout(x, cfg_.decoder.dropout, derive_seed(dropout_seed, 200 + i), train_mode);
      }
    }
    return tape.add(tape.matmul(x, lifted[param_index("dec.out.w")]),
                    lifted[param_index("dec.out.b")]);
  };

  switch (cfg_.decoder.kind) {
    case DecoderKind::dp:
      return row_dot(e_u, e_v);
    case DecoderKind::mdp:
      return row_dot(tape.matmul(e_u, lifted[param_index("dec.bilinear_w")]), e_v);
    case DecoderKind::hmlp:
      return mlp(tape.elementwise_mul(e_u, e_v));
    case DecoderKind::mhmlp:
      return mlp(tape.elementwise_mul(
          tape.matmul(e_u, lifted[param_index("dec.bilinear_w")]), e_v));
    case DecoderKind::cmlp: {
      ad::Tensor pair = tape.concat(e_u, e_v, 1);
      if (cfg_.structural != StructuralMode::none) {
        pair = tape.concat(structural_tensor(tape, edges), pair, 1);
      }
      return mlp(pair);
    }
    case DecoderKind::mcmlp:
      return mlp(tape.concat(tape.matmul(e_u, lifted[param_index("dec.bilinear_w")]), e_v, 1));
  }
  throw ContractError("unreachable decoder kind");
}

LinkModel::Forward LinkModel::forward(ad::Tape& tape, const std::vector<Edge>& edges,
                                      bool train_mode, std::uint64_t dropout_seed) {
  Forward fwd;
  fwd.lifted.reserve(params_.size());
  for (const ad::Parameter& p : params_) {
    fwd.lifted.push_back(train_mode ? tape.variable(p.rows, p.cols, p.value)
                                    : tape.constant(p.rows, p.cols, p.value));
  }
  ad::Tensor embeddings = encode(tape, fwd.lifted, train_mode, dropout_seed);
  fwd.logits = decode(tape, fwd.lifted, embeddings, edges, train_mode, dropout_seed);
  return fwd;
}

LinkModel::StepResult LinkModel::loss_and_grads(const std::vector<Edge>& edges,
                                                const std::vector<double>& targets,
                                                std::uint64_t dropout_seed) {
  ad::Tape tape;
  Forward fwd = forward(tape, edges, true, dropout_seed);
  ad::Tensor loss = tape.bce_with_logits(fwd.logits, targets);
  StepResult result;
  result.loss = loss.scalar();
  tape.backward(loss);
  result.grads.reserve(params_.size());
  for (const ad::Tensor& t : fwd.lifted) {
    auto g = t.grad();
    result.grads.emplace_back(g.begin(), g.end());
  }
  return result;
}

std::vector<double> LinkModel::score(const std::vector<Edge>& edges) {
  ad::Tape tape;
  Forward fwd = forward(tape, edges, false, 0);
  auto v = fwd.logits.value();
  return {v.begin(), v.end()};
}

eval::BatchScorer LinkModel::scorer() {
  // Compute node embeddings once; decode each batch against the snapshot.
  auto embeddings = std::make_shared<std::optional<std::vector<double>>>();
  return [this, embeddings](const std::vector<Edge>& edges) {
    if (!embeddings->has_value()) {
      ad::Tape tape;
      std::vector<ad::Tensor> lifted;
      lifted.reserve(params_.size());
      for (const ad::Parameter& p : params_) {
        lifted.push_back(tape.constant(p.rows, p.cols, p.value));
      }
      ad::Tensor e = encode(tape, lifted, false, 0);
      auto v = e.value();
      embeddings->emplace(v.begin(), v.end());
    }
    ad::Tape tape;
    std::vector<ad::Tensor> lifted;
    lifted.reserve(params_.size());
    for (const ad::Parameter& p : params_) {
      lifted.push_back(tape.constant(p.rows, p.cols, p.value));
    }
    ad::Tensor e = tape.constant(g_.num_nodes(), std::size_t(cfg_.encoder.out_dim), **embeddings);
    ad::Tensor logits = decode(tape, lifted, e, edges, false, 0);
    auto v = logits.value();
    return std::vector<double>(v.begin(), v.end());
  };
}

std::string LinkModel::checkpoint_json(int fold, std::uint64_t seed) const {
  nlohmann::json j;
  j["fold"] = fold;
  j["seed"] = seed;
  j["tag"] = cfg_.tag();
  nlohmann::json landmarks = nlohmann::json::array();
  for (NodeId t : landmarks_) landmarks.push_back(t);
  j["landmarks"] = landmarks;
  nlohmann::json params;
  for (const ad::Parameter& p : params_) {
    params[p.name] = {{"rows", p.rows}, {"cols", p.cols}, {"values", p.value}};
  }
  j["params"] = params;
  return j.dump(2);
}

void LinkModel::load_checkpoint_values(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  const nlohmann::json& params = j.at("params");
  for (ad::Parameter& p : params_) {
    if (!params.contains(p.name)) {
      throw ContractError("checkpoint missing parameter: " + p.name);
    }
    const nlohmann::json& entry = params.at(p.name);
    if (entry.at("rows").get<std::size_t>() != p.rows ||
        entry.at("cols").get<std::size_t>() != p.cols) {
      throw ShapeError("checkpoint shape mismatch for " + p.name);
    }
    p.value = entry.at("values").get<std::vector<double>>();
  }
}

TrainResult train(LinkModel& model, const sampling::EdgeSplit& split,
                  const DirectedGraph& g_candidates, const TrainConfig& cfg) {
  if (split.train_pos.empty()) throw ContractError("train: empty training split");
  const std::vector<Edge> all_pos = split.all_edges();
  const DirectedGraph& g_train = model.graph();

  ad::AdamConfig adam;
  adam.lr = cfg.lr;
  std::vector<ad::AdamState> states(model.parameters().size());

  TrainResult result;
  std::vector<ad::Parameter> best_params = model.parameters();
  int evals_without_improvement = 0;
  bool has_validation = !split.valid_pos.empty();

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    sampling::NegativeSet negs =
        sampling::sample_negatives(g_train, split.train_pos.size(), cfg.negative_mode,
                                   derive_seed(cfg.seed, std::uint64_t(epoch), 11), all_pos);
    std::vector<Edge> batch = split.train_pos;
    batch.insert(batch.end(), negs.edges.begin(), negs.edges.end());
    std::vector<double> targets(split.train_pos.size(), 1.0);
    targets.resize(batch.size(), 0.0);

    LinkModel::StepResult step =
        model.loss_and_grads(batch, targets, derive_seed(cfg.seed, std::uint64_t(epoch), 13));
    if (!std::isfinite(step.loss)) {
      throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch));
    }
    for (std::size_t i = 0; i < model.parameters().size(); ++i) {
      ad::adam_step(model.parameters()[i], step.grads[i], states[i], adam);
    }

    EpochStat stat;
    stat.epoch = epoch;
    stat.loss = step.loss;

    const bool eval_now = has_validation && (epoch % std::max(1, cfg.eval_every) == 0);
    if (eval_now) {
      eval::RankingReport report =
          eval::evaluate(model.scorer(), split.valid_pos, g_candidates, cfg.val_protocol);
      stat.val_mrr = report.mrr_value;
      if (result.best_epoch < 0 || report.mrr_value > result.best_val_mrr) {
        result.best_val_mrr = report.mrr_value;
        result.best_epoch = epoch;
        best_params = model.parameters();
        evals_without_improvement = 0;
      } else {
        ++evals_without_improvement;
      }
    }
    result.history.push_back(stat);
    result.epochs_run = epoch + 1;
    if (has_validation && evals_without_improvement >= cfg.patience) break;
  }

  if (has_validation && result.best_epoch >= 0) {
    model.parameters() = best_params;
  } else {
    result.best_epoch = result.epochs_run - 1;
  }
  return result;
}

void write_history_csv(std::ostream& out, const std::vector<EpochStat>& history) {
  out << "epoch,loss,val_mrr\n";
  for (const EpochStat& s : history) {
    out << s.epoch << ',' << s.loss << ',';
    if (s.val_mrr >= 0) out << s.val_mrr;
    out << '\n';
  }
}

SearchResult random_search(const SearchSpace& space, std::size_t trials, std::uint64_t seed,
                           const std::function<double(const TrialConfig&)>& objective) {
  if (trials < 1) throw ContractError("random_search: trials must be >= 1");
  if (space.layers.empty() || space.hidden.empty() || space.final_dim.empty()) {
    throw ContractError("random_search: empty choice set in space");
  }
  SearchResult result;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    TrialConfig tc;
    tc.layers = space.layers[rng.bounded(space.layers.size())];
    tc.hidden = space.hidden[rng.bounded(space.hidden.size())];
    tc.final_dim = space.final_dim[rng.bounded(space.final_dim.size())];
    tc.dropout = rng.uniform(space.dropout_lo, space.dropout_hi);
    tc.lr = rng.uniform(space.lr_lo, space.lr_hi);
    Trial trial;
    trial.config = tc;
    trial.objective = objective(tc);
    result.trials.push_back(trial);
    if (trial.objective > result.trials[result.best_index].objective) {
      result.best_index = i;
    }
  }
  return result;
}

}  // namespace dirlp::model
