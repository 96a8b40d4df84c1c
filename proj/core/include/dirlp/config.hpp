#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dirlp/eval.hpp"
#include "dirlp/heuristics.hpp"
#include "dirlp/model.hpp"
#include "dirlp/sampling.hpp"

namespace dirlp::cli {

struct DatasetConfig {
  std::string name = "dataset";
  std::string edges;     // edge-list path
  std::string features;  // feature CSV path, empty for featureless
};

struct SplitConfig {
  std::array<double, 3> ratios{0.7, 0.1, 0.2};
  std::size_t folds = 10;
};

struct TrainSection {
  double lr = 0.01;
  int max_epochs = 200;
  int patience = 50;
  int eval_every = 1;
  sampling::NegativeMode negative_mode = sampling::NegativeMode::directed;
};

struct EvalSection {
  std::size_t candidates = 100;
  int hits_k = 20;
  eval::TiePolicy tie_policy = eval::TiePolicy::mid;
};

/// One experiment, fully serializable to/from JSON. Unknown keys are
/// rejected; every run writes the resolved document back for provenance.
struct ExperimentConfig {
  DatasetConfig dataset;
  SplitConfig split;
  model::ModelConfig model_config;
  TrainSection train;
  EvalSection eval_section;
  std::vector<heuristics::HeuristicSpec> heuristic_specs;
  std::uint64_t seed = 7;
  int workers = 1;
  std::string out_dir = "runs/out";

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json_text() const;

  /// FNV-1a 64 over the resolved JSON, as 16 hex digits.
  std::string hash() const;

  eval::Protocol protocol(std::uint64_t eval_seed) const;
  model::TrainConfig train_config(std::uint64_t train_seed, std::uint64_t eval_seed) const;
};

}  // namespace dirlp::cli
