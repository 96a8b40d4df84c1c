#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dirlp/config.hpp"

namespace dirlp::cli {

/// Exit codes shared by the CLI surface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitNumericError = 3;
inline constexpr int kExitVerifyFailure = 4;

struct IngestOptions {
  std::string edges_path;
  std::string features_path;  // optional
  std::string id_map_path;    // optional predefined "token index" mapping
  std::string out_dir;
};

struct IngestStats {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  double density = 0;
  double bidirectional_pair_ratio = 0;
  std::size_t dropped_self_loops = 0;
  std::size_t feature_dim = 0;
};

/// Relabel arbitrary ids to dense 0..n-1 and write the canonical dataset
/// directory: edges.txt, id_map.tsv, stats.json and (when given) a
/// remapped features.csv.
IngestStats cmd_ingest(const IngestOptions& options, std::ostream& log);

/// Persist every fold as train/valid/test edge lists plus a JSON manifest.
void cmd_split(const ExperimentConfig& config, std::ostream& log);

/// Run the configured heuristic specs over all folds; one results row per
/// (fold, method) with MRR, Hits@k and wall time.
void cmd_heuristic(const ExperimentConfig& config, std::ostream& log);

/// Train the configured model on every fold: checkpoint + history + one
/// results row per fold. search_trials > 0 first runs a seeded random
/// search (fold 0 validation MRR) over the hyperparameter space and adopts
/// the best trial.
void cmd_train(const ExperimentConfig& config, std::size_t search_trials, std::ostream& log);

/// Sweep one design axis, everything else fixed: encoder | decoder |
/// labeling | sampling | features. Emits per-cell rows plus a
/// mean +/- std summary per variant.
void cmd_ablate(const ExperimentConfig& config, const std::string& axis, std::ostream& log);

/// Re-evaluate a stored checkpoint on its fold's test split.
void cmd_evaluate(const ExperimentConfig& config, const std::string& checkpoint_path,
                  std::ostream& log);

/// Built-in oracle suite; prints one pass/fail line per check and returns
/// the number of failures.
int cmd_verify(std::ostream& log);

}  // namespace dirlp::cli
