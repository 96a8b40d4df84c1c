#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dirlp/commands.hpp"
#include "dirlp/error.hpp"
#include "dirlp/version.hpp"

namespace {

using dirlp::cli::ExperimentConfig;

ExperimentConfig load_config(const std::string& path, std::uint64_t seed_override, bool has_seed,
                             const std::string& out_override, int workers_override) {
  ExperimentConfig cfg = ExperimentConfig::from_json_file(path);
  if (has_seed) cfg.seed = seed_override;
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (workers_override > 0) cfg.workers = workers_override;
  return cfg;
}

int map_error(const dirlp::Error& ex) {
  using Kind = dirlp::Error::Kind;
  switch (ex.kind()) {
    case Kind::numeric:
      return dirlp::cli::kExitNumericError;
    case Kind::parse:
    case Kind::range:
    case Kind::domain:
    case Kind::shape:
    case Kind::contract:
    case Kind::exhaustion:
    case Kind::ingest:
      return dirlp::cli::kExitDataError;
  }
  return dirlp::cli::kExitDataError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dirlp: directed link prediction experiments"};
  app.set_version_flag("--version", std::string(dirlp::kVersion) + " (" + dirlp::kBuildId + ")");
  app.require_subcommand(1);

  // Shared flags, bound per subcommand.
  struct Common {
    std::string config;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out;
    int workers = 0;
  };
  auto add_common = [](CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "experiment config JSON")->required();
    cmd->add_option("--seed", c.seed, "override the config seed")->each([&c](const std::string&) {
      c.has_seed = true;
    });
    cmd->add_option("--out", c.out, "override the output directory");
    cmd->add_option("--workers", c.workers, "worker threads for folds/cells");
  };

  // ingest
  dirlp::cli::IngestOptions ingest;
  CLI::App* cmd_ingest = app.add_subcommand("ingest", "relabel a raw edge list into a dataset dir");
  cmd_ingest->add_option("--edges", ingest.edges_path, "raw edge list")->required();
  cmd_ingest->add_option("--features", ingest.features_path, "raw feature CSV (first column: id)");
  cmd_ingest->add_option("--id-map", ingest.id_map_path, "predefined \"token id\" map");
  cmd_ingest->add_option("--out", ingest.out_dir, "dataset output directory")->required();

  Common split_c, heur_c, train_c, ablate_c, eval_c;
  CLI::App* cmd_split = app.add_subcommand("split", "write per-fold train/valid/test splits");
  add_common(cmd_split, split_c);

  CLI::App* cmd_heur = app.add_subcommand("heuristic", "run heuristic baselines over folds");
  add_common(cmd_heur, heur_c);

  CLI::App* cmd_train = app.add_subcommand("train", "train the configured model over folds");
  add_common(cmd_train, train_c);
  std::string search_arg;
  cmd_train->add_option("--search", search_arg, "random search, e.g. trials=48");

  CLI::App* cmd_ablate = app.add_subcommand("ablate", "sweep one design axis");
  add_common(cmd_ablate, ablate_c);
  std::string axis;
  cmd_ablate->add_option("--axis", axis, "encoder|decoder|labeling|sampling|features")->required();

  CLI::App* cmd_eval = app.add_subcommand("evaluate", "re-evaluate a checkpoint on its test fold");
  add_common(cmd_eval, eval_c);
  std::string checkpoint;
  cmd_eval->add_option("--checkpoint", checkpoint, "checkpoint JSON path")->required();

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the built-in oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dirlp::cli::kExitUsage;
  }

  try {
    if (cmd_ingest->parsed()) {
      dirlp::cli::cmd_ingest(ingest, std::cout);
    } else if (cmd_split->parsed()) {
      dirlp::cli::cmd_split(
          load_config(split_c.config, split_c.seed, split_c.has_seed, split_c.out, split_c.workers),
          std::cout);
    } else if (cmd_heur->parsed()) {
      dirlp::cli::cmd_heuristic(
          load_config(heur_c.config, heur_c.seed, heur_c.has_seed, heur_c.out, heur_c.workers),
          std::cout);
    } else if (cmd_train->parsed()) {
      std::size_t trials = 0;
      if (!search_arg.empty()) {
        const std::string prefix = "trials=";
        if (search_arg.rfind(prefix, 0) != 0) {
          std::cerr << "error: --search expects trials=N\n";
          return dirlp::cli::kExitUsage;
        }
        trials = std::stoull(search_arg.substr(prefix.size()));
      }
      dirlp::cli::cmd_train(
          load_config(train_c.config, train_c.seed, train_c.has_seed, train_c.out, train_c.workers),
          trials, std::cout);
    } else if (cmd_ablate->parsed()) {
      dirlp::cli::cmd_ablate(load_config(ablate_c.config, ablate_c.seed, ablate_c.has_seed,
                                         ablate_c.out, ablate_c.workers),
                             axis, std::cout);
    } else if (cmd_eval->parsed()) {
      dirlp::cli::cmd_evaluate(
          load_config(eval_c.config, eval_c.seed, eval_c.has_seed, eval_c.out, eval_c.workers),
          checkpoint, std::cout);
    } else if (cmd_verify->parsed()) {
      int failures = dirlp::cli::cmd_verify(std::cout);
      if (failures > 0) {
        std::cerr << failures << " verification check(s) failed\n";
        return dirlp::cli::kExitVerifyFailure;
      }
    }
  } catch (const dirlp::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return map_error(ex);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return dirlp::cli::kExitDataError;
  }
  return dirlp::cli::kExitOk;
}
