#include "dirlp/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dirlp/datasets.hpp"
#include "dirlp/error.hpp"
#include "dirlp/oracle.hpp"
#include "dirlp/rng.hpp"
#include "dirlp/selfcheck.hpp"
#include "dirlp/version.hpp"

namespace dirlp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IngestError("cannot create directory " + dir + ": " + ec.message());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ResultRow {
  std::string command;
  std::string dataset;
  int fold = 0;
  std::uint64_t seed = 0;
  std::string method;
  double mrr = 0;
  double hits = 0;
  std::string detail;
};

constexpr const char* kResultsHeader =
    "config_hash,build_id,command,dataset,fold,seed,method,mrr,hits,detail\n";

void append_results(const ExperimentConfig& config, const std::vector<ResultRow>& rows) {
  ensure_dir(config.out_dir);
  const std::string path = config.out_dir + "/results.csv";
  const bool fresh = !fs::exists(path);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw IngestError("cannot open " + path);
  if (fresh) out << kResultsHeader;
  const std::string hash = config.hash();
  for (const ResultRow& r : rows) {
    out << hash << ',' << kBuildId << ',' << r.command << ',' << r.dataset << ',' << r.fold << ','
        << r.seed << ',' << r.method << ',' << fmt_double(r.mrr) << ',' << fmt_double(r.hits)
        << ',' << r.detail << '\n';
  }
}

void write_resolved_config(const ExperimentConfig& config) {
  ensure_dir(config.out_dir);
  write_file(config.out_dir + "/config.resolved.json", config.to_json_text() + "\n");
}

/// Index-sharded worker pool; job results must be written to
/// pre-allocated slots so output order is independent of scheduling.
void run_parallel(std::size_t jobs, int workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1, workers);
  if (jobs == 0) return;
  if (workers == 1 || jobs == 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs) break;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, int(jobs));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct LoadedDataset {
  DirectedGraph g;
  NodeFeatures features;
};

LoadedDataset load_dataset(const ExperimentConfig& config) {
  if (config.dataset.edges.empty()) {
    throw ContractError("config: dataset.edges path is required");
  }
  LoadedDataset ds;
  ds.g = load_edge_list_file(config.dataset.edges);
  if (!config.dataset.features.empty()) {
    ds.features = load_feature_csv_file(config.dataset.features, ds.g.num_nodes());
  } else {
    ds.features.num_nodes = ds.g.num_nodes();
    ds.features.dim = 0;
  }
  return ds;
}

struct FoldOutcome {
  model::TrainResult train_result;
  double test_mrr = 0;
  double test_hits = 0;
  std::string checkpoint;
  std::string history;
};

/// Shared fold runner for train/ablate/search: train on the fold's
/// training graph, early-stop on validation, report test metrics with
/// candidates excluded against the full graph.
FoldOutcome run_fold(const ExperimentConfig& config, const model::ModelConfig& mc,
                     const LoadedDataset& ds, const sampling::EdgeSplit& split, int fold,
                     double lr_override = -1) {
  DirectedGraph g_train = sampling::training_graph(ds.g, split);
  model::LinkModel net(mc, g_train, ds.features, derive_seed(config.seed, fold, 3));
  model::TrainConfig tc = config.train_config(derive_seed(config.seed, fold, 5),
                                              derive_seed(config.seed, fold, 7));
  if (lr_override > 0) tc.lr = lr_override;
  FoldOutcome out;
  out.train_result = model::train(net, split, ds.g, tc);
  eval::RankingReport report =
      eval::evaluate(net.scorer(), split.test_pos, ds.g, config.protocol(derive_seed(config.seed, fold, 7)));
  out.test_mrr = report.mrr_value;
  out.test_hits = report.hits_value;
  out.checkpoint = net.checkpoint_json(fold, config.seed);
  std::ostringstream hist;
  model::write_history_csv(hist, out.train_result.history);
  out.history = hist.str();
  return out;
}

std::string train_detail(const FoldOutcome& out) {
  return "best_epoch=" + std::to_string(out.train_result.best_epoch) +
         ";epochs=" + std::to_string(out.train_result.epochs_run) +
         ";val_mrr=" + fmt_double(out.train_result.best_val_mrr);
}

}  // namespace

IngestStats cmd_ingest(const IngestOptions& options, std::ostream& log) {
  if (options.edges_path.empty() || options.out_dir.empty()) {
    throw ContractError("ingest needs an edge list and an output directory");
  }
  ensure_dir(options.out_dir);

  std::unordered_map<std::string, NodeId> id_map;
  std::vector<std::string> tokens;  // token per dense id
  bool frozen_map = false;
  if (!options.id_map_path.empty()) {
    std::ifstream map_in(options.id_map_path);
    if (!map_in) throw IngestError("cannot open id map: " + options.id_map_path);
    std::string token;
    std::uint64_t id;
    while (map_in >> token >> id) {
      if (id_map.count(token)) throw IngestError("id map: duplicate token " + token);
      id_map[token] = NodeId(id);
    }
    tokens.resize(id_map.size());
    for (const auto& [tok, id] : id_map) {
      if (id >= tokens.size()) throw IngestError("id map: ids must be dense 0..n-1");
      tokens[id] = tok;
    }
    frozen_map = true;
  }

  auto intern = [&](const std::string& token, std::size_t line_no) -> NodeId {
    auto it = id_map.find(token);
    if (it != id_map.end()) return it->second;
    if (frozen_map) {
      throw IngestError("edge list line " + std::to_string(line_no) + ": token \"" + token +
                        "\" missing from the id map");
    }
    NodeId id = NodeId(tokens.size());
    id_map.emplace(token, id);
    tokens.push_back(token);
    return id;
  };

  std::ifstream in(options.edges_path);
  if (!in) throw IngestError("cannot open edge list: " + options.edges_path);
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra)) {
      throw IngestError("edge list line " + std::to_string(line_no) + ": expected \"src dst\"");
    }
    NodeId src = intern(a, line_no);  // left token interns first
    NodeId dst = intern(b, line_no);
    edges.emplace_back(src, dst);
  }
  if (tokens.empty()) throw IngestError("edge list has no edges");

  DirectedGraph g = DirectedGraph::from_edges(NodeId(tokens.size()), edges);

  IngestStats stats;
  stats.num_nodes = g.num_nodes();
  stats.num_edges = g.num_edges();
  stats.density = datasets::density(g);
  stats.bidirectional_pair_ratio = datasets::bidirectional_pair_ratio(g);
  stats.dropped_self_loops = g.dropped_self_loops();

  // Canonical edge list.
  {
    std::ostringstream os;
    save_edge_list(os, g);
    write_file(options.out_dir + "/edges.txt", os.str());
  }
  // Id map, ordered by dense id.
  {
    std::ostringstream os;
    for (NodeId id = 0; id < tokens.size(); ++id) os << tokens[id] << '\t' << id << '\n';
    write_file(options.out_dir + "/id_map.tsv", os.str());
  }
  // Features, remapped to dense ids.
  if (!options.features_path.empty()) {
    std::ifstream fin(options.features_path);
    if (!fin) throw IngestError("cannot open features: " + options.features_path);
    std::string header;
    if (!std::getline(fin, header)) throw IngestError("feature CSV: empty file");
    const std::size_t dim = std::size_t(std::count(header.begin(), header.end(), ','));
    std::vector<std::vector<double>> rows(tokens.size());
    std::vector<bool> seen(tokens.size(), false);
    std::size_t fline = 1;
    while (std::getline(fin, line)) {
      ++fline;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string cell;
      if (!std::getline(ls, cell, ',')) continue;
      auto it = id_map.find(cell);
      if (it == id_map.end()) {
        throw IngestError("feature CSV line " + std::to_string(fline) + ": unknown id \"" + cell +
                          "\"");
      }
      std::vector<double> values;
      values.reserve(dim);
      while (std::getline(ls, cell, ',')) {
        try {
          values.push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw IngestError("feature CSV line " + std::to_string(fline) + ": bad number");
        }
      }
      if (values.size() != dim) {
        throw IngestError("feature CSV line " + std::to_string(fline) + ": expected " +
                          std::to_string(dim) + " values");
      }
      seen[it->second] = true;
      rows[it->second] = std::move(values);
    }
    for (std::size_t id = 0; id < seen.size(); ++id) {
      if (!seen[id]) {
        throw IngestError("feature CSV: node \"" + tokens[id] + "\" has no feature row");
      }
    }
    std::ostringstream os;
    os << "id";
    for (std::size_t j = 0; j < dim; ++j) os << ",f" << j;
    os << '\n';
    for (std::size_t id = 0; id < rows.size(); ++id) {
      os << id;
      for (double v : rows[id]) os << ',' << fmt_double(v);
      os << '\n';
    }
    write_file(options.out_dir + "/features.csv", os.str());
    stats.feature_dim = dim;
  }
  // Stats, Appendix-table style.
  {
    json j;
    j["num_nodes"] = stats.num_nodes;
    j["num_edges"] = stats.num_edges;
    j["density"] = stats.density;
    j["bidirectional_pair_ratio"] = stats.bidirectional_pair_ratio;
    j["dropped_self_loops"] = stats.dropped_self_loops;
    j["feature_dim"] = stats.feature_dim;
    write_file(options.out_dir + "/stats.json", j.dump(2) + "\n");
  }
  log << "ingested " << stats.num_nodes << " nodes, " << stats.num_edges << " edges into "
      << options.out_dir << " (density " << fmt_double(stats.density) << ", bidir "
      << fmt_double(stats.bidirectional_pair_ratio) << ", dropped self-loops "
      << stats.dropped_self_loops << ")\n";
  return stats;
}

void cmd_split(const ExperimentConfig& config, std::ostream& log) {
  write_resolved_config(config);
  LoadedDataset ds = load_dataset(config);
  auto splits = sampling::make_splits(ds.g, config.split.ratios, config.seed, config.split.folds);
  for (std::size_t fold = 0; fold < splits.size(); ++fold) {
    const std::string dir = config.out_dir + "/splits/fold" + std::to_string(fold);
    ensure_dir(dir);
    auto dump = [&](const char* name, const std::vector<Edge>& edges) {
      std::ostringstream os;
      for (const Edge& e : edges) os << e.first << ' ' << e.second << '\n';
      write_file(dir + "/" + name, os.str());
    };
    dump("train.edges", splits[fold].train_pos);
    dump("valid.edges", splits[fold].valid_pos);
    dump("test.edges", splits[fold].test_pos);
    json manifest;
    manifest["seed"] = splits[fold].seed;
    manifest["ratios"] = std::vector<double>{config.split.ratios[0], config.split.ratios[1],
                                             config.split.ratios[2]};
    manifest["mode"] = sampling::to_string(config.train.negative_mode);
    manifest["C"] = config.eval_section.candidates;
    write_file(dir + "/manifest.json", manifest.dump(2) + "\n");
  }
  log << "wrote " << splits.size() << " folds under " << config.out_dir << "/splits\n";
}

void cmd_heuristic(const ExperimentConfig& config, std::ostream& log) {
  if (config.heuristic_specs.empty()) {
    throw ContractError("config: heuristics list is empty");
  }
  write_resolved_config(config);
  LoadedDataset ds = load_dataset(config);
  auto splits = sampling::make_splits(ds.g, config.split.ratios, config.seed, config.split.folds);

  const std::size_t jobs = splits.size() * config.heuristic_specs.size();
  std::vector<ResultRow> rows(jobs);
  run_parallel(jobs, config.workers, [&](std::size_t job) {
    const std::size_t fold = job / config.heuristic_specs.size();
    const heuristics::HeuristicSpec requested = config.heuristic_specs[job % config.heuristic_specs.size()];
    const auto t0 = std::chrono::steady_clock::now();

    DirectedGraph g_train = sampling::training_graph(ds.g, splits[fold]);
    eval::Protocol protocol = config.protocol(derive_seed(config.seed, fold, 7));

    heuristics::HeuristicSpec resolved = requested;
    std::string picked;
    if (requested.family != heuristics::Family::lp &&
        requested.variant == heuristics::Variant::asym) {
      // Table-style "asym": the directional variant with the best
      // validation MRR.
      resolved.variant = heuristics::best_directional_variant(g_train, requested.family,
                                                              splits[fold].valid_pos, protocol);
      picked = heuristics::to_string(resolved.variant);
    }
    heuristics::HeuristicScorer scorer(g_train, resolved);
    eval::RankingReport report =
        eval::evaluate(scorer.batch(), splits[fold].test_pos, ds.g, protocol);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    ResultRow row;
    row.command = "heuristic";
    row.dataset = config.dataset.name;
    row.fold = int(fold);
    row.seed = splits[fold].seed;
    row.method = requested.name();
    row.mrr = report.mrr_value;
    row.hits = report.hits_value;
    row.detail = (picked.empty() ? std::string() : "picked=" + picked + ";") +
                 "wall_ms=" + fmt_double(wall_ms);
    rows[job] = row;
  });
  append_results(config, rows);
  for (const ResultRow& r : rows) {
    log << r.method << " fold " << r.fold << ": mrr " << fmt_double(r.mrr) << ", hits@"
        << config.eval_section.hits_k << " " << fmt_double(r.hits) << "\n";
  }
}

void cmd_train(const ExperimentConfig& config_in, std::size_t search_trials, std::ostream& log) {
  ExperimentConfig config = config_in;
  LoadedDataset ds = load_dataset(config);
  auto splits = sampling::make_splits(ds.g, config.split.ratios, config.seed, config.split.folds);

  if (search_trials > 0) {
    // Seeded random search scored by fold-0 validation MRR; the winning
    // trial becomes the run configuration.
    model::SearchSpace space;
    model::SearchResult search = model::random_search(
        space, search_trials, derive_seed(config.seed, 101), [&](const model::TrialConfig& tc) {
          ExperimentConfig trial_cfg = config;
          trial_cfg.model_config.encoder.layers = tc.layers;
          trial_cfg.model_config.encoder.hidden_dim = tc.hidden;
          trial_cfg.model_config.encoder.out_dim = tc.final_dim;
          trial_cfg.model_config.encoder.dropout = tc.dropout;
          trial_cfg.model_config.decoder.dropout = tc.dropout;
          trial_cfg.model_config.decoder.hidden =
              std::vector<int>(std::size_t(tc.layers), tc.hidden);
          FoldOutcome out = run_fold(trial_cfg, trial_cfg.model_config, ds, splits[0], 0, tc.lr);
          return out.train_result.best_val_mrr;
        });
    const model::TrialConfig& best = search.best().config;
    config.model_config.encoder.layers = best.layers;
    config.model_config.encoder.hidden_dim = best.hidden;
    config.model_config.encoder.out_dim = best.final_dim;
    config.model_config.encoder.dropout = best.dropout;
    config.model_config.decoder.dropout = best.dropout;
    config.model_config.decoder.hidden = std::vector<int>(std::size_t(best.layers), best.hidden);
    config.train.lr = best.lr;

    ensure_dir(config.out_dir);
    std::ostringstream os;
    os << "trial,layers,hidden,final_dim,dropout,lr,val_mrr\n";
    for (std::size_t i = 0; i < search.trials.size(); ++i) {
      const model::Trial& t = search.trials[i];
      os << i << ',' << t.config.layers << ',' << t.config.hidden << ',' << t.config.final_dim
         << ',' << fmt_double(t.config.dropout) << ',' << fmt_double(t.config.lr) << ','
         << fmt_double(t.objective) << '\n';
    }
    write_file(config.out_dir + "/search_trials.csv", os.str());
    log << "search: best trial " << search.best_index << " (val_mrr "
        << fmt_double(search.best().objective) << ")\n";
  }

  write_resolved_config(config);
  std::vector<ResultRow> rows(splits.size());
  run_parallel(splits.size(), config.workers, [&](std::size_t fold) {
    FoldOutcome out = run_fold(config, config.model_config, ds, splits[fold], int(fold));
    ensure_dir(config.out_dir);
    write_file(config.out_dir + "/checkpoint_fold" + std::to_string(fold) + ".json",
               out.checkpoint);
    write_file(config.out_dir + "/history_fold" + std::to_string(fold) + ".csv", out.history);
    ResultRow row;
    row.command = "train";
    row.dataset = config.dataset.name;
    row.fold = int(fold);
    row.seed = splits[fold].seed;
    row.method = config.model_config.tag();
    row.mrr = out.test_mrr;
    row.hits = out.test_hits;
    row.detail = train_detail(out);
    rows[fold] = row;
  });
  append_results(config, rows);
  for (const ResultRow& r : rows) {
    log << r.method << " fold " << r.fold << ": test mrr " << fmt_double(r.mrr) << ", hits@"
        << config.eval_section.hits_k << " " << fmt_double(r.hits) << " (" << r.detail << ")\n";
  }
}

void cmd_ablate(const ExperimentConfig& config, const std::string& axis, std::ostream& log) {
  write_resolved_config(config);
  LoadedDataset ds = load_dataset(config);
  auto splits = sampling::make_splits(ds.g, config.split.ratios, config.seed, config.split.folds);

  struct Cell {
    std::string variant;
    ExperimentConfig cfg;
  };
  std::vector<Cell> cells;
  auto push = [&](const std::string& name, const std::function<void(ExperimentConfig&)>& edit) {
    Cell c{name, config};
    edit(c.cfg);
    cells.push_back(std::move(c));
  };

  if (axis == "encoder") {
    for (auto kind : {model::EncoderKind::gcn, model::EncoderKind::graphsage,
                      model::EncoderKind::dirgnn}) {
      push(model::to_string(kind),
           [kind](ExperimentConfig& c) { c.model_config.encoder.kind = kind; });
    }
  } else if (axis == "decoder") {
    for (auto kind : {model::DecoderKind::dp, model::DecoderKind::hmlp, model::DecoderKind::cmlp,
                      model::DecoderKind::mdp, model::DecoderKind::mhmlp,
                      model::DecoderKind::mcmlp}) {
      // The decoder axis isolates the decoder: structural features stay off
      // (they are defined only for the cmlp path).
      push(model::to_string(kind), [kind](ExperimentConfig& c) {
        c.model_config.decoder.kind = kind;
        c.model_config.structural = model::StructuralMode::none;
      });
    }
  } else if (axis == "labeling") {
    struct L {
      const char* name;
      featurize::LabelMode mode;
      int delta;
      bool directed;
    };
    for (const L& l : {L{"de3-u", featurize::LabelMode::de_k, 3, false},
                       L{"de15-u", featurize::LabelMode::de_k, 15, false},
                       L{"delog-u", featurize::LabelMode::de_log, 0, false},
                       L{"de3-d", featurize::LabelMode::de_k, 3, true},
                       L{"de15-d", featurize::LabelMode::de_k, 15, true},
                       L{"delog-d", featurize::LabelMode::de_log, 0, true}}) {
      push(l.name, [l](ExperimentConfig& c) {
        c.model_config.labeling.enabled = true;
        c.model_config.labeling.mode = l.mode;
        c.model_config.labeling.delta = l.delta;
        c.model_config.labeling.directed = l.directed;
      });
    }
  } else if (axis == "sampling") {
    for (auto mode : {sampling::NegativeMode::undirected, sampling::NegativeMode::directed}) {
      push(sampling::to_string(mode),
           [mode](ExperimentConfig& c) { c.train.negative_mode = mode; });
    }
  } else if (axis == "features") {
    push("undirected", [](ExperimentConfig& c) {
      c.model_config.decoder.kind = model::DecoderKind::cmlp;
      c.model_config.structural = model::StructuralMode::undirected_only;
    });
    push("directed", [](ExperimentConfig& c) {
      c.model_config.decoder.kind = model::DecoderKind::cmlp;
      c.model_config.structural = model::StructuralMode::full;
    });
  } else {
    throw ContractError("unknown ablation axis: " + axis +
                        " (expected encoder|decoder|labeling|sampling|features)");
  }

  const std::size_t jobs = cells.size() * splits.size();
  std::vector<ResultRow> rows(jobs);
  run_parallel(jobs, config.workers, [&](std::size_t job) {
    const std::size_t cell_idx = job / splits.size();
    const std::size_t fold = job % splits.size();
    const Cell& cell = cells[cell_idx];
    FoldOutcome out = run_fold(cell.cfg, cell.cfg.model_config, ds, splits[fold], int(fold));
    ResultRow row;
    row.command = "ablate";
    row.dataset = config.dataset.name;
    row.fold = int(fold);
    row.seed = splits[fold].seed;
    row.method = axis + ":" + cell.variant;
    row.mrr = out.test_mrr;
    row.hits = out.test_hits;
    row.detail = train_detail(out);
    rows[job] = row;
  });
  append_results(config, rows);

  // Per-variant mean +/- sample std over folds.
  std::ostringstream os;
  os << "config_hash,build_id,axis,variant,folds,mean_mrr,std_mrr,mean_hits,std_hits\n";
  for (std::size_t cell_idx = 0; cell_idx < cells.size(); ++cell_idx) {
    double sum_mrr = 0, sum_hits = 0;
    for (std::size_t fold = 0; fold < splits.size(); ++fold) {
      sum_mrr += rows[cell_idx * splits.size() + fold].mrr;
      sum_hits += rows[cell_idx * splits.size() + fold].hits;
    }
    const double n = double(splits.size());
    const double mean_mrr = sum_mrr / n;
    const double mean_hits = sum_hits / n;
    double var_mrr = 0, var_hits = 0;
    for (std::size_t fold = 0; fold < splits.size(); ++fold) {
      const ResultRow& r = rows[cell_idx * splits.size() + fold];
      var_mrr += (r.mrr - mean_mrr) * (r.mrr - mean_mrr);
      var_hits += (r.hits - mean_hits) * (r.hits - mean_hits);
    }
    const double denom = splits.size() > 1 ? n - 1 : 1;
    os << config.hash() << ',' << kBuildId << ',' << axis << ',' << cells[cell_idx].variant << ','
       << splits.size() << ',' << fmt_double(mean_mrr) << ','
       << fmt_double(std::sqrt(var_mrr / denom)) << ',' << fmt_double(mean_hits) << ','
       << fmt_double(std::sqrt(var_hits / denom)) << '\n';
    log << axis << ":" << cells[cell_idx].variant << " mean mrr " << fmt_double(mean_mrr)
        << " +/- " << fmt_double(std::sqrt(var_mrr / denom)) << "\n";
  }
  write_file(config.out_dir + "/ablate_" + axis + "_summary.csv", os.str());
}

void cmd_evaluate(const ExperimentConfig& config, const std::string& checkpoint_path,
                  std::ostream& log) {
  write_resolved_config(config);
  LoadedDataset ds = load_dataset(config);
  json ckpt = json::parse(read_file(checkpoint_path));
  const int fold = ckpt.at("fold").get<int>();
  auto splits = sampling::make_splits(ds.g, config.split.ratios, config.seed, config.split.folds);
  if (fold < 0 || std::size_t(fold) >= splits.size()) {
    throw ContractError("checkpoint fold " + std::to_string(fold) + " outside configured folds");
  }
  DirectedGraph g_train = sampling::training_graph(ds.g, splits[fold]);
  model::LinkModel net(config.model_config, g_train, ds.features,
                       derive_seed(config.seed, std::uint64_t(fold), 3));
  net.load_checkpoint_values(read_file(checkpoint_path));
  eval::RankingReport report = eval::evaluate(net.scorer(), splits[fold].test_pos, ds.g,
                                              config.protocol(derive_seed(config.seed, std::uint64_t(fold), 7)));
  ResultRow row;
  row.command = "evaluate";
  row.dataset = config.dataset.name;
  row.fold = fold;
  row.seed = splits[fold].seed;
  row.method = config.model_config.tag();
  row.mrr = report.mrr_value;
  row.hits = report.hits_value;
  row.detail = "checkpoint=" + fs::path(checkpoint_path).filename().string();
  append_results(config, {row});

  std::ostringstream ranks;
  eval::write_rank_csv(ranks, report);
  write_file(config.out_dir + "/ranks_fold" + std::to_string(fold) + ".csv", ranks.str());
  log << "evaluate fold " << fold << ": mrr " << fmt_double(report.mrr_value) << ", hits@"
      << config.eval_section.hits_k << " " << fmt_double(report.hits_value) << "\n";
}

int cmd_verify(std::ostream& log) {
  int failures = 0;
  for (const selfcheck::CheckResult& r : selfcheck::run_all()) {
    log << (r.passed ? "PASS" : "FAIL") << ' ' << r.name;
    if (!r.detail.empty()) log << " (" << r.detail << ")";
    log << '\n';
    if (!r.passed) ++failures;
  }
  return failures;
}

}  // namespace dirlp::cli
