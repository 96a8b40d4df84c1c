#include "dirlp/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dirlp/error.hpp"

namespace dirlp::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError(std::string("config: unknown key \"") + it.key() + "\" in " + where);
    }
  }
}

template <typename T>
void maybe(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(std::string("config: ") + ex.what());
  }
  ExperimentConfig cfg;
  reject_unknown(j, "top level",
                 {"dataset", "split", "model", "train", "eval", "heuristics", "seed", "workers",
                  "out_dir"});

  if (j.contains("dataset")) {
    const json& d = j.at("dataset");
    reject_unknown(d, "dataset", {"name", "edges", "features"});
    maybe(d, "name", cfg.dataset.name);
    maybe(d, "edges", cfg.dataset.edges);
    maybe(d, "features", cfg.dataset.features);
  }
  if (j.contains("split")) {
    const json& s = j.at("split");
    reject_unknown(s, "split", {"ratios", "folds"});
    if (s.contains("ratios")) {
      auto r = s.at("ratios").get<std::vector<double>>();
      if (r.size() != 3) throw ParseError("config: split.ratios must have 3 entries");
      cfg.split.ratios = {r[0], r[1], r[2]};
    }
    maybe(s, "folds", cfg.split.folds);
  }
  if (j.contains("model")) {
    const json& m = j.at("model");
    reject_unknown(m, "model",
                   {"encoder", "decoder", "labeling", "feature_radius", "structural",
                    "structural_log1p", "embed_dim"});
    if (m.contains("encoder")) {
      const json& e = m.at("encoder");
      reject_unknown(e, "model.encoder",
                     {"kind", "layers", "hidden_dim", "out_dim", "alpha", "dropout"});
      if (e.contains("kind")) {
        cfg.model_config.encoder.kind = model::encoder_kind_from_string(e.at("kind"));
      }
      maybe(e, "layers", cfg.model_config.encoder.layers);
      maybe(e, "hidden_dim", cfg.model_config.encoder.hidden_dim);
      maybe(e, "out_dim", cfg.model_config.encoder.out_dim);
      maybe(e, "alpha", cfg.model_config.encoder.alpha);
      maybe(e, "dropout", cfg.model_config.encoder.dropout);
    }
    if (m.contains("decoder")) {
      const json& d = m.at("decoder");
      reject_unknown(d, "model.decoder", {"kind", "hidden", "dropout"});
      if (d.contains("kind")) {
        cfg.model_config.decoder.kind = model::decoder_kind_from_string(d.at("kind"));
      }
      maybe(d, "hidden", cfg.model_config.decoder.hidden);
      maybe(d, "dropout", cfg.model_config.decoder.dropout);
    }
    if (m.contains("labeling")) {
      const json& l = m.at("labeling");
      reject_unknown(l, "model.labeling", {"enabled", "mode", "delta", "directed", "landmarks"});
      maybe(l, "enabled", cfg.model_config.labeling.enabled);
      if (l.contains("mode")) {
        cfg.model_config.labeling.mode = featurize::label_mode_from_string(l.at("mode"));
      }
      maybe(l, "delta", cfg.model_config.labeling.delta);
      maybe(l, "directed", cfg.model_config.labeling.directed);
      maybe(l, "landmarks", cfg.model_config.labeling.num_landmarks);
    }
    maybe(m, "feature_radius", cfg.model_config.feature_radius);
    if (m.contains("structural")) {
      cfg.model_config.structural = model::structural_mode_from_string(m.at("structural"));
    }
    maybe(m, "structural_log1p", cfg.model_config.structural_log1p);
    maybe(m, "embed_dim", cfg.model_config.embed_dim);
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    reject_unknown(t, "train", {"lr", "max_epochs", "patience", "eval_every", "negative_mode"});
    maybe(t, "lr", cfg.train.lr);
    maybe(t, "max_epochs", cfg.train.max_epochs);
    maybe(t, "patience", cfg.train.patience);
    maybe(t, "eval_every", cfg.train.eval_every);
    if (t.contains("negative_mode")) {
      cfg.train.negative_mode = sampling::negative_mode_from_string(t.at("negative_mode"));
    }
  }
  if (j.contains("eval")) {
    const json& e = j.at("eval");
    reject_unknown(e, "eval", {"candidates", "hits_k", "tie_policy"});
    maybe(e, "candidates", cfg.eval_section.candidates);
    maybe(e, "hits_k", cfg.eval_section.hits_k);
    if (e.contains("tie_policy")) {
      cfg.eval_section.tie_policy = eval::tie_policy_from_string(e.at("tie_policy"));
    }
  }
  if (j.contains("heuristics")) {
    for (const json& h : j.at("heuristics")) {
      reject_unknown(h, "heuristics[]", {"family", "variant", "epsilon"});
      heuristics::HeuristicSpec spec;
      spec.family = heuristics::family_from_string(h.at("family"));
      spec.variant = heuristics::variant_from_string(h.at("variant"));
      if (h.contains("epsilon")) spec.epsilon = h.at("epsilon").get<double>();
      cfg.heuristic_specs.push_back(spec);
    }
  }
  maybe(j, "seed", cfg.seed);
  maybe(j, "workers", cfg.workers);
  maybe(j, "out_dir", cfg.out_dir);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["dataset"] = {{"name", dataset.name}, {"edges", dataset.edges}, {"features", dataset.features}};
  j["split"] = {{"ratios", std::vector<double>{split.ratios[0], split.ratios[1], split.ratios[2]}},
                {"folds", split.folds}};
  json enc = {{"kind", model::to_string(model_config.encoder.kind)},
              {"layers", model_config.encoder.layers},
              {"hidden_dim", model_config.encoder.hidden_dim},
              {"out_dim", model_config.encoder.out_dim},
              {"alpha", model_config.encoder.alpha},
              {"dropout", model_config.encoder.dropout}};
  json dec = {{"kind", model::to_string(model_config.decoder.kind)},
              {"hidden", model_config.decoder.hidden},
              {"dropout", model_config.decoder.dropout}};
  json lab = {{"enabled", model_config.labeling.enabled},
              {"mode", featurize::to_string(model_config.labeling.mode)},
              {"delta", model_config.labeling.delta},
              {"directed", model_config.labeling.directed},
              {"landmarks", model_config.labeling.num_landmarks}};
  j["model"] = {{"encoder", enc},
                {"decoder", dec},
                {"labeling", lab},
                {"feature_radius", model_config.feature_radius},
                {"structural", model::to_string(model_config.structural)},
                {"structural_log1p", model_config.structural_log1p},
                {"embed_dim", model_config.embed_dim}};
  j["train"] = {{"lr", train.lr},
                {"max_epochs", train.max_epochs},
                {"patience", train.patience},
                {"eval_every", train.eval_every},
                {"negative_mode", sampling::to_string(train.negative_mode)}};
  j["eval"] = {{"candidates", eval_section.candidates},
               {"hits_k", eval_section.hits_k},
               {"tie_policy", eval::to_string(eval_section.tie_policy)}};
  json hs = json::array();
  for (const auto& spec : heuristic_specs) {
    hs.push_back({{"family", heuristics::to_string(spec.family)},
                  {"variant", heuristics::to_string(spec.variant)},
                  {"epsilon", spec.epsilon}});
  }
  j["heuristics"] = hs;
  j["seed"] = seed;
  j["workers"] = workers;
  j["out_dir"] = out_dir;
  return j.dump(2);
}

std::string ExperimentConfig::hash() const {
  const std::string text = to_json_text();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

eval::Protocol ExperimentConfig::protocol(std::uint64_t eval_seed) const {
  eval::Protocol p;
  p.candidates = eval_section.candidates;
  p.hits_k = eval_section.hits_k;
  p.tie_policy = eval_section.tie_policy;
  p.seed = eval_seed;
  return p;
}

model::TrainConfig ExperimentConfig::train_config(std::uint64_t train_seed,
                                                  std::uint64_t eval_seed) const {
  model::TrainConfig tc;
  tc.lr = train.lr;
  tc.max_epochs = train.max_epochs;
  tc.patience = train.patience;
  tc.eval_every = train.eval_every;
  tc.negative_mode = train.negative_mode;
  tc.val_protocol = protocol(eval_seed);
  tc.seed = train_seed;
  return tc;
}

}  // namespace dirlp::cli
