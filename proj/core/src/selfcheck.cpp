#include "dirlp/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>

#include "dirlp/autodiff.hpp"
#include "dirlp/datasets.hpp"
#include "dirlp/error.hpp"
#include "dirlp/eval.hpp"
#include "dirlp/featurize.hpp"
#include "dirlp/heuristics.hpp"
#include "dirlp/oracle.hpp"
#include "dirlp/rng.hpp"
#include "dirlp/sampling.hpp"

namespace dirlp::selfcheck {

namespace {

constexpr double kGradTolerance = 1e-4;
constexpr double kExactTolerance = 1e-12;

std::vector<double> random_values(std::size_t n, SplitMix64& rng, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = (2.0 * rng.uniform() - 1.0) * scale;
  return v;
}

using Program = std::function<ad::Tensor(ad::Tape&, ad::Tensor)>;

/// Tape gradient of a scalar program w.r.t. its single variable, checked
/// against central finite differences of the same program.
double op_grad_error(std::size_t rows, std::size_t cols, const std::vector<double>& x0,
                     const Program& build) {
  ad::Tape tape(true);
  ad::Tensor x = tape.variable(rows, cols, x0);
  ad::Tensor loss = build(tape, x);
  tape.backward(loss);
  auto g = x.grad();
  std::vector<double> tape_grad(g.begin(), g.end());

  auto f = [&](const std::vector<double>& values) {
    ad::Tape t2(true);
    ad::Tensor x2 = t2.variable(rows, cols, values);
    return build(t2, x2).scalar();
  };
  std::vector<double> fd = oracle::finite_difference_gradient(f, x0);
  return oracle::max_relative_error(tape_grad, fd);
}

/// Multi-parameter variant for composed networks.
double net_grad_error(const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                      const std::vector<std::vector<double>>& init,
                      const std::function<ad::Tensor(ad::Tape&, const std::vector<ad::Tensor>&)>&
                          build) {
  ad::Tape tape(true);
  std::vector<ad::Tensor> vars;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    vars.push_back(tape.variable(shapes[i].first, shapes[i].second, init[i]));
  }
  ad::Tensor loss = build(tape, vars);
  tape.backward(loss);

  double worst = 0;
  for (std::size_t pi = 0; pi < shapes.size(); ++pi) {
    auto g = vars[pi].grad();
    std::vector<double> tape_grad(g.begin(), g.end());
    auto f = [&](const std::vector<double>& values) {
      ad::Tape t2(true);
      std::vector<ad::Tensor> vs;
      for (std::size_t i = 0; i < shapes.size(); ++i) {
        vs.push_back(t2.variable(shapes[i].first, shapes[i].second,
                                 i == pi ? values : init[i]));
      }
      return build(t2, vs).scalar();
    };
    std::vector<double> fd = oracle::finite_difference_gradient(f, init[pi]);
    worst = std::max(worst, oracle::max_relative_error(tape_grad, fd));
  }
  return worst;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CheckResult check_autodiff_gradients() {
  CheckResult result{"autodiff.gradients", true, ""};
  SplitMix64 rng(42);
  double worst = 0;
  auto record = [&](const char* what, double err) {
    worst = std::max(worst, err);
    if (err >= kGradTolerance && result.passed) {
      result.passed = false;
      result.detail = std::string(what) + " rel err " + fmt(err);
    }
  };

  // matmul, both operands
  {
    std::vector<double> a0 = random_values(12, rng), b0 = random_values(20, rng);
    record("matmul.lhs", op_grad_error(3, 4, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.matmul(x, t.constant(4, 5, b0)));
           }));
    record("matmul.rhs", op_grad_error(4, 5, b0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.matmul(t.constant(3, 4, a0), x));
           }));
  }
  // add, equal shape and row broadcast
  {
    std::vector<double> a0 = random_values(12, rng), b0 = random_values(12, rng);
    std::vector<double> bias0 = random_values(4, rng);
    record("add", op_grad_error(3, 4, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.elementwise_mul(t.add(x, t.constant(3, 4, b0)), t.constant(3, 4, b0)));
           }));
    record("add.bias", op_grad_error(1, 4, bias0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(t.add(t.constant(3, 4, a0), x)));
           }));
  }
  // concat both axes
  {
    std::vector<double> a0 = random_values(6, rng), b0 = random_values(6, rng);
    record("concat.axis1", op_grad_error(2, 3, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(t.concat(x, t.constant(2, 3, b0), 1)));
           }));
    record("concat.axis0", op_grad_error(2, 3, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(t.concat(t.constant(2, 3, b0), x, 0)));
           }));
  }
  // relu away from the kink
  {
    std::vector<double> a0 = random_values(9, rng);
    for (double& v : a0) {
      if (std::abs(v) < 0.05) v = v < 0 ? v - 0.1 : v + 0.1;
    }
    record("relu", op_grad_error(3, 3, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.relu(x));
           }));
  }
  // sigmoid
  {
    std::vector<double> a0 = random_values(8, rng, 2.0);
    record("sigmoid", op_grad_error(2, 4, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(x));
           }));
  }
  // dropout with a fixed mask seed
  {
    std::vector<double> a0 = random_values(10, rng);
    record("dropout", op_grad_error(2, 5, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.dropout(x, 0.4, 1234, true));
           }));
  }
  // elementwise_mul / scale
  {
    std::vector<double> a0 = random_values(8, rng), b0 = random_values(8, rng);
    record("elementwise_mul", op_grad_error(2, 4, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.elementwise_mul(x, t.constant(2, 4, b0)));
           }));
    record("scale", op_grad_error(2, 4, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.scale(x, -1.7));
           }));
  }
  // take_rows / mean_rows (with an empty group) / aggregate_rows
  {
    std::vector<double> a0 = random_values(12, rng);
    std::vector<std::uint32_t> idx{2, 0, 2};
    record("take_rows", op_grad_error(4, 3, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(t.take_rows(x, idx)));
           }));
    std::vector<std::vector<std::uint32_t>> groups{{0, 1}, {}, {3, 2, 1}};
    record("mean_rows", op_grad_error(4, 3, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(t.mean_rows(x, groups)));
           }));
    std::vector<std::vector<double>> weights{{0.3, -1.2}, {}, {0.5, 0.25, 2.0}};
    record("aggregate_rows", op_grad_error(4, 3, a0, [&](ad::Tape& t, ad::Tensor x) {
             return t.sum(t.sigmoid(t.aggregate_rows(x, groups, weights)));
           }));
  }
  // bce_with_logits
  {
    std::vector<double> logits0 = random_values(6, rng, 2.0);
    std::vector<double> targets{1, 0, 1, 1, 0, 0};
    record("bce_with_logits", op_grad_error(6, 1, logits0, [&](ad::Tape& t, ad::Tensor x) {
             return t.bce_with_logits(x, targets);
           }));
  }

  // Three random composed networks: depth <= 3, widths <= 16.
  for (int net = 0; net < 3; ++net) {
    SplitMix64 net_rng(500 + std::uint64_t(net));
    const std::size_t in = 3 + net_rng.bounded(6);
    const std::size_t h1 = 4 + net_rng.bounded(12);
    const std::size_t h2 = 4 + net_rng.bounded(12);
    const std::size_t batch = 5;
    std::vector<double> x0 = random_values(batch * in, net_rng);
    std::vector<double> targets(batch);
    for (double& t : targets) t = net_rng.uniform() < 0.5 ? 0.0 : 1.0;

    std::vector<std::pair<std::size_t, std::size_t>> shapes = {
        {in, h1}, {1, h1}, {h1, h2}, {1, h2}, {h2, 1}, {1, 1}};
    std::vector<std::vector<double>> init;
    for (auto [r, c] : shapes) init.push_back(random_values(r * c, net_rng, 0.5));

    double err = net_grad_error(shapes, init, [&](ad::Tape& t, const std::vector<ad::Tensor>& w) {
      ad::Tensor x = t.constant(batch, in, x0);
      ad::Tensor h = t.relu(t.add(t.matmul(x, w[0]), w[1]));
      h = t.sigmoid(t.add(t.matmul(h, w[2]), w[3]));
      ad::Tensor logits = t.add(t.matmul(h, w[4]), w[5]);
      return t.bce_with_logits(logits, targets);
    });
    record("composed_net", err);
  }

  if (result.passed) result.detail = "max rel err " + fmt(worst);
  return result;
}

CheckResult check_heuristics_bruteforce(std::size_t graphs, std::uint64_t seed) {
  CheckResult result{"heuristics.bruteforce", true, ""};
  using heuristics::Family;
  using heuristics::Variant;
  const std::vector<std::pair<Family, Variant>> cases = {
      {Family::lp, Variant::sym},    {Family::lp, Variant::asym},
      {Family::ra, Variant::sym},    {Family::ra, Variant::in_in},
      {Family::ra, Variant::in_out}, {Family::ra, Variant::out_in},
      {Family::ra, Variant::out_out}, {Family::aa, Variant::sym},
      {Family::aa, Variant::in_in},  {Family::aa, Variant::in_out},
      {Family::aa, Variant::out_in}, {Family::aa, Variant::out_out}};

  for (std::size_t gi = 0; gi < graphs; ++gi) {
    SplitMix64 rng(derive_seed(seed, gi));
    NodeId n = 5 + NodeId(rng.bounded(21));  // 5..25 nodes
    double p = 0.05 + 0.3 * rng.uniform();
    DirectedGraph g = oracle::random_digraph(n, p, derive_seed(seed, gi, 1));
    for (const auto& [family, variant] : cases) {
      heuristics::HeuristicScorer scorer(g, heuristics::HeuristicSpec{family, variant});
      for (int trial = 0; trial < 12; ++trial) {
        NodeId u = NodeId(rng.bounded(n));
        NodeId v = NodeId(rng.bounded(n));
        if (u == v) continue;
        double fast = scorer(u, v);
        double naive = family == Family::lp
                           ? oracle::lp_score(g, u, v, variant == Variant::sym, 1e-3)
                           : oracle::cn_score(g, u, v, family, variant);
        if (std::abs(fast - naive) > kExactTolerance) {
          result.passed = false;
          result.detail = heuristics::HeuristicSpec{family, variant}.name() + " mismatch on graph " +
                          std::to_string(gi) + " pair (" + std::to_string(u) + "," +
                          std::to_string(v) + "): " + fmt(fast) + " vs " + fmt(naive);
          return result;
        }
      }
    }
  }
  result.detail = std::to_string(graphs) + " random graphs";
  return result;
}

CheckResult check_sequence_neighborhoods(std::size_t graphs, std::uint64_t seed) {
  CheckResult result{"featurize.sequence_neighborhoods", true, ""};
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    SplitMix64 rng(derive_seed(seed, gi));
    NodeId n = 4 + NodeId(rng.bounded(17));  // 4..20 nodes
    DirectedGraph g = oracle::random_digraph(n, 0.2 + 0.2 * rng.uniform(), derive_seed(seed, gi, 1));
    for (const auto& s : featurize::canonical_sequences(2)) {
      NodeId u = NodeId(rng.bounded(n));
      auto fast = featurize::sequence_neighborhood(g, u, s);
      auto naive = oracle::sequence_neighborhood(g, u, s);
      if (fast != naive) {
        result.passed = false;
        result.detail = "sequence " + featurize::sequence_name(s) + " mismatch at node " +
                        std::to_string(u) + " on graph " + std::to_string(gi);
        return result;
      }
    }
  }
  result.detail = std::to_string(graphs) + " random graphs";
  return result;
}

CheckResult check_structural_features(std::size_t graphs, std::uint64_t seed) {
  CheckResult result{"featurize.structural_features", true, ""};
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    SplitMix64 rng(derive_seed(seed, gi));
    NodeId n = 4 + NodeId(rng.bounded(17));
    DirectedGraph g = oracle::random_digraph(n, 0.2 + 0.2 * rng.uniform(), derive_seed(seed, gi, 1));
    // Every third graph is symmetric, where directed features must
    // collapse to length-only counts; the oracle comparison covers that.
    if (gi % 3 == 2) g = g.symmetrize();
    const int radius = 1 + int(rng.bounded(2));
    for (int trial = 0; trial < 4; ++trial) {
      NodeId u = NodeId(rng.bounded(n));
      NodeId v = NodeId(rng.bounded(n));
      if (u == v) continue;
      auto fast_dir = featurize::directed_edge_features(g, u, v, radius);
      auto naive_dir = oracle::directed_edge_features(g, u, v, radius);
      auto fast_undir = featurize::undirected_edge_features(g, u, v, radius);
      auto naive_undir = oracle::undirected_edge_features(g, u, v, radius);
      if (oracle::max_relative_error(fast_dir, naive_dir) > kExactTolerance ||
          oracle::max_relative_error(fast_undir, naive_undir) > kExactTolerance) {
        result.passed = false;
        result.detail = "feature mismatch on graph " + std::to_string(gi) + " pair (" +
                        std::to_string(u) + "," + std::to_string(v) + ")";
        return result;
      }
    }
  }
  result.detail = std::to_string(graphs) + " random graphs";
  return result;
}

CheckResult check_evaluate_oracle(std::size_t graphs, std::uint64_t seed) {
  CheckResult result{"eval.naive_ranker", true, ""};
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    SplitMix64 rng(derive_seed(seed, gi));
    NodeId n = 8 + NodeId(rng.bounded(23));  // 8..30 nodes
    DirectedGraph g = oracle::random_digraph(n, 0.25, derive_seed(seed, gi, 1));
    if (g.num_edges() < 4) continue;
    std::vector<Edge> positives(g.edges().begin(),
                                g.edges().begin() + std::min<std::size_t>(8, g.num_edges()));
    // A scorer with deliberate ties to exercise every tie policy.
    auto scorer = eval::batched([](NodeId u, NodeId v) {
      return double((u * 7 + v * 13) % 5);
    });
    for (eval::TiePolicy policy :
         {eval::TiePolicy::optimistic, eval::TiePolicy::mid, eval::TiePolicy::pessimistic}) {
      eval::Protocol protocol;
      protocol.candidates = 10;
      protocol.hits_k = 3;
      protocol.tie_policy = policy;
      protocol.seed = derive_seed(seed, gi, 2);
      eval::RankingReport fast = eval::evaluate(scorer, positives, g, protocol);
      oracle::NaiveRanking naive = oracle::evaluate(scorer, positives, g, protocol);
      if (std::abs(fast.mrr_value - naive.mrr) > kExactTolerance ||
          std::abs(fast.hits_value - naive.hits) > kExactTolerance) {
        result.passed = false;
        result.detail = "ranking mismatch on graph " + std::to_string(gi) + " policy " +
                        eval::to_string(policy);
        return result;
      }
    }
  }
  result.detail = std::to_string(graphs) + " random graphs x 3 tie policies";
  return result;
}

CheckResult check_metric_fixtures() {
  CheckResult result{"eval.metric_fixtures", true, ""};
  auto fail = [&](const std::string& what) {
    result.passed = false;
    result.detail = what;
    return result;
  };
  if (eval::mrr({1, 2, 4}) != 7.0 / 12.0) return fail("mrr([1,2,4]) != 7/12");
  if (eval::mrr({1}) != 1.0) return fail("mrr([1]) != 1");
  if (eval::hits_at_k({20}, 20) != 1.0) return fail("hits boundary not inclusive");
  if (eval::hits_at_k({1, 21}, 20) != 0.5) return fail("hits@20 of [1,21] != 0.5");
  if (eval::hits_at_k({5, 5, 5}, 4) != 0.0) return fail("hits@4 of [5,5,5] != 0");
  double rank = eval::rank_of_positive(0.5, {0.5, 0.5, 0.2}, eval::TiePolicy::mid);
  if (rank != 2.0) return fail("mid tie rank != 2");
  if (eval::rank_of_positive(0.5, {0.5, 0.5, 0.2}, eval::TiePolicy::pessimistic) != 3.0) {
    return fail("pessimistic tie rank != 3");
  }
  // Constant scorer, C = 9, mid policy: every rank is 1 + 9/2.
  const double expect = 1.0 / (1.0 + 9.0 / 2.0);
  if (1.0 / eval::rank_of_positive(1.0, std::vector<double>(9, 1.0), eval::TiePolicy::mid) !=
      expect) {
    return fail("constant-scorer mid MRR != 1/(1+C/2)");
  }
  result.detail = "exact fixtures hold";
  return result;
}

CheckResult check_expressivity() {
  CheckResult result{"eval.expressivity_k4", true, ""};
  try {
    eval::ExpressivityReport report = eval::expressivity_check_k4();
    const std::vector<double> expect01 = {2, 1, 1, 2};
    const std::vector<double> expect03 = {2, 1, 3, 1};
    if (report.sgnn_distinguishes) {
      result.passed = false;
      result.detail = "undirected features unexpectedly separate (0,1) from (0,3)";
    } else if (!report.dirlp_distinguishes) {
      result.passed = false;
      result.detail = "directed features fail to separate (0,1) from (0,3)";
    } else if (report.lr_prefix_01 != expect01 || report.lr_prefix_03 != expect03) {
      result.passed = false;
      result.detail = "L||R prefixes do not match the documented degree readings";
    } else {
      result.detail = "directed split, undirected tied";
    }
  } catch (const Error& ex) {
    result.passed = false;
    result.detail = ex.what();
  }
  return result;
}

CheckResult check_sampling_invariants() {
  CheckResult result{"sampling.invariants", true, ""};
  auto fail = [&](const std::string& what) {
    result.passed = false;
    result.detail = what;
    return result;
  };
  for (std::uint64_t gi = 0; gi < 10; ++gi) {
    DirectedGraph g = oracle::random_digraph(12, 0.2, derive_seed(7, gi));
    if (g.num_edges() < 5) continue;
    for (auto mode : {sampling::NegativeMode::directed, sampling::NegativeMode::undirected}) {
      sampling::NegativeSet negs = sampling::sample_negatives(g, 20, mode, derive_seed(11, gi));
      for (const Edge& e : negs.edges) {
        if (g.has_edge(e.first, e.second)) return fail("negative collides with a positive");
        if (mode == sampling::NegativeMode::undirected && g.has_edge(e.second, e.first)) {
          return fail("undirected negative collides with a reversed positive");
        }
      }
      sampling::NegativeSet again = sampling::sample_negatives(g, 20, mode, derive_seed(11, gi));
      if (again.edges != negs.edges) return fail("negative sampling not deterministic");
    }
    auto splits = sampling::make_splits(g, {0.6, 0.2, 0.2}, derive_seed(13, gi), 2);
    for (const auto& s : splits) {
      std::vector<Edge> all = s.all_edges();
      std::sort(all.begin(), all.end());
      std::vector<Edge> edges = g.edges();
      if (all != edges) return fail("split does not partition the edge set");
    }
    auto splits2 = sampling::make_splits(g, {0.6, 0.2, 0.2}, derive_seed(13, gi), 2);
    if (splits2[0].train_pos != splits[0].train_pos) return fail("splits not deterministic");
  }
  result.detail = "10 random graphs";
  return result;
}

std::vector<CheckResult> run_all() {
  return {check_autodiff_gradients(), check_heuristics_bruteforce(),
          check_sequence_neighborhoods(), check_structural_features(), check_evaluate_oracle(),
          check_metric_fixtures(),      check_expressivity(),          check_sampling_invariants()};
}

}  // namespace dirlp::selfcheck
