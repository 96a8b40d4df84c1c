#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dirlp::selfcheck {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Finite-difference agreement for every tape primitive plus three random
/// composed networks (rel. error < 1e-4).
CheckResult check_autodiff_gradients();

/// Heuristic scores (all variants) against dense-matrix/set oracles on
/// random graphs; exact to 1e-12.
CheckResult check_heuristics_bruteforce(std::size_t graphs = 50, std::uint64_t seed = 99);

/// Sequence neighborhoods against explicit walk enumeration.
CheckResult check_sequence_neighborhoods(std::size_t graphs = 50, std::uint64_t seed = 173);

/// Directed + undirected structural feature vectors against the naive
/// implementations.
CheckResult check_structural_features(std::size_t graphs = 50, std::uint64_t seed = 211);

/// eval::evaluate against a full-sort naive ranker.
CheckResult check_evaluate_oracle(std::size_t graphs = 20, std::uint64_t seed = 307);

/// Exact metric fixtures (mrr, hits boundary, constant-scorer ties).
CheckResult check_metric_fixtures();

/// The four-node expressivity fixture.
CheckResult check_expressivity();

/// Negative sampling / split invariants.
CheckResult check_sampling_invariants();

std::vector<CheckResult> run_all();

}  // namespace dirlp::selfcheck
