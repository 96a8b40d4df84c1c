#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dirlp::ad {

class Tape;

/// Handle into a Tape node. Cheap to copy; valid until the owning tape is
/// destroyed or reset.
class Tensor {
 public:
  Tensor() = default;

  std::size_t rows() const;
  std::size_t cols() const;
  std::size_t size() const { return rows() * cols(); }
  std::span<const double> value() const;
  double scalar() const;  // requires a 1x1 tensor

  /// Gradient after Tape::backward. Throws when this node does not
  /// require gradients or backward has not run.
  std::span<const double> grad() const;
  bool requires_grad() const;

 private:
  friend class Tape;
  Tensor(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Record of one forward pass over dense 2-D tensors. Creation order is a
/// topological order of the DAG, so backward is a single reverse sweep.
/// A tape is confined to one worker; independent tapes may run
/// concurrently. The intended lifecycle is one tape per training step.
///
/// With `check_finite` on (default in debug builds), every op verifies its
/// output is finite and throws NumericError otherwise.
class Tape {
 public:
  explicit Tape(bool check_finite =
#ifdef NDEBUG
                    false
#else
                    true
#endif
  );
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;
  ~Tape();

  /// Leaf without gradient.
  Tensor constant(std::size_t rows, std::size_t cols, std::vector<double> data);
  /// Leaf that accumulates a gradient.
  Tensor variable(std::size_t rows, std::size_t cols, std::vector<double> data);

  Tensor matmul(Tensor a, Tensor b);
  /// Elementwise when shapes match; row-broadcast when b is (1 x cols).
  Tensor add(Tensor a, Tensor b);
  Tensor concat(Tensor a, Tensor b, int axis);
  Tensor relu(Tensor a);
  Tensor sigmoid(Tensor a);
  /// Inverted dropout: train keeps entries with probability 1-p and scales
  /// by 1/(1-p); inference (or p == 0) is the identity.
  Tensor dropout(Tensor a, double p, std::uint64_t seed, bool train);
  Tensor elementwise_mul(Tensor a, Tensor b);
  Tensor scale(Tensor a, double c);
  /// Row gather. Gradient scatter-adds.
  Tensor take_rows(Tensor a, const std::vector<std::uint32_t>& indices);
  /// out[i] = mean of a's rows listed in groups[i]; an empty group yields a
  /// zero row (and passes zero gradient).
  Tensor mean_rows(Tensor a, const std::vector<std::vector<std::uint32_t>>& groups);
  /// out[i] = sum_j weights[i][j] * a[groups[i][j]]. Mean aggregation and
  /// normalized-adjacency propagation are both instances of this.
  Tensor aggregate_rows(Tensor a, const std::vector<std::vector<std::uint32_t>>& groups,
                        const std::vector<std::vector<double>>& weights);
  /// Sum of all entries, as a 1x1 tensor.
  Tensor sum(Tensor a);
  /// Mean binary cross-entropy from raw logits, in log-sum-exp form:
  /// mean_i [ max(x,0) - x*t + log(1 + exp(-|x|)) ].
  Tensor bce_with_logits(Tensor logits, const std::vector<double>& targets);

  /// Reverse sweep from a scalar loss. Populates grad() of every
  /// requires_grad tensor. A second call without reset() is an error.
  void backward(Tensor loss);

  /// Drop all nodes; outstanding Tensor handles become invalid.
  void reset();

  std::size_t num_nodes() const;

 private:
  friend class Tensor;
  struct Node;
  struct Impl;
  Impl* impl_;

  Tensor emplace(std::size_t rows, std::size_t cols, std::vector<double> value,
                 bool requires_grad, std::function<void(Impl&, std::size_t)> backward_fn);
  const Node& node(std::size_t id) const;
};

/// Named trainable array with deterministic initialization.
enum class Init { glorot_uniform, zeros, identity };

struct Parameter {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> value;
};

/// glorot_uniform draws from U(-limit, limit) with
/// limit = sqrt(6 / (rows + cols)) using SplitMix64(seed); identity
/// requires a square shape.
Parameter make_parameter(std::string name, std::size_t rows, std::size_t cols, Init init,
                         std::uint64_t seed);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;
};

/// Bias-corrected Adam update, in place.
void adam_step(Parameter& param, std::span<const double> grad, AdamState& state,
               const AdamConfig& cfg);

}  // namespace dirlp::ad
