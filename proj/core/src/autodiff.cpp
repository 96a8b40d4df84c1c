#include "dirlp/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dirlp/error.hpp"
#include "dirlp/rng.hpp"

namespace dirlp::ad {

struct Tape::Node {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> value;
  std::vector<double> grad;
  bool requires_grad = false;
  std::function<void(Impl&, std::size_t)> backward_fn;  // empty for leaves
};

struct Tape::Impl {
  std::vector<Node> nodes;
  bool check_finite = false;
  bool backward_done = false;

  Node& at(std::size_t id) { return nodes[id]; }
  void accumulate(std::size_t id, std::size_t index, double v) {
    Node& n = nodes[id];
    if (n.requires_grad) n.grad[index] += v;
  }
};

Tape::Tape(bool check_finite) : impl_(new Impl) { impl_->check_finite = check_finite; }

Tape::~Tape() { delete impl_; }

const Tape::Node& Tape::node(std::size_t id) const { return impl_->nodes[id]; }

std::size_t Tape::num_nodes() const { return impl_->nodes.size(); }

void Tape::reset() {
  impl_->nodes.clear();
  impl_->backward_done = false;
}

std::size_t Tensor::rows() const { return tape_->node(id_).rows; }
std::size_t Tensor::cols() const { return tape_->node(id_).cols; }

std::span<const double> Tensor::value() const {
  const auto& n = tape_->node(id_);
  return {n.value.data(), n.value.size()};
}

double Tensor::scalar() const {
  const auto& n = tape_->node(id_);
  if (n.rows != 1 || n.cols != 1) throw ShapeError("scalar() on a non 1x1 tensor");
  return n.value[0];
}

bool Tensor::requires_grad() const { return tape_->node(id_).requires_grad; }

std::span<const double> Tensor::grad() const {
  const auto& n = tape_->node(id_);
  if (!n.requires_grad) throw ContractError("grad() on a tensor without requires_grad");
  if (n.grad.size() != n.value.size()) {
    throw ContractError("grad() before backward()");
  }
  return {n.grad.data(), n.grad.size()};
}

Tensor Tape::emplace(std::size_t rows, std::size_t cols, std::vector<double> value,
                     bool requires_grad, std::function<void(Impl&, std::size_t)> backward_fn) {
  if (value.size() != rows * cols) throw ShapeError("tensor data does not match its shape");
  if (impl_->check_finite) {
    for (double v : value) {
      if (!std::isfinite(v)) throw NumericError("non-finite value produced on the tape");
    }
  }
  Node n;
  n.rows = rows;
  n.cols = cols;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  n.backward_fn = std::move(backward_fn);
  if (n.requires_grad) n.grad.assign(n.rows * n.cols, 0.0);
  impl_->nodes.push_back(std::move(n));
  return Tensor(this, impl_->nodes.size() - 1);
}

Tensor Tape::constant(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return emplace(rows, cols, std::move(data), false, {});
}

Tensor Tape::variable(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return emplace(rows, cols, std::move(data), true, {});
}

namespace {

void check_same_tape(const Tape* tape, std::initializer_list<const Tape*> others) {
  for (const Tape* o : others) {
    if (o != tape) throw ContractError("tensors belong to different tapes");
  }
}

}  // namespace

Tensor Tape::matmul(Tensor a, Tensor b) {
  const Node& na = node(a.id_);
  const Node& nb = node(b.id_);
  if (na.cols != nb.rows) throw ShapeError("matmul: inner dimensions differ");
  const std::size_t r = na.rows, k = na.cols, c = nb.cols;
  std::vector<double> out(r * c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      const double aik = na.value[i * k + t];
      if (aik == 0.0) continue;
      const double* brow = nb.value.data() + t * c;
      double* orow = out.data() + i * c;
      for (std::size_t j = 0; j < c; ++j) orow[j] += aik * brow[j];
    }
  }
  bool rg = na.requires_grad || nb.requires_grad;
  auto ida = a.id_, idb = b.id_;
  return emplace(r, c, std::move(out), rg, [ida, idb, r, k, c](Impl& im, std::size_t self) {
    const std::vector<double>& go = im.at(self).grad;
    Node& pa = im.at(ida);
    Node& pb = im.at(idb);
    if (pa.requires_grad) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
          double s = 0;
          const double* grow = go.data() + i * c;
          const double* brow = pb.value.data() + t * c;
          for (std::size_t j = 0; j < c; ++j) s += grow[j] * brow[j];
          pa.grad[i * k + t] += s;
        }
    }
    if (pb.requires_grad) {
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t j = 0; j < c; ++j) {
          double s = 0;
          for (std::size_t i = 0; i < r; ++i) s += pa.value[i * k + t] * go[i * c + j];
          pb.grad[t * c + j] += s;
        }
    }
  });
}

Tensor Tape::add(Tensor a, Tensor b) {
  const Node& na = node(a.id_);
  const Node& nb = node(b.id_);
  const bool broadcast = (nb.rows == 1 && na.rows != 1 && nb.cols == na.cols);
  if (!broadcast && (na.rows != nb.rows || na.cols != nb.cols)) {
    throw ShapeError("add: shape mismatch");
  }
  std::vector<double> out(na.value.size());
  for (std::size_t i = 0; i < na.rows; ++i)
    for (std::size_t j = 0; j < na.cols; ++j) {
      out[i * na.cols + j] =
          na.value[i * na.cols + j] + nb.value[(broadcast ? 0 : i) * na.cols + j];
    }
  bool rg = na.requires_grad || nb.requires_grad;
  auto ida = a.id_, idb = b.id_;
  auto rows = na.rows, cols = na.cols;
  return emplace(rows, cols, std::move(out), rg,
                 [ida, idb, rows, cols, broadcast](Impl& im, std::size_t self) {
                   const std::vector<double>& go = im.at(self).grad;
                   Node& pa = im.at(ida);
                   Node& pb = im.at(idb);
                   if (pa.requires_grad) {
                     for (std::size_t i = 0; i < go.size(); ++i) pa.grad[i] += go[i];
                   }
                   if (pb.requires_grad) {
                     if (broadcast) {
                       for (std::size_t i = 0; i < rows; ++i)
                         for (std::size_t j = 0; j < cols; ++j) pb.grad[j] += go[i * cols + j];
                     } else {
                       for (std::size_t i = 0; i < go.size(); ++i) pb.grad[i] += go[i];
                     }
                   }
                 });
}

Tensor Tape::concat(Tensor a, Tensor b, int axis) {
  const Node& na = node(a.id_);
  const Node& nb = node(b.id_);
  if (axis != 0 && axis != 1) throw ShapeError("concat: axis must be 0 or 1");
  auto ida = a.id_, idb = b.id_;
  if (axis == 0) {
    if (na.cols != nb.cols) throw ShapeError("concat axis 0: column counts differ");
    std::vector<double> out;
    out.reserve(na.value.size() + nb.value.size());
    out.insert(out.end(), na.value.begin(), na.value.end());
    out.insert(out.end(), nb.value.begin(), nb.value.end());
    bool rg = na.requires_grad || nb.requires_grad;
    auto asize = na.value.size();
    return emplace(na.rows + nb.rows, na.cols, std::move(out), rg,
                   [ida, idb, asize](Impl& im, std::size_t self) {
                     const std::vector<double>& go = im.at(self).grad;
                     Node& pa = im.at(ida);
                     Node& pb = im.at(idb);
                     if (pa.requires_grad)
                       for (std::size_t i = 0; i < asize; ++i) pa.grad[i] += go[i];
                     if (pb.requires_grad)
                       for (std::size_t i = asize; i < go.size(); ++i)
                         pb.grad[i - asize] += go[i];
                   });
  }
  if (na.rows != nb.rows) throw ShapeError("concat axis 1: row counts differ");
  const std::size_t rows = na.rows, ca = na.cols, cb = nb.cols;
  std::vector<double> out(rows * (ca + cb));
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy_n(na.value.data() + i * ca, ca, out.data() + i * (ca + cb));
    std::copy_n(nb.value.data() + i * cb, cb, out.data() + i * (ca + cb) + ca);
  }
  bool rg = na.requires_grad || nb.requires_grad;
  return emplace(rows, ca + cb, std::move(out), rg,
                 [ida, idb, rows, ca, cb](Impl& im, std::size_t self) {
                   const std::vector<double>& go = im.at(self).grad;
                   Node& pa = im.at(ida);
                   Node& pb = im.at(idb);
                   for (std::size_t i = 0; i < rows; ++i) {
                     if (pa.requires_grad)
                       for (std::size_t j = 0; j < ca; ++j)
                         pa.grad[i * ca + j] += go[i * (ca + cb) + j];
                     if (pb.requires_grad)
                       for (std::size_t j = 0; j < cb; ++j)
                         pb.grad[i * cb + j] += go[i * (ca + cb) + ca + j];
                   }
                 });
}

Tensor Tape::relu(Tensor a) {
  const Node& na = node(a.id_);
  std::vector<double> out(na.value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = na.value[i] > 0 ? na.value[i] : 0.0;
  auto ida = a.id_;
  return emplace(na.rows, na.cols, std::move(out), na.requires_grad,
                 [ida](Impl& im, std::size_t self) {
                   Node& pa = im.at(ida);
                   if (!pa.requires_grad) return;
                   const std::vector<double>& go = im.at(self).grad;
                   for (std::size_t i = 0; i < go.size(); ++i) {
                     if (pa.value[i] > 0) pa.grad[i] += go[i];
                   }
                 });
}

namespace {

double stable_sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Tensor Tape::sigmoid(Tensor a) {
  const Node& na = node(a.id_);
  std::vector<double> out(na.value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = stable_sigmoid(na.value[i]);
  auto ida = a.id_;
  return emplace(na.rows, na.cols, std::move(out), na.requires_grad,
                 [ida](Impl& im, std::size_t self) {
                   Node& pa = im.at(ida);
                   if (!pa.requires_grad) return;
                   const Node& s = im.at(self);
                   for (std::size_t i = 0; i < s.grad.size(); ++i) {
                     pa.grad[i] += s.grad[i] * s.value[i] * (1.0 - s.value[i]);
                   }
                 });
}

Tensor Tape::dropout(Tensor a, double p, std::uint64_t seed, bool train) {
  if (p < 0 || p >= 1) throw DomainError("dropout: p must be in [0, 1)");
  const Node& na = node(a.id_);
  auto ida = a.id_;
  if (!train || p == 0.0) {
    std::vector<double> out = na.value;
    return emplace(na.rows, na.cols, std::move(out), na.requires_grad,
                   [ida](Impl& im, std::size_t self) {
                     Node& pa = im.at(ida);
                     if (!pa.requires_grad) return;
                     const std::vector<double>& go = im.at(self).grad;
                     for (std::size_t i = 0; i < go.size(); ++i) pa.grad[i] += go[i];
                   });
  }
  SplitMix64 rng(seed);
  const double keep_scale = 1.0 / (1.0 - p);
  std::vector<double> mask(na.value.size());
  std::vector<double> out(na.value.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    mask[i] = rng.uniform() >= p ? keep_scale : 0.0;
    out[i] = na.value[i] * mask[i];
  }
  return emplace(na.rows, na.cols, std::move(out), na.requires_grad,
                 [ida, mask = std::move(mask)](Impl& im, std::size_t self) {
                   Node& pa = im.at(ida);
                   if (!pa.requires_grad) return;
                   const std::vector<double>& go = im.at(self).grad;
                   for (std::size_t i = 0; i < go.size(); ++i) pa.grad[i] += go[i] * mask[i];
                 });
}

Tensor Tape::elementwise_mul(Tensor a, Tensor b) {
  const Node& na = node(a.id_);
  const Node& nb = node(b.id_);
  if (na.rows != nb.rows || na.cols != nb.cols) throw ShapeError("elementwise_mul: shape mismatch");
  std::vector<double> out(na.value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = na.value[i] * nb.value[i];
  bool rg = na.requires_grad || nb.requires_grad;
  auto ida = a.id_, idb = b.id_;
  return emplace(na.rows, na.cols, std::move(out), rg, [ida, idb](Impl& im, std::size_t self) {
    const std::vector<double>& go = im.at(self).grad;
    Node& pa = im.at(ida);
    Node& pb = im.at(idb);
    if (pa.requires_grad)
      for (std::size_t i = 0; i < go.size(); ++i) pa.grad[i] += go[i] * pb.value[i];
    if (pb.requires_grad)
      for (std::size_t i = 0; i < go.size(); ++i) pb.grad[i] += go[i] * pa.value[i];
  });
}

Tensor Tape::scale(Tensor a, double c) {
  const Node& na = node(a.id_);
  std::vector<double> out(na.value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = na.value[i] * c;
  auto ida = a.id_;
  return emplace(na.rows, na.cols, std::move(out), na.requires_grad,
                 [ida, c](Impl& im, std::size_t self) {
                   Node& pa = im.at(ida);
                   if (!pa.requires_grad) return;
                   const std::vector<double>& go = im.at(self).grad;
                   for (std::size_t i = 0; i < go.size(); ++i) pa.grad[i] += go[i] * c;
                 });
}

Tensor Tape::take_rows(Tensor a, const std::vector<std::uint32_t>& indices) {
  const Node& na = node(a.id_);
  const std::size_t cols = na.cols;
  std::vector<double> out(indices.size() * cols);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= na.rows) throw RangeError("take_rows: index out of range");
    std::copy_n(na.value.data() + std::size_t(indices[i]) * cols, cols, out.data() + i * cols);
  }
  auto ida = a.id_;
  return emplace(indices.size(), cols, std::move(out), na.requires_grad,
                 [ida, indices, cols](Impl& im, std::size_t self) {
                   Node& pa = im.at(ida);
                   if (!pa.requires_grad) return;
                   const std::vector<double>& go = im.at(self).grad;
                   for (std::size_t i = 0; i < indices.size(); ++i)
                     for (std::size_t j = 0; j < cols; ++j)
                       pa.grad[std::size_t(indices[i]) * cols + j] += go[i * cols + j];
                 });
}

Tensor Tape::aggregate_rows(Tensor a, const std::vector<std::vector<std::uint32_t>>& groups,
                            const std::vector<std::vector<double>>& weights) {
  const Node& na = node(a.id_);
  if (groups.size() != weights.size()) throw ShapeError("aggregate_rows: groups/weights differ");
  const std::size_t cols = na.cols;
  std::vector<double> out(groups.size() * cols, 0.0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() != weights[i].size()) {
      throw ShapeError("aggregate_rows: group and weight lengths differ");
    }
    for (std::size_t j = 0; j < groups[i].size(); ++j) {
      if (groups[i][j] >= na.rows) throw RangeError("aggregate_rows: row index out of range");
      const double w = weights[i][j];
      const double* src = na.value.data() + std::size_t(groups[i][j]) * cols;
      double* dst = out.data() + i * cols;
      for (std::size_t cidx = 0; cidx < cols; ++cidx) dst[cidx] += w * src[cidx];
    }
  }
  auto ida = a.id_;
  return emplace(groups.size(), cols, std::move(out), na.requires_grad,
                 [ida, groups, weights, cols](Impl& im, std::size_t self) {
                   Node& pa = im.at(ida);
                   if (!pa.requires_grad) return;
                   const std::vector<double>& go = im.at(self).grad;
                   for (std::size_t i = 0; i < groups.size(); ++i)
                     for (std::size_t j = 0; j < groups[i].size(); ++j) {
                       const double w = weights[i][j];
                       double* dst = pa.grad.data() + std::size_t(groups[i][j]) * cols;
                       const double* src = go.data() + i * cols;
                       for (std::size_t cidx = 0; cidx < cols; ++cidx) dst[cidx] += w * src[cidx];
                     }
                 });
}

Tensor Tape::mean_rows(Tensor a, const std::vector<std::vector<std::uint32_t>>& groups) {
  std::vector<std::vector<double>> weights(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!groups[i].empty()) {
      weights[i].assign(groups[i].size(), 1.0 / double(groups[i].size()));
    }
  }
  return aggregate_rows(a, groups, weights);
}

Tensor Tape::sum(Tensor a) {
  const Node& na = node(a.id_);
  double total = 0;
  for (double v : na.value) total += v;
  auto ida = a.id_;
  return emplace(1, 1, {total}, na.requires_grad, [ida](Impl& im, std::size_t self) {
    Node& pa = im.at(ida);
    if (!pa.requires_grad) return;
    const double g = im.at(self).grad[0];
    for (double& gi : pa.grad) gi += g;
  });
}

Tensor Tape::bce_with_logits(Tensor logits, const std::vector<double>& targets) {
  const Node& nl = node(logits.id_);
  if (nl.value.size() != targets.size()) {
    throw ShapeError("bce_with_logits: logits and targets differ in length");
  }
  for (double t : targets) {
    if (t != 0.0 && t != 1.0) throw DomainError("bce_with_logits: targets must be 0 or 1");
  }
  const std::size_t n = targets.size();
  double loss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = nl.value[i];
    loss += std::max(x, 0.0) - x * targets[i] + std::log1p(std::exp(-std::abs(x)));
  }
  loss /= double(n);
  auto idl = logits.id_;
  return emplace(1, 1, {loss}, nl.requires_grad, [idl, targets, n](Impl& im, std::size_t self) {
    Node& pl = im.at(idl);
    if (!pl.requires_grad) return;
    const double g = im.at(self).grad[0];
    for (std::size_t i = 0; i < n; ++i) {
      pl.grad[i] += g * (stable_sigmoid(pl.value[i]) - targets[i]) / double(n);
    }
  });
}

void Tape::backward(Tensor loss) {
  check_same_tape(this, {loss.tape_});
  Node& l = impl_->at(loss.id_);
  if (l.rows != 1 || l.cols != 1) throw ShapeError("backward: loss must be a 1x1 tensor");
  if (impl_->backward_done) {
    throw ContractError("backward called twice without reset");
  }
  impl_->backward_done = true;
  if (!l.requires_grad) return;  // nothing depends on a variable
  l.grad[0] = 1.0;
  for (std::size_t id = loss.id_ + 1; id-- > 0;) {
    Node& n = impl_->at(id);
    if (n.requires_grad && n.backward_fn) n.backward_fn(*impl_, id);
  }
}

Parameter make_parameter(std::string name, std::size_t rows, std::size_t cols, Init init,
                         std::uint64_t seed) {
  Parameter p;
  p.name = std::move(name);
  p.rows = rows;
  p.cols = cols;
  p.value.assign(rows * cols, 0.0);
  switch (init) {
    case Init::zeros:
      break;
    case Init::identity: {
      if (rows != cols) throw ShapeError("identity init requires a square parameter");
      for (std::size_t i = 0; i < rows; ++i) p.value[i * cols + i] = 1.0;
      break;
    }
    case Init::glorot_uniform: {
      SplitMix64 rng(seed);
      const double limit = std::sqrt(6.0 / double(rows + cols));
      for (double& v : p.value) v = (2.0 * rng.uniform() - 1.0) * limit;
      break;
    }
  }
  return p;
}

void adam_step(Parameter& param, std::span<const double> grad, AdamState& state,
               const AdamConfig& cfg) {
  const std::size_t n = param.value.size();
  if (grad.size() != n) throw ShapeError("adam_step: gradient size mismatch");
  if (state.m.size() != n) {
    state.m.assign(n, 0.0);
    state.v.assign(n, 0.0);
    state.step = 0;
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(cfg.beta1, double(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, double(state.step));
  for (std::size_t i = 0; i < n; ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    param.value[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
  }
}

}  // namespace dirlp::ad
