#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dirlp/autodiff.hpp"
#include "dirlp/error.hpp"
#include "dirlp/oracle.hpp"
#include "dirlp/rng.hpp"

using namespace dirlp;
namespace ad = dirlp::ad;

TEST_CASE("sigmoid value and gradient at zero") {
  ad::Tape tape;
  ad::Tensor x = tape.variable(1, 1, {0.0});
  ad::Tensor s = tape.sigmoid(x);
  CHECK(s.scalar() == doctest::Approx(0.5));
  tape.backward(tape.sum(s));
  CHECK(x.grad()[0] == doctest::Approx(0.25));
}

TEST_CASE("backward of sum gives ones") {
  ad::Tape tape;
  ad::Tensor x = tape.variable(3, 1, {2.0, -1.0, 5.0});
  tape.backward(tape.sum(x));
  CHECK(std::vector<double>(x.grad().begin(), x.grad().end()) ==
        std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("relu gates gradients of dead units") {
  ad::Tape tape;
  ad::Tensor x = tape.variable(1, 1, {3.0});
  ad::Tensor y = tape.relu(tape.scale(x, -1.0));  // relu(-x) at x > 0
  tape.backward(tape.sum(y));
  CHECK(y.scalar() == 0.0);
  CHECK(x.grad()[0] == 0.0);
}

TEST_CASE("matmul gradient of sum(A x) equals column sums of A") {
  SplitMix64 rng(3);
  std::vector<double> a(12);
  for (double& v : a) v = rng.uniform(-1, 1);
  ad::Tape tape;
  ad::Tensor A = tape.constant(4, 3, a);
  ad::Tensor x = tape.variable(3, 1, {0.3, -0.7, 1.1});
  tape.backward(tape.sum(tape.matmul(A, x)));
  for (std::size_t j = 0; j < 3; ++j) {
    double col_sum = a[j] + a[3 + j] + a[6 + j] + a[9 + j];
    CHECK(x.grad()[j] == doctest::Approx(col_sum));
  }
}

TEST_CASE("mean_rows: empty group is a zero row with zero gradient") {
  ad::Tape tape;
  ad::Tensor x = tape.variable(2, 2, {1, 2, 3, 4});
  ad::Tensor m = tape.mean_rows(x, {{}, {0, 1}});
  CHECK(m.value()[0] == 0.0);
  CHECK(m.value()[1] == 0.0);
  CHECK(m.value()[2] == doctest::Approx(2.0));
  CHECK(m.value()[3] == doctest::Approx(3.0));
  tape.backward(tape.sum(m));
  CHECK(x.grad()[0] == doctest::Approx(0.5));
}

TEST_CASE("dropout identities") {
  SplitMix64 rng(5);
  std::vector<double> data(20);
  for (double& v : data) v = rng.uniform(-2, 2);

  ad::Tape tape;
  ad::Tensor x = tape.variable(4, 5, data);
  ad::Tensor eval_mode = tape.dropout(x, 0.5, 99, false);
  ad::Tensor p_zero = tape.dropout(x, 0.0, 99, true);
  CHECK(std::vector<double>(eval_mode.value().begin(), eval_mode.value().end()) == data);
  CHECK(std::vector<double>(p_zero.value().begin(), p_zero.value().end()) == data);
  CHECK_THROWS_AS(tape.dropout(x, 1.0, 99, true), DomainError);

  // Train-mode masks are deterministic in the seed.
  ad::Tape t2;
  ad::Tensor a = t2.constant(4, 5, data);
  auto m1 = t2.dropout(a, 0.4, 7, true).value();
  auto m2 = t2.dropout(a, 0.4, 7, true).value();
  CHECK(std::vector<double>(m1.begin(), m1.end()) == std::vector<double>(m2.begin(), m2.end()));
}

TEST_CASE("bce_with_logits fixtures") {
  {
    ad::Tape tape;
    ad::Tensor x = tape.variable(1, 1, {0.0});
    ad::Tensor loss = tape.bce_with_logits(x, {1.0});
    CHECK(loss.scalar() == doctest::Approx(std::log(2.0)));
    tape.backward(loss);
    CHECK(x.grad()[0] == doctest::Approx(-0.5));
  }
  {
    // Saturated logits that match their targets: loss tiny, no overflow.
    ad::Tape tape(true);
    ad::Tensor x = tape.constant(2, 1, {50.0, -50.0});
    ad::Tensor loss = tape.bce_with_logits(x, {1.0, 0.0});
    CHECK(loss.scalar() < 1e-20);
    CHECK(std::isfinite(loss.scalar()));
  }
  {
    ad::Tape tape;
    ad::Tensor x = tape.variable(2, 1, {0.0, 0.0});
    CHECK_THROWS_AS(tape.bce_with_logits(x, {1.0}), ShapeError);
    CHECK_THROWS_AS(tape.bce_with_logits(x, {1.0, 0.5}), DomainError);
  }
}

TEST_CASE("shape errors") {
  ad::Tape tape;
  ad::Tensor a = tape.constant(2, 3, std::vector<double>(6, 1.0));
  ad::Tensor b = tape.constant(2, 2, std::vector<double>(4, 1.0));
  CHECK_THROWS_AS(tape.matmul(a, a), ShapeError);
  CHECK_THROWS_AS(tape.add(a, b), ShapeError);
  CHECK_THROWS_AS(tape.elementwise_mul(a, b), ShapeError);
  CHECK_THROWS_AS(tape.concat(a, b, 0), ShapeError);
  CHECK_THROWS_AS(tape.concat(a, b, 2), ShapeError);
  CHECK_THROWS_AS(tape.backward(a), ShapeError);
}

TEST_CASE("backward twice without reset errors; reset recovers") {
  ad::Tape tape;
  ad::Tensor x = tape.variable(1, 1, {2.0});
  ad::Tensor loss = tape.sum(x);
  tape.backward(loss);
  CHECK_THROWS_AS(tape.backward(loss), ContractError);
  tape.reset();
  ad::Tensor y = tape.variable(1, 1, {2.0});
  CHECK_NOTHROW(tape.backward(tape.sum(y)));
}

TEST_CASE("finite-difference agreement for a composed network") {
  SplitMix64 rng(11);
  const std::size_t in = 4, hidden = 6, batch = 3;
  std::vector<double> x0(batch * in), w0(in * hidden), v0(hidden * 1);
  for (double& v : x0) v = rng.uniform(-1, 1);
  for (double& v : w0) v = rng.uniform(-0.5, 0.5);
  for (double& v : v0) v = rng.uniform(-0.5, 0.5);
  std::vector<double> targets{1.0, 0.0, 1.0};

  auto loss_at = [&](const std::vector<double>& w) {
    ad::Tape t;
    ad::Tensor x = t.constant(batch, in, x0);
    ad::Tensor W = t.variable(in, hidden, w);
    ad::Tensor V = t.constant(hidden, 1, v0);
    ad::Tensor logits = t.matmul(t.relu(t.matmul(x, W)), V);
    return t.bce_with_logits(logits, targets).scalar();
  };

  ad::Tape tape;
  ad::Tensor x = tape.constant(batch, in, x0);
  ad::Tensor W = tape.variable(in, hidden, w0);
  ad::Tensor V = tape.constant(hidden, 1, v0);
  ad::Tensor logits = tape.matmul(tape.relu(tape.matmul(x, W)), V);
  tape.backward(tape.bce_with_logits(logits, targets));

  std::vector<double> tape_grad(W.grad().begin(), W.grad().end());
  std::vector<double> fd = oracle::finite_difference_gradient(loss_at, w0);
  CHECK(oracle::max_relative_error(tape_grad, fd) < 1e-4);
}

TEST_CASE("finite checking traps NaN when enabled") {
  ad::Tape tape(true);
  ad::Tensor x = tape.constant(1, 1, {1e308});
  CHECK_THROWS_AS(tape.scale(x, 1e308), NumericError);
}

TEST_CASE("glorot init is seeded and bounded; identity needs square shapes") {
  ad::Parameter a = ad::make_parameter("w", 8, 4, ad::Init::glorot_uniform, 5);
  ad::Parameter b = ad::make_parameter("w", 8, 4, ad::Init::glorot_uniform, 5);
  ad::Parameter c = ad::make_parameter("w", 8, 4, ad::Init::glorot_uniform, 6);
  CHECK(a.value == b.value);
  CHECK(a.value != c.value);
  const double limit = std::sqrt(6.0 / 12.0);
  for (double v : a.value) CHECK(std::abs(v) <= limit);
  CHECK_THROWS_AS(ad::make_parameter("i", 2, 3, ad::Init::identity, 0), ShapeError);
  ad::Parameter id = ad::make_parameter("i", 3, 3, ad::Init::identity, 0);
  CHECK(id.value == std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  ad::Parameter p = ad::make_parameter("p", 2, 2, ad::Init::glorot_uniform, 1);
  std::vector<double> before = p.value;
  ad::AdamState state;
  ad::adam_step(p, std::vector<double>(4, 0.0), state, {});
  CHECK(p.value == before);
}

TEST_CASE("adam: first step from zero state moves by about lr") {
  ad::Parameter p = ad::make_parameter("p", 1, 3, ad::Init::zeros, 0);
  ad::AdamState state;
  ad::AdamConfig cfg;
  cfg.lr = 0.05;
  ad::adam_step(p, std::vector<double>{0.2, -3.0, 1e-3}, state, cfg);
  for (double v : p.value) {
    CHECK(std::abs(v) == doctest::Approx(cfg.lr).epsilon(0.01));
  }
  CHECK(p.value[0] < 0);
  CHECK(p.value[1] > 0);
}

TEST_CASE("adam runs are bit-identical") {
  auto run = [] {
    ad::Parameter p = ad::make_parameter("p", 4, 4, ad::Init::glorot_uniform, 9);
    ad::AdamState state;
    SplitMix64 rng(21);
    for (int step = 0; step < 25; ++step) {
      std::vector<double> g(16);
      for (double& v : g) v = rng.uniform(-1, 1);
      ad::adam_step(p, g, state, {});
    }
    return p.value;
  };
  CHECK(run() == run());
}
