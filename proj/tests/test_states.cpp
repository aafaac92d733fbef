// Copyright 2026 The latentq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latentq/states.hpp"
#include "latentq/verify.hpp"

using namespace latentq;

namespace {

const ElementaryLabel kQubit{"Q", 2};

LatentConfig simple2() {
  LatentConfig cfg = LatentConfig::simplest(2);
  cfg.register_label(kQubit);
  return cfg;
}

const SystemString kQ = SystemString::elementary(kQubit);

int numeric_rank(const Matrix& m, double cutoff = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  int rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cutoff) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("composing a single state is the identity") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(1);
  const LqtState s = make_state(kQ, random_density(2, rng), cfg);
  CHECK(max_abs_diff(compose_states({s}, cfg).op, s.op) == 0.0);
}

TEST_CASE("two pure qubits compose to a pure state of dimension eight") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(2);
  const LqtState a = make_state(kQ, random_pure_density(2, rng), cfg);
  const LqtState b = make_state(kQ, random_pure_density(2, rng), cfg);
  const LqtState joint = compose_states({a, b}, cfg);
  CHECK(joint.op.rows() == 8);
  CHECK(numeric_rank(joint.op) == 1);
  // Elementary parts: the composite is links-then-parts, with no reordering.
  CHECK(max_abs_diff(joint.op,
                     kron(kron(cfg.latent_state(kQubit, kQubit), a.op), b.op)) ==
        0.0);
}

TEST_CASE("purity closure over random instances") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const LqtState a = make_state(kQ, random_pure_density(2, rng), cfg);
    const LqtState b = make_state(kQ, random_pure_density(2, rng), cfg);
    const LqtState c = make_state(kQ, random_pure_density(2, rng), cfg);
    CHECK(numeric_rank(compose_states({a, b, c}, cfg).op) == 1);
  }
}

TEST_CASE("traces multiply under composition") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix ma = random_density(2, rng) * 0.8;
    Matrix mb = random_density(2, rng) * 0.6;
    const LqtState a = make_state(kQ, ma, cfg);
    const LqtState b = make_state(kQ, mb, cfg);
    const double expected = ma.trace().real() * mb.trace().real();
    CHECK(compose_states({a, b}, cfg).op.trace().real() ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("composite parts keep their own link sectors") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(5);
  const SystemString qq = compose_systems(kQ, kQ);
  const LqtState pair = make_state(qq, random_density(8, rng), cfg);
  const LqtState single = make_state(kQ, random_density(2, rng), cfg);
  const LqtState joint = compose_states({pair, single}, cfg);
  CHECK(joint.op.rows() == qmap(compose_systems(qq, kQ), cfg).total_dim());
  // Tracing the two fresh cross links and the new party recovers the pair.
  const QSpace q = qmap(joint.system, cfg);
  // Canonical pairs on three positions: (2,1), (3,1), (3,2); the pair's own
  // link is (2,1), cross links to the appended system are (3,1), (3,2).
  const Matrix back = partial_trace(
      joint.op, q.full_shape(),
      {q.latent_slot(2, 1), q.operational_slot(1), q.operational_slot(2)});
  CHECK(max_abs_diff(back, pair.op) < 1e-12);
}

TEST_CASE("unit effects compose to the unit effect") {
  const LatentConfig cfg = simple2();
  const LqtEffect unit{kQ, Matrix::Identity(2, 2)};
  const LqtEffect joint = compose_effects({unit, unit}, cfg);
  CHECK(max_abs_diff(joint.op, Matrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("sharp effects stay sharp under composition") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(6);
  const Matrix u = random_unitary(2, rng);
  const Matrix p0 = u.col(0) * u.col(0).adjoint();
  const Matrix p1 = u.col(1) * u.col(1).adjoint();
  const Povm pvm = make_povm(kQ, {p0, p1}, cfg);
  REQUIRE(is_pvm(pvm));
  const Povm joint = compose_povms({pvm, pvm}, cfg);
  CHECK(joint.outcomes.size() == 4);
  CHECK(is_pvm(joint));
}

TEST_CASE("pairing basics") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(7);
  const LqtState rho = make_state(kQ, random_density(2, rng), cfg);
  const LqtEffect unit{kQ, Matrix::Identity(2, 2)};
  CHECK(pairing(unit, rho) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix zero_state = Matrix::Zero(2, 2);
  zero_state(0, 0) = 1.0;
  Matrix one_proj = Matrix::Zero(2, 2);
  one_proj(1, 1) = 1.0;
  CHECK(pairing(LqtEffect{kQ, one_proj}, LqtState{kQ, zero_state}) == 0.0);

  // Rank-r projector against the maximally mixed state gives r/d.
  const SystemString qq = compose_systems(kQ, kQ);
  const Index d = qmap(qq, cfg).total_dim();
  Matrix proj = Matrix::Zero(d, d);
  for (Index i = 0; i < 3; ++i) proj(i, i) = 1.0;
  CHECK(pairing(LqtEffect{qq, proj},
                LqtState{qq, Matrix::Identity(d, d) / static_cast<double>(d)}) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-12));

  CHECK_THROWS_AS(pairing(unit, LqtState{qq, Matrix::Identity(d, d) / 8.0}),
                  std::invalid_argument);
}

TEST_CASE("pairing factorizes over products") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(8);
  // Effect basis on one qubit plus random states; exhaustive over the basis.
  std::vector<Matrix> basis;
  basis.push_back(Matrix::Identity(2, 2) * 0.5);
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  basis.push_back(z);
  Matrix x(2, 2);
  x << 0.5, 0.5, 0.5, 0.5;
  basis.push_back(x);
  Matrix y(2, 2);
  y << 0.5, Complex(0, -0.5), Complex(0, 0.5), 0.5;
  basis.push_back(y);

  for (int trial = 0; trial < 5; ++trial) {
    const LqtState r1 = make_state(kQ, random_density(2, rng), cfg);
    const LqtState r2 = make_state(kQ, random_density(2, rng), cfg);
    const LqtState joint = compose_states({r1, r2}, cfg);
    for (const Matrix& ea : basis)
      for (const Matrix& eb : basis) {
        const LqtEffect fa{kQ, ea}, fb{kQ, eb};
        const double product = pairing(fa, r1) * pairing(fb, r2);
        CHECK(pairing(compose_effects({fa, fb}, cfg), joint) ==
              doctest::Approx(product).epsilon(1e-12));
      }
  }
}

TEST_CASE("product effects never see the cross links") {
  const LatentConfig cfg = simple2();
  std::mt19937_64 rng(9);
  const SystemString qq = compose_systems(kQ, kQ);
  const QSpace q = qmap(qq, cfg);
  for (int trial = 0; trial < 10; ++trial) {
    const LqtState sigma = make_state(qq, random_density(8, rng), cfg);
    const Matrix ea = 0.5 * (random_density(2, rng) * 0.9 +
                             Matrix::Identity(2, 2) * 0.05);
    const Matrix eb = 0.5 * (random_density(2, rng) * 0.9 +
                             Matrix::Identity(2, 2) * 0.05);
    const LqtEffect joint =
        compose_effects({LqtEffect{kQ, ea}, LqtEffect{kQ, eb}}, cfg);
    // Independent path: strip the link sector from the state instead.
    const Matrix reduced = partial_trace(
        sigma.op, q.full_shape(), {q.operational_slot(1), q.operational_slot(2)});
    const double direct = (reduced * kron(ea, eb)).trace().real();
    CHECK(pairing(joint, sigma) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("povm composition") {
  const LatentConfig cfg = simple2();
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Povm za = make_povm(kQ, {p0, p1}, cfg);
  const Povm joint = compose_povms({za, za}, cfg);
  REQUIRE(joint.outcomes.size() == 4);
  Matrix sum = Matrix::Zero(8, 8);
  for (const LqtEffect& e : joint.outcomes) sum += e.op;
  CHECK(max_abs_diff(sum, Matrix::Identity(8, 8)) < 1e-12);

  // Outcome order: the first factor varies slowest.
  Matrix expect01 = kron(kron(Matrix::Identity(2, 2), p0), p1);
  CHECK(max_abs_diff(joint.outcomes[1].op, expect01) == 0.0);

  const Povm unit = unit_povm(kQ, cfg);
  const Povm extended = compose_povms({za, unit}, cfg);
  CHECK(extended.outcomes.size() == 2);

  CHECK(max_abs_diff(compose_povms({unit, unit}, cfg).outcomes[0].op,
                     Matrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("validation rejects malformed data") {
  const LatentConfig cfg = simple2();
  CHECK_THROWS_AS(make_state(kQ, Matrix::Identity(3, 3), cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_state(kQ, Matrix::Identity(2, 2), cfg),
                  std::invalid_argument);  // trace 2
  CHECK_THROWS_AS(make_effect(kQ, 2.0 * Matrix::Identity(2, 2), cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_povm(kQ, {Matrix::Identity(2, 2) * 0.5}, cfg),
                  std::invalid_argument);  // does not resolve the identity
  CHECK_THROWS_AS(compose_states({}, cfg), std::invalid_argument);
}
