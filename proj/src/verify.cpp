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

#include "latentq/verify.hpp"

#include <cmath>
#include <string_view>

namespace latentq {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Matrix ginibre(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

}  // namespace

TheoryUnderTest TheoryUnderTest::make(LatentConfig cfg, ElementaryLabel label,
                                      std::uint64_t seed, int trials) {
  TheoryUnderTest tut;
  tut.label = label;
  tut.cfg = std::move(cfg);
  tut.cfg.register_label(label);
  const SystemString q = SystemString::elementary(label);
  tut.ancilla_pool = {SystemString::trivial(), q, compose_systems(q, q)};
  tut.seed = seed;
  tut.trials = trials;
  return tut;
}

Matrix random_unitary(Index dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix random_density(Index dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Matrix random_pure_density(Index dim, std::mt19937_64& rng) {
  Vector v = ginibre(dim, 1, rng);
  v.normalize();
  return v * v.adjoint();
}

namespace {

KrausMap stinespring_sample(const FactorShape& shape, std::mt19937_64& rng,
                            double scale) {
  const Index d = shape.total();
  const Index env = d;
  const Matrix u = random_unitary(d * env, rng);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(env));
  const double root = std::sqrt(scale);
  for (Index e = 0; e < env; ++e) {
    Matrix k(d, d);
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) k(r, c) = u(r * env + e, c * env);
    ops.push_back(root * k);
  }
  return KrausMap(shape, shape, std::move(ops));
}

}  // namespace

KrausMap random_cptni(const FactorShape& shape, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool shrink = unit(rng) < 0.5;
  const double scale = shrink ? 1.0 - unit(rng) * 0.9 : 1.0;
  return stinespring_sample(shape, rng, scale);
}

KrausMap random_cptp(const FactorShape& shape, std::mt19937_64& rng) {
  return stinespring_sample(shape, rng, 1.0);
}

LatentTransformation random_elementary_transformation(const ElementaryLabel& label,
                                                      const LatentConfig& cfg,
                                                      std::mt19937_64& rng,
                                                      bool reset_link) {
  const SystemString s = SystemString::elementary(label);
  return elementary_transformation(
      label, random_cptni(qmap(s, cfg).full_shape(), rng), reset_link, cfg);
}

namespace {

// Shared trial bookkeeping: worst deviation, witness, early abort.
class Checker {
 public:
  Checker(const TheoryUnderTest& tut, std::string_view name)
      : tut_(tut), name_(name), rng_(tut.seed ^ fnv1a(name)) {}

  std::mt19937_64& rng() { return rng_; }
  bool aborted() const { return tut_.stop_on_gross_failure && max_dev_ > 1e-2; }

  void note(double dev, int trial, const std::string& where) {
    ++comparisons_;
    if (dev > max_dev_) {
      max_dev_ = dev;
      witness_ = "trial " + std::to_string(trial) + ", " + where;
    }
  }

  /// Realize both sides over every pooled ancilla (within the dimension cap)
  /// and compare their action on a random input state.
  void compare(const LatentTransformation& lhs, const LatentTransformation& rhs,
               int trial) {
    for (const SystemString& anc : tut_.ancilla_pool) {
      const SystemString full = compose_systems(lhs.input_system, anc);
      const Index d = qmap(full, tut_.cfg).total_dim();
      if (d > tut_.realized_dim_cap) continue;
      const Matrix rho = random_density(d, rng_);
      const double dev = max_abs_diff(apply_realized(lhs, anc, rho, tut_.cfg),
                                      apply_realized(rhs, anc, rho, tut_.cfg));
      note(dev, trial, "ancilla [" + anc.str() + "]");
    }
  }

  void compare_generators(const LatentTransformation& lhs,
                          const LatentTransformation& rhs, int trial) {
    double dev = generator_distance(lhs, rhs);
    if (std::isinf(dev)) dev = 1.0;  // structurally different generators
    note(dev, trial, "generator data");
  }

  CheckReport report(int trials_run) const {
    CheckReport r;
    r.name = name_;
    r.trials = trials_run;
    r.max_deviation = max_dev_;
    r.tolerance = tut_.tolerance;
    r.pass = max_dev_ < tut_.tolerance;
    r.witness = r.pass ? "" : witness_;
    if (comparisons_ == 0) {  // a vacuous run must not look like a pass
      r.pass = false;
      r.witness = "no comparison fits the realized dimension cap";
    }
    return r;
  }

 private:
  const TheoryUnderTest& tut_;
  std::string name_;
  std::mt19937_64 rng_;
  double max_dev_ = 0.0;
  int comparisons_ = 0;
  std::string witness_;
};

NoisyPermutation sample_wire_pair_action(std::mt19937_64& rng) {
  // The valid reduced forms on a two-wire bundle, up to normalization.
  switch (rng() % 4) {
    case 0: return NoisyPermutation::identity(2);
    case 1: return NoisyPermutation(0, 0, Permutation({1, 0}));
    case 2: return NoisyPermutation(1, 1, Permutation({1, 0, 2}));
    default: return NoisyPermutation(2, 2, Permutation({2, 3, 0, 1}));
  }
}

LatentTransformation random_pair_transformation(const SystemString& s,
                                                const LatentConfig& cfg,
                                                std::mt19937_64& rng) {
  return make_transformation(s, s, random_cptni(qmap(s, cfg).full_shape(), rng),
                             sample_wire_pair_action(rng), cfg);
}

}  // namespace

CheckReport check_interchange(const TheoryUnderTest& tut) {
  Checker c(tut, "interchange");
  const auto& cfg = tut.cfg;
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const unsigned bits = static_cast<unsigned>(t) % 16u;
    const auto a = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 1u);
    const auto b = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 2u);
    const auto d = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 4u);
    const auto e = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 8u);
    const auto lhs = par_compose(seq_compose(b, a, cfg), seq_compose(e, d, cfg), cfg);
    const auto rhs = seq_compose(par_compose(b, e, cfg), par_compose(a, d, cfg), cfg);
    c.compare(lhs, rhs, t);
  }
  return c.report(t);
}

CheckReport check_assoc_sequential(const TheoryUnderTest& tut) {
  Checker c(tut, "assoc_sequential");
  const auto& cfg = tut.cfg;
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const unsigned bits = static_cast<unsigned>(t) % 8u;
    const auto a = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 1u);
    const auto b = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 2u);
    const auto d = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 4u);
    c.compare(seq_compose(seq_compose(d, b, cfg), a, cfg),
              seq_compose(d, seq_compose(b, a, cfg), cfg), t);
  }
  return c.report(t);
}

CheckReport check_assoc_parallel(const TheoryUnderTest& tut) {
  Checker c(tut, "assoc_parallel");
  const auto& cfg = tut.cfg;
  const auto ident = identity_transformation(SystemString::elementary(tut.label), cfg);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const unsigned bits = static_cast<unsigned>(t) % 8u;
    const auto a = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 1u);
    const auto b = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 2u);
    const auto d = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 4u);
    c.compare(par_compose(par_compose(a, b, cfg), d, cfg),
              par_compose(a, par_compose(b, d, cfg), cfg), t);
    // Restricted form: one process beside two identity wires.
    c.compare(par_compose(par_compose(a, ident, cfg), ident, cfg),
              par_compose(a, par_compose(ident, ident, cfg), cfg), t);
  }
  return c.report(t);
}

CheckReport check_identity_laws(const TheoryUnderTest& tut) {
  Checker c(tut, "identity_laws");
  const auto& cfg = tut.cfg;
  const SystemString q = SystemString::elementary(tut.label);
  const auto ident = identity_transformation(q, cfg);
  const auto ident_pair = identity_transformation(compose_systems(q, q), cfg);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const auto a = random_elementary_transformation(tut.label, cfg, c.rng(), t & 1);
    c.compare(seq_compose(ident, a, cfg), a, t);
    c.compare(seq_compose(a, ident, cfg), a, t);
    c.compare_generators(seq_compose(ident, a, cfg), a, t);
    c.compare(par_compose(ident, ident, cfg), ident_pair, t);
    c.compare_generators(par_compose(ident, ident, cfg), ident_pair, t);
  }
  return c.report(t);
}

CheckReport check_unit_laws(const TheoryUnderTest& tut) {
  Checker c(tut, "unit_laws");
  const auto& cfg = tut.cfg;
  const auto unit = identity_transformation(SystemString::trivial(), cfg);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const auto a = random_elementary_transformation(tut.label, cfg, c.rng(), t & 1);
    c.compare(par_compose(a, unit, cfg), a, t);
    c.compare(par_compose(unit, a, cfg), a, t);
    c.compare_generators(par_compose(a, unit, cfg), a, t);
  }
  return c.report(t);
}

CheckReport check_swap_naturality(const TheoryUnderTest& tut) {
  Checker c(tut, "swap_naturality");
  const auto& cfg = tut.cfg;
  const SystemString q = SystemString::elementary(tut.label);
  const SystemString qq = compose_systems(q, q);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const auto ta = random_elementary_transformation(tut.label, cfg, c.rng(), t & 1);
    const auto tb = random_elementary_transformation(tut.label, cfg, c.rng(), t & 2);
    const auto sw = swap_transformation(q, q, cfg);
    c.compare(seq_compose(par_compose(tb, ta, cfg), sw, cfg),
              seq_compose(sw, par_compose(ta, tb, cfg), cfg), t);

    // Composite second party, so relocation of link factors matters.
    const auto tc = random_pair_transformation(qq, cfg, c.rng());
    const auto sw2 = swap_transformation(q, qq, cfg);
    c.compare(seq_compose(par_compose(tc, ta, cfg), sw2, cfg),
              seq_compose(sw2, par_compose(ta, tc, cfg), cfg), t);
  }
  return c.report(t);
}

CheckReport check_swap_hexagon(const TheoryUnderTest& tut) {
  Checker c(tut, "swap_hexagon");
  const auto& cfg = tut.cfg;
  const SystemString q = SystemString::elementary(tut.label);
  const auto ident = identity_transformation(q, cfg);
  const auto lhs = swap_transformation(q, compose_systems(q, q), cfg);
  const auto rhs = seq_compose(par_compose(ident, swap_transformation(q, q, cfg), cfg),
                               par_compose(swap_transformation(q, q, cfg), ident, cfg),
                               cfg);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) c.compare(lhs, rhs, t);
  return c.report(t);
}

CheckReport check_swap_involution(const TheoryUnderTest& tut) {
  Checker c(tut, "swap_involution");
  const auto& cfg = tut.cfg;
  const SystemString q = SystemString::elementary(tut.label);
  const SystemString qq = compose_systems(q, q);
  const auto round1 = seq_compose(swap_transformation(q, q, cfg),
                                  swap_transformation(q, q, cfg), cfg);
  const auto round2 = seq_compose(swap_transformation(q, qq, cfg),
                                  swap_transformation(qq, q, cfg), cfg);
  const auto id2 = identity_transformation(qq, cfg);
  const auto id3 = identity_transformation(compose_systems(qq, q), cfg);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    c.compare(round1, id2, t);
    c.compare_generators(round1, id2, t);
    c.compare(round2, id3, t);
  }
  return c.report(t);
}

CheckReport check_bifunctoriality(const TheoryUnderTest& tut) {
  Checker c(tut, "bifunctoriality");
  const auto& cfg = tut.cfg;
  const auto ident = identity_transformation(SystemString::elementary(tut.label), cfg);
  int t = 0;
  for (; t < tut.trials && !c.aborted(); ++t) {
    const unsigned bits = static_cast<unsigned>(t) % 8u;
    const auto a = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 1u);
    const auto b = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 2u);
    const auto d = random_elementary_transformation(tut.label, cfg, c.rng(), bits & 4u);
    // Sliding a process past an identity wire in either order.
    const auto joint = par_compose(a, d, cfg);
    c.compare(seq_compose(par_compose(a, ident, cfg), par_compose(ident, d, cfg), cfg),
              joint, t);
    c.compare(seq_compose(par_compose(ident, d, cfg), par_compose(a, ident, cfg), cfg),
              joint, t);
    // Sequential composition beside an identity wire.
    c.compare(par_compose(seq_compose(b, a, cfg), ident, cfg),
              seq_compose(par_compose(b, ident, cfg), par_compose(a, ident, cfg), cfg),
              t);
  }
  return c.report(t);
}

std::vector<CheckReport> run_suite(const TheoryUnderTest& tut) {
  return {
      check_interchange(tut),        check_assoc_sequential(tut),
      check_assoc_parallel(tut),     check_identity_laws(tut),
      check_unit_laws(tut),          check_swap_naturality(tut),
      check_swap_hexagon(tut),       check_swap_involution(tut),
      check_bifunctoriality(tut),
  };
}

}  // namespace latentq
