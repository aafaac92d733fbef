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

#include "latentq/verify.hpp"

using namespace latentq;

namespace {

const ElementaryLabel kQubit{"Q", 2};

TheoryUnderTest quick_tut(LatentConfig cfg, std::uint64_t seed = 7,
                          int trials = 16) {
  TheoryUnderTest tut = TheoryUnderTest::make(std::move(cfg), kQubit, seed, trials);
  return tut;
}

double worst_deviation(const std::vector<CheckReport>& reports) {
  double worst = 0.0;
  for (const CheckReport& r : reports) worst = std::max(worst, r.max_deviation);
  return worst;
}

}  // namespace

TEST_CASE("samplers produce valid objects") {
  std::mt19937_64 rng(1);
  const Matrix u = random_unitary(5, rng);
  CHECK(max_abs_diff(u.adjoint() * u, Matrix::Identity(5, 5)) < 1e-12);

  const Matrix rho = random_density(4, rng);
  CHECK(is_density(rho).pass);

  for (int i = 0; i < 20; ++i)
    CHECK(random_cptni(FactorShape{3}, rng).is_trace_nonincreasing(1e-10));
  CHECK(random_cptp(FactorShape{3}, rng).is_channel(1e-10));
}

TEST_CASE("the plain tensor-product theory passes every law") {
  const auto reports = run_suite(quick_tut(LatentConfig::standard_qt()));
  REQUIRE(reports.size() == 9);
  for (const CheckReport& r : reports) {
    CAPTURE(r.name);
    CHECK(r.pass);
    CHECK(r.max_deviation < 1e-12);
  }
}

TEST_CASE("the two-dimensional-link theory passes every law") {
  const auto reports = run_suite(quick_tut(LatentConfig::simplest(2)));
  REQUIRE(reports.size() == 9);
  const std::vector<std::string> expected_names = {
      "interchange",     "assoc_sequential", "assoc_parallel",
      "identity_laws",   "unit_laws",        "swap_naturality",
      "swap_hexagon",    "swap_involution",  "bifunctoriality"};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CAPTURE(reports[i].name);
    CHECK(reports[i].name == expected_names[i]);
    CHECK(reports[i].pass);
    CHECK(reports[i].max_deviation < 1e-9);
    CHECK(reports[i].trials > 0);
  }
}

TEST_CASE("a mixed link state is also a valid theory") {
  LatentConfig cfg(2, maximally_mixed_state(2));
  const auto reports = run_suite(quick_tut(std::move(cfg), 11, 8));
  for (const CheckReport& r : reports) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }
}

TEST_CASE("identical seeds reproduce identical reports") {
  const auto a = run_suite(quick_tut(LatentConfig::simplest(2), 42, 6));
  const auto b = run_suite(quick_tut(LatentConfig::simplest(2), 42, 6));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].trials == b[i].trials);
    CHECK(a[i].max_deviation == b[i].max_deviation);  // bitwise
    CHECK(a[i].pass == b[i].pass);
  }
  const auto c = run_suite(quick_tut(LatentConfig::simplest(2), 43, 6));
  bool any_differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].max_deviation != c[i].max_deviation) any_differs = true;
  CHECK(any_differs);
}

TEST_CASE("deliberate defects are caught with gross deviations") {
  SUBCASE("wrong fresh link state in parallel composition") {
    LatentConfig cfg = LatentConfig::simplest(2);
    cfg.mutation = Mutation::kStarWrongFresh;
    TheoryUnderTest tut = quick_tut(std::move(cfg), 3, 16);
    tut.stop_on_gross_failure = true;
    const CheckReport r = check_interchange(tut);
    CHECK_FALSE(r.pass);
    CHECK(r.max_deviation > 1e-2);
    CHECK_FALSE(r.witness.empty());
  }
  SUBCASE("sequential composition dropping the earlier link action") {
    LatentConfig cfg = LatentConfig::simplest(2);
    cfg.mutation = Mutation::kSeqDropLatent;
    TheoryUnderTest tut = quick_tut(std::move(cfg), 3, 16);
    tut.stop_on_gross_failure = true;
    const CheckReport r = check_identity_laws(tut);
    CHECK_FALSE(r.pass);
    CHECK(r.max_deviation > 1e-2);
  }
  SUBCASE("swap forgetting the link factors") {
    LatentConfig cfg = LatentConfig::simplest(2);
    cfg.mutation = Mutation::kSwapNoLatent;
    TheoryUnderTest tut = quick_tut(std::move(cfg), 3, 16);
    tut.stop_on_gross_failure = true;
    const CheckReport r = check_swap_naturality(tut);
    CHECK_FALSE(r.pass);
    CHECK(r.max_deviation > 1e-2);
  }
  SUBCASE("every defect trips the full suite") {
    for (Mutation m : {Mutation::kStarWrongFresh, Mutation::kSeqDropLatent,
                       Mutation::kSwapNoLatent}) {
      LatentConfig cfg = LatentConfig::simplest(2);
      cfg.mutation = m;
      TheoryUnderTest tut = quick_tut(std::move(cfg), 3, 16);
      tut.stop_on_gross_failure = true;
      CHECK(worst_deviation(run_suite(tut)) > 1e-2);
    }
  }
}

TEST_CASE("malformed wire data is rejected at construction") {
  // A corrupted identity cannot even be built: its wire arity must match.
  LatentConfig cfg = LatentConfig::simplest(2);
  cfg.register_label(kQubit);
  const SystemString q = SystemString::elementary(kQubit);
  CHECK_THROWS_AS(
      make_transformation(q, q, KrausMap::identity(qmap(q, cfg).full_shape()),
                          NoisyPermutation::identity(2), cfg),
      std::invalid_argument);
}

TEST_CASE("the ancilla pool always contains the empty string") {
  const TheoryUnderTest tut = quick_tut(LatentConfig::simplest(2));
  REQUIRE(!tut.ancilla_pool.empty());
  CHECK(tut.ancilla_pool[0].is_trivial());
}

TEST_CASE("a run with no feasible comparison cannot pass") {
  TheoryUnderTest tut = quick_tut(LatentConfig::simplest(2), 1, 2);
  tut.realized_dim_cap = 1;  // excludes every pooled ancilla
  const CheckReport r = check_interchange(tut);
  CHECK_FALSE(r.pass);
  CHECK(r.witness == "no comparison fits the realized dimension cap");
}
