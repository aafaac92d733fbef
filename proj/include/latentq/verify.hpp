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

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "latentq/transforms.hpp"

namespace latentq {

/// Outcome of one numerical law check: the worst operator deviation seen
/// over all randomized trials and pooled ancillas.
struct CheckReport {
  std::string name;
  int trials = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string witness;  // where the worst deviation occurred
};

/// One theory instance plus the sampling plan for checking its laws.
struct TheoryUnderTest {
  LatentConfig cfg;
  ElementaryLabel label;                    // elementary type the checks act on
  std::vector<SystemString> ancilla_pool;   // always includes the empty string
  std::uint64_t seed = 0;
  int trials = 100;
  double tolerance = 1e-9;
  Index realized_dim_cap = 256;  // skip pooled ancillas beyond this total dim
  /// Abort a check once a deviation above 1e-2 is found (used when probing
  /// deliberately broken theories).
  bool stop_on_gross_failure = false;

  static TheoryUnderTest make(LatentConfig cfg, ElementaryLabel label,
                              std::uint64_t seed = 0, int trials = 100);
};

// Deterministic samplers; results are a function of the generator state only.
Matrix random_unitary(Index dim, std::mt19937_64& rng);
Matrix random_density(Index dim, std::mt19937_64& rng);
Matrix random_pure_density(Index dim, std::mt19937_64& rng);
/// Stinespring-style sampling: a Haar-like unitary on system x environment
/// (environment dimension = system dimension) compressed to Kraus form,
/// scaled by a factor in (0, 1] on half the draws.
KrausMap random_cptni(const FactorShape& shape, std::mt19937_64& rng);
KrausMap random_cptp(const FactorShape& shape, std::mt19937_64& rng);
LatentTransformation random_elementary_transformation(const ElementaryLabel& label,
                                                      const LatentConfig& cfg,
                                                      std::mt19937_64& rng,
                                                      bool reset_link);

CheckReport check_interchange(const TheoryUnderTest& tut);
CheckReport check_assoc_sequential(const TheoryUnderTest& tut);
CheckReport check_assoc_parallel(const TheoryUnderTest& tut);
CheckReport check_identity_laws(const TheoryUnderTest& tut);
CheckReport check_unit_laws(const TheoryUnderTest& tut);
CheckReport check_swap_naturality(const TheoryUnderTest& tut);
CheckReport check_swap_hexagon(const TheoryUnderTest& tut);
CheckReport check_swap_involution(const TheoryUnderTest& tut);
CheckReport check_bifunctoriality(const TheoryUnderTest& tut);

/// All nine checks in a fixed order. Deterministic given (cfg, seed).
std::vector<CheckReport> run_suite(const TheoryUnderTest& tut);

}  // namespace latentq
