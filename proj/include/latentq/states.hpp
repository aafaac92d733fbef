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

#include <vector>

#include "latentq/theory.hpp"

namespace latentq {

/// A state of a latent composite: a density operator on the full factored
/// space of its system, in canonical factor order. Traces in [0, 1] are
/// allowed (sub-normalized states are meaningful).
struct LqtState {
  SystemString system;
  Matrix op;
};

/// An effect: an operator with 0 <= op <= 1 on the full factored space.
struct LqtEffect {
  SystemString system;
  Matrix op;
};

/// Validating constructors.
LqtState make_state(SystemString system, Matrix op, const LatentConfig& cfg,
                    double tol = kOpTol);
LqtEffect make_effect(SystemString system, Matrix op, const LatentConfig& cfg,
                      double tol = kOpTol);

struct Povm {
  SystemString system;
  std::vector<LqtEffect> outcomes;
};

Povm make_povm(SystemString system, std::vector<Matrix> elements,
               const LatentConfig& cfg, double tol = kOpTol);

/// Whether all outcomes are mutually orthogonal self-adjoint projections.
bool is_pvm(const Povm& povm, double tol = kOpTol);

/// Parallel composition of states: a fresh link state for every pair of
/// positions in distinct parts, existing sectors kept, all factors reordered
/// into the composite's canonical order.
LqtState compose_states(const std::vector<LqtState>& parts,
                        const LatentConfig& cfg);

/// Parallel composition of effects: identity on every cross-part link factor.
LqtEffect compose_effects(const std::vector<LqtEffect>& parts,
                          const LatentConfig& cfg);

/// Born pairing Tr(rho Pi).
double pairing(const LqtEffect& effect, const LqtState& state);

/// Outcome-wise parallel composition; outcome tuples in lexicographic order
/// with the first part's index varying slowest.
Povm compose_povms(const std::vector<Povm>& parts, const LatentConfig& cfg);

/// The one-outcome POVM {identity}.
Povm unit_povm(const SystemString& system, const LatentConfig& cfg);

}  // namespace latentq
