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

#include <optional>

#include "latentq/states.hpp"
#include "latentq/theory.hpp"

namespace latentq {

/// The reduced form of a channel family acting on one wire bundle: k fresh
/// link wires are prepended (positions 0..k-1 before the permutation), the
/// k+n wires are permuted, and the first k' wires after the permutation are
/// traced out. Reduced means no fresh wire is traced (perm[i] >= k' for
/// i < k). Instances are normalized so equal channels have equal data: fresh
/// wires are ordered by destination, traced slots by source wire.
class NoisyPermutation {
 public:
  NoisyPermutation();  // arity 0 -> 0
  NoisyPermutation(int fresh, int traced, Permutation perm);

  static NoisyPermutation identity(int n);
  /// The single-wire trace-and-replace channel.
  static NoisyPermutation reset();

  int fresh_count() const { return fresh_; }
  int traced_count() const { return traced_; }
  int input_arity() const { return static_cast<int>(perm_.size()) - fresh_; }
  int output_arity() const { return static_cast<int>(perm_.size()) - traced_; }
  const Permutation& perm() const { return perm_; }

  /// Output slot receiving input wire i, or nullopt if it is traced.
  std::optional<int> input_destination(int i) const;
  /// Input wire feeding output slot s, or nullopt if it is fresh.
  std::optional<int> output_source(int s) const;

  bool operator==(const NoisyPermutation&) const = default;

 private:
  void normalize();

  int fresh_ = 0;
  int traced_ = 0;
  Permutation perm_;
};

/// later after earlier; fresh wires that the later stage traces cancel.
NoisyPermutation seq_compose(const NoisyPermutation& later,
                             const NoisyPermutation& earlier);
/// Side-by-side action on the concatenated wire bundles.
NoisyPermutation par_merge(const NoisyPermutation& a, const NoisyPermutation& b);

/// One latent process: a quantum operation on the full factored space of the
/// input system, together with the reduced-form wire data generating its
/// action on every cross link with an ancilla.
struct LatentTransformation {
  SystemString input_system;
  SystemString output_system;
  KrausMap op_part;
  NoisyPermutation latent_part;
};

LatentTransformation make_transformation(SystemString input, SystemString output,
                                         KrausMap op_part,
                                         NoisyPermutation latent_part,
                                         const LatentConfig& cfg);

LatentTransformation identity_transformation(const SystemString& s,
                                             const LatentConfig& cfg);

/// A process on one elementary system: a local quantum operation plus either
/// the identity or the trace-and-replace action on links.
LatentTransformation elementary_transformation(const ElementaryLabel& label,
                                               KrausMap local, bool reset_link,
                                               const LatentConfig& cfg);

/// States / effects as processes from / to the trivial system.
LatentTransformation preparation(const LqtState& state, const LatentConfig& cfg);
LatentTransformation measurement_effect(const LqtEffect& effect,
                                        const LatentConfig& cfg);

/// The process exchanging two subsystems; a pure factor relocation.
LatentTransformation swap_transformation(const SystemString& a,
                                         const SystemString& b,
                                         const LatentConfig& cfg);

LatentTransformation seq_compose(const LatentTransformation& g,
                                 const LatentTransformation& f,
                                 const LatentConfig& cfg);

LatentTransformation par_compose(const LatentTransformation& a,
                                 const LatentTransformation& b,
                                 const LatentConfig& cfg);

/// The channel of the wire data on the link bundle between one ancilla
/// character and the transformed string: fresh link states in, permutation,
/// trace out. Trace preserving by construction.
KrausMap noisy_perm_kraus(const NoisyPermutation& np,
                          const ElementaryLabel& ancilla_char,
                          const SystemString& input,
                          const SystemString& output, const LatentConfig& cfg);

Matrix apply_noisy_perm(const NoisyPermutation& np, const Matrix& rho,
                        const ElementaryLabel& ancilla_char,
                        const SystemString& input, const SystemString& output,
                        const LatentConfig& cfg);

/// The cross-link channel of a parallel composition: links with a traced wire
/// on either side are traced, links with a fresh wire on either side are
/// freshly prepared, the rest pass through.
KrausMap star_product_kraus(const LatentTransformation& a,
                            const LatentTransformation& b,
                            const LatentConfig& cfg);

/// The quantum operation of t extended by the identity on an ancilla string:
/// the full map qmap(input + ancilla) -> qmap(output + ancilla).
KrausMap realize(const LatentTransformation& t, const SystemString& ancilla,
                 const LatentConfig& cfg);

/// (realize(t, ancilla))(rho), computed blockwise without materializing the
/// full Kraus set.
Matrix apply_realized(const LatentTransformation& t, const SystemString& ancilla,
                      const Matrix& rho, const LatentConfig& cfg);

/// Generator distance: +inf if systems or wire data differ, otherwise the
/// max-abs difference of the local actions' Choi matrices.
double generator_distance(const LatentTransformation& a,
                          const LatentTransformation& b);

bool transformations_equal(const LatentTransformation& a,
                           const LatentTransformation& b, double tol = kOpTol);

/// Kraus form of a channel that prepends the given fresh factors, relocates
/// wires by perm (fresh wires first), and traces the first `traced` factors
/// after relocation. Building block for the wire channels above.
KrausMap wire_channel_kraus(const FactorShape& input_dims,
                            const std::vector<Matrix>& fresh_states,
                            const Permutation& perm, int traced);

}  // namespace latentq
