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
#include "latentq/verify.hpp"

namespace latentq {

struct Party {
  SystemString subsystem;
  std::vector<Povm> settings;
};

/// One product term of the preparational part: weight times a parallel
/// product of component states.
struct Preparation {
  double weight = 1.0;
  std::vector<LqtState> components;
};

struct Scenario {
  std::vector<Party> parties;
  LqtState shared_state;  // on the parallel composite of the party subsystems

  /// Product structure of the preparation, when the scenario was built from
  /// one; the partition may differ from the measurement partition.
  std::vector<Preparation> preparations;
  /// Pre-embedding operational state, when the shared state was embedded.
  std::optional<Matrix> embedded_qt_state;

  SystemString total_system() const;
};

Scenario make_scenario(std::vector<Party> parties, LqtState shared,
                       const LatentConfig& cfg);
Scenario make_embedded_scenario(std::vector<Party> parties, Matrix qt_state,
                                const LatentConfig& cfg);
Scenario make_product_scenario(std::vector<Party> parties,
                               std::vector<Preparation> preparations,
                               const LatentConfig& cfg);

struct CorrelationTable {
  struct Entry {
    std::vector<int> settings;
    std::vector<int> outcomes;
    double p = 0.0;
  };
  std::vector<Entry> entries;
};

/// Max entrywise difference; infinity on mismatched layouts.
double table_distance(const CorrelationTable& a, const CorrelationTable& b);

/// The table of joint outcome probabilities under composed effects.
CorrelationTable correlations_lqt(const Scenario& s, const LatentConfig& cfg);

/// The ordinary quantum state reproducing the scenario's correlations: the
/// shared state with factors grouped per party and every cross-party link
/// traced out.
struct QtProjection {
  Matrix state;                           // on the product of party spaces
  Permutation factor_perm;                // canonical -> grouped order
  std::vector<std::size_t> traced_slots;  // grouped slots that were removed
  std::vector<FactorShape> party_shapes;
};
QtProjection to_qt_state(const Scenario& s, const LatentConfig& cfg);

/// Independent table: plain tensor products of the party effect operators
/// against to_qt_state, with no link bookkeeping.
CorrelationTable correlations_qt_oracle(const Scenario& s, const LatentConfig& cfg);

/// Entrywise equality of the two tables; for embedded scenarios with
/// elementary parties, also of the table on the pre-embedding state.
CheckReport check_bell_equivalence(const Scenario& s, const LatentConfig& cfg,
                                   double tol = 1e-9);

/// For a scenario with a product-form preparation, rebuilds the ordinary
/// quantum scenario with the same states-effects connectivity (every link
/// factor reassigned to the later of its two positions) and checks table
/// equality against an independently evaluated product network.
CheckReport check_scenario_structure(const Scenario& s, const LatentConfig& cfg,
                                     double tol = 1e-9);

struct TomographySpan {
  Index product_span_dim = 0;
  Index ambient_dim_sq = 0;
  Index deficit() const { return ambient_dim_sq - product_span_dim; }
};

/// Real span of all products of local effect-basis elements versus the
/// dimension of the Hermitian operator space on the full composite.
TomographySpan tomography_span(const SystemString& system,
                               const LatentConfig& cfg);

struct TomographyWitness {
  bool exists = false;
  std::string note;
  SystemString system;
  Matrix state1;
  Matrix state2;
  double product_stat_deviation = 0.0;
  std::vector<Matrix> distinguishing_povm;
  double success_prob = 0.0;
};

/// Two states identical under every product effect yet perfectly
/// distinguishable by a joint measurement of the link sector.
TomographyWitness tomography_violation_witness(const SystemString& system,
                                               const LatentConfig& cfg);
TomographyWitness tomography_violation_witness(const LatentConfig& cfg);

/// Two-outcome sharp measurement of cos(theta) Z + sin(theta) X on a qubit.
Povm qubit_angle_povm(const ElementaryLabel& label, double theta,
                      const LatentConfig& cfg);

/// Two parties, two angle settings each, on an embedded two-qubit state.
Scenario chsh_scenario(const ElementaryLabel& qubit, const LatentConfig& cfg,
                       double a0, double a1, double b0, double b1,
                       const Matrix& qt_state);

/// S = E(0,0) + E(0,1) + E(1,0) - E(1,1) for a 2-party, 2-setting,
/// 2-outcome table.
double chsh_value(const CorrelationTable& table);

Matrix bell_phi_plus();
Matrix bell_singlet();

}  // namespace latentq
