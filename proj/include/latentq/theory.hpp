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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latentq/qmath.hpp"
#include "latentq/strings.hpp"

namespace latentq {

/// An elementary system type. dim == 1 is reserved for the trivial label "I".
struct ElementaryLabel {
  std::string name;
  Index dim = 1;

  bool is_trivial() const { return dim == 1 && name == "I"; }
  bool operator==(const ElementaryLabel&) const = default;
};

ElementaryLabel trivial_label();

/// Deliberate defects used as negative controls by the verification suite.
enum class Mutation {
  kNone,
  kStarWrongFresh,   // parallel composition feeds wrong fresh link states
  kSeqDropLatent,    // sequential composition ignores the earlier link action
  kSwapNoLatent,     // swap relocates operational factors only
};

/// Theory parameters: one link dimension and one fixed normalized link state
/// per unordered pair of elementary types, with a default plus per-pair
/// overrides. Pairs involving the trivial label are always one-dimensional.
class LatentConfig {
 public:
  LatentConfig();
  LatentConfig(Index default_dim, Matrix default_state);

  static LatentConfig standard_qt();
  /// One link type of dimension `dim` in the pure basis-0 state.
  static LatentConfig simplest(Index dim = 2);

  void register_label(const ElementaryLabel& label);
  void set_pair(const std::string& a, const std::string& b, Index dim,
                Matrix state);

  Index latent_dim(const ElementaryLabel& a, const ElementaryLabel& b) const;
  Matrix latent_state(const ElementaryLabel& a, const ElementaryLabel& b) const;

  Index default_latent_dim() const { return default_dim_; }
  const Matrix& default_latent_state() const { return default_state_; }

  const std::map<std::string, Index>& labels() const { return labels_; }
  std::optional<ElementaryLabel> find_label(const std::string& name) const;

  bool has_nontrivial_latent() const;

  Mutation mutation = Mutation::kNone;

 private:
  static std::pair<std::string, std::string> key(const std::string& a,
                                                 const std::string& b);

  Index default_dim_ = 1;
  Matrix default_state_;
  std::map<std::pair<std::string, std::string>, Index> dim_overrides_;
  std::map<std::pair<std::string, std::string>, Matrix> state_overrides_;
  std::map<std::string, Index> labels_;
};

/// Named latent-state presets shared by config files and tests.
Matrix pure_basis0_state(Index dim);
Matrix maximally_mixed_state(Index dim);

/// A system as a canonical string of elementary labels: trivial labels are
/// dropped, and the empty string is the trivial system. Equality is content
/// equality.
class SystemString {
 public:
  SystemString() = default;

  static SystemString trivial() { return SystemString(); }
  static SystemString elementary(ElementaryLabel label);

  int length() const { return static_cast<int>(labels_.size()); }
  bool is_trivial() const { return labels_.empty(); }
  const std::vector<ElementaryLabel>& labels() const { return labels_; }
  const ElementaryLabel& at(int i) const {  // 1-based, matching pair indices
    return labels_.at(static_cast<std::size_t>(i - 1));
  }

  std::string str() const;
  bool operator==(const SystemString&) const = default;

  friend SystemString canonicalize(std::vector<ElementaryLabel> labels);

 private:
  std::vector<ElementaryLabel> labels_;
};

SystemString canonicalize(std::vector<ElementaryLabel> labels);
SystemString compose_systems(const SystemString& a, const SystemString& b);

/// The concrete factored Hilbert space of a system string: all link factors
/// in odot order, then the operational factors in string order.
struct QSpace {
  std::vector<std::pair<int, int>> latent_pairs;  // aligned with latent_shape
  FactorShape latent_shape;
  FactorShape operational_shape;

  Index total_dim() const {
    return latent_shape.total() * operational_shape.total();
  }
  std::size_t latent_count() const { return latent_shape.count(); }
  std::size_t factor_count() const {
    return latent_shape.count() + operational_shape.count();
  }
  FactorShape full_shape() const {
    return concat_shapes(latent_shape, operational_shape);
  }
  /// Canonical factor slot of the link for positions {i, j}.
  std::size_t latent_slot(int i, int j) const;
  /// Canonical factor slot of the operational factor at position i (1-based).
  std::size_t operational_slot(int i) const {
    return latent_shape.count() + static_cast<std::size_t>(i - 1);
  }
};

QSpace qmap(const SystemString& s, const LatentConfig& cfg);

/// xi^{(x pairs)} (x) rho: the canonical embedding of an ordinary
/// tensor-product state into the latent composite.
Matrix embed_qt_state(const Matrix& rho, const SystemString& s,
                      const LatentConfig& cfg);

}  // namespace latentq
