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

#include "latentq/theory.hpp"

#include <sstream>

namespace latentq {

ElementaryLabel trivial_label() { return ElementaryLabel{"I", 1}; }

Matrix pure_basis0_state(Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 0) = 1.0;
  return m;
}

Matrix maximally_mixed_state(Index dim) {
  return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

LatentConfig::LatentConfig() : default_dim_(1), default_state_(pure_basis0_state(1)) {}

LatentConfig::LatentConfig(Index default_dim, Matrix default_state)
    : default_dim_(default_dim), default_state_(std::move(default_state)) {
  if (default_state_.rows() != default_dim_ || default_state_.cols() != default_dim_)
    throw std::invalid_argument("default latent state has wrong dimension");
  if (!is_density(default_state_).pass ||
      std::abs(default_state_.trace().real() - 1.0) > kOpTol)
    throw std::invalid_argument("latent state must be a normalized density operator");
}

LatentConfig LatentConfig::standard_qt() { return LatentConfig(); }

LatentConfig LatentConfig::simplest(Index dim) {
  return LatentConfig(dim, pure_basis0_state(dim));
}

void LatentConfig::register_label(const ElementaryLabel& label) {
  if (label.name.empty()) throw std::invalid_argument("empty label name");
  if ((label.dim == 1) != (label.name == "I"))
    throw std::invalid_argument("dimension 1 is reserved for the trivial label I");
  auto [it, inserted] = labels_.emplace(label.name, label.dim);
  if (!inserted && it->second != label.dim)
    throw std::invalid_argument("label '" + label.name +
                                "' registered with conflicting dimensions");
}

std::pair<std::string, std::string> LatentConfig::key(const std::string& a,
                                                      const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void LatentConfig::set_pair(const std::string& a, const std::string& b,
                            Index dim, Matrix state) {
  if (state.rows() != dim || state.cols() != dim)
    throw std::invalid_argument("latent state has wrong dimension");
  if (!is_density(state).pass || std::abs(state.trace().real() - 1.0) > kOpTol)
    throw std::invalid_argument("latent state must be a normalized density operator");
  dim_overrides_[key(a, b)] = dim;
  state_overrides_[key(a, b)] = std::move(state);
}

Index LatentConfig::latent_dim(const ElementaryLabel& a,
                               const ElementaryLabel& b) const {
  if (a.is_trivial() || b.is_trivial()) return 1;
  auto it = dim_overrides_.find(key(a.name, b.name));
  return it == dim_overrides_.end() ? default_dim_ : it->second;
}

Matrix LatentConfig::latent_state(const ElementaryLabel& a,
                                  const ElementaryLabel& b) const {
  if (a.is_trivial() || b.is_trivial()) return pure_basis0_state(1);
  auto it = state_overrides_.find(key(a.name, b.name));
  return it == state_overrides_.end() ? default_state_ : it->second;
}

std::optional<ElementaryLabel> LatentConfig::find_label(
    const std::string& name) const {
  auto it = labels_.find(name);
  if (it == labels_.end()) return std::nullopt;
  return ElementaryLabel{it->first, it->second};
}

bool LatentConfig::has_nontrivial_latent() const {
  if (default_dim_ > 1) return true;
  for (const auto& [k, d] : dim_overrides_)
    if (d > 1) return true;
  return false;
}

SystemString SystemString::elementary(ElementaryLabel label) {
  return canonicalize({std::move(label)});
}

SystemString canonicalize(std::vector<ElementaryLabel> labels) {
  SystemString s;
  for (ElementaryLabel& l : labels) {
    if (l.dim < 1) throw std::invalid_argument("label dimension must be >= 1");
    if (!l.is_trivial()) s.labels_.push_back(std::move(l));
  }
  return s;
}

std::string SystemString::str() const {
  if (is_trivial()) return "I";
  std::ostringstream os;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) os << ' ';
    os << labels_[i].name;
  }
  return os.str();
}

SystemString compose_systems(const SystemString& a, const SystemString& b) {
  std::vector<ElementaryLabel> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return canonicalize(std::move(labels));
}

std::size_t QSpace::latent_slot(int i, int j) const {
  return odot_slot(static_cast<int>(operational_shape.count()), i, j);
}

QSpace qmap(const SystemString& s, const LatentConfig& cfg) {
  QSpace q;
  q.latent_pairs = odot_pairs(s.length());
  for (const auto& [i, j] : q.latent_pairs)
    q.latent_shape.dims.push_back(cfg.latent_dim(s.at(i), s.at(j)));
  for (const ElementaryLabel& l : s.labels())
    q.operational_shape.dims.push_back(l.dim);
  return q;
}

Matrix embed_qt_state(const Matrix& rho, const SystemString& s,
                      const LatentConfig& cfg) {
  const QSpace q = qmap(s, cfg);
  if (rho.rows() != q.operational_shape.total() || rho.cols() != rho.rows())
    throw std::invalid_argument("state does not match the operational space");
  std::vector<Matrix> factors;
  factors.reserve(q.latent_pairs.size() + 1);
  for (const auto& [i, j] : q.latent_pairs)
    factors.push_back(cfg.latent_state(s.at(i), s.at(j)));
  factors.push_back(rho);
  return kron_all(factors);
}

}  // namespace latentq
