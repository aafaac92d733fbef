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

#include "latentq/states.hpp"

#include <functional>

namespace latentq {

namespace {

void check_shape(const SystemString& system, const Matrix& op,
                 const LatentConfig& cfg) {
  const Index d = qmap(system, cfg).total_dim();
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("operator does not match qmap(" + system.str() +
                                ") of dimension " + std::to_string(d));
}

// Shared composition core. Parts are tensored together with one fill factor
// per cross-part position pair, then all factors are relocated into the
// composite's canonical order (links in odot order, then operational
// factors). `fill` supplies the cross-pair factor from the two labels.
std::pair<SystemString, Matrix> compose_operators(
    const std::vector<std::pair<const SystemString*, const Matrix*>>& parts,
    const LatentConfig& cfg,
    const std::function<Matrix(const ElementaryLabel&, const ElementaryLabel&)>&
        fill) {
  SystemString combined;
  std::vector<int> offsets;  // global position offset of each part
  for (const auto& [sys, op] : parts) {
    offsets.push_back(combined.length());
    combined = compose_systems(combined, *sys);
  }
  const QSpace q = qmap(combined, cfg);

  // Part owning each global position (1-based).
  std::vector<std::size_t> owner(static_cast<std::size_t>(combined.length()) + 1);
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int i = 1; i <= parts[p].first->length(); ++i)
      owner[static_cast<std::size_t>(offsets[p] + i)] = p;

  // Source factor list: cross fills in canonical pair order, then each part's
  // own factors (its links, then its operational factors).
  std::vector<Matrix> blocks;
  std::vector<Index> src_dims;
  std::vector<std::size_t> dest;  // canonical slot of each source factor

  for (const auto& [i, j] : q.latent_pairs) {
    if (owner[static_cast<std::size_t>(i)] == owner[static_cast<std::size_t>(j)])
      continue;
    Matrix f = fill(combined.at(i), combined.at(j));
    src_dims.push_back(f.rows());
    blocks.push_back(std::move(f));
    dest.push_back(q.latent_slot(i, j));
  }
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const SystemString& sys = *parts[p].first;
    const QSpace qp = qmap(sys, cfg);
    check_shape(sys, *parts[p].second, cfg);
    blocks.push_back(*parts[p].second);
    for (std::size_t s = 0; s < qp.latent_count(); ++s) {
      const auto& [i, j] = qp.latent_pairs[s];
      src_dims.push_back(qp.latent_shape.dims[s]);
      dest.push_back(q.latent_slot(offsets[p] + i, offsets[p] + j));
    }
    for (int i = 1; i <= sys.length(); ++i) {
      src_dims.push_back(sys.at(i).dim);
      dest.push_back(q.operational_slot(offsets[p] + i));
    }
  }

  Matrix out = apply_factor_permutation(kron_all(blocks), FactorShape(src_dims),
                                        Permutation(std::move(dest)));
  return {combined, std::move(out)};
}

}  // namespace

LqtState make_state(SystemString system, Matrix op, const LatentConfig& cfg,
                    double tol) {
  check_shape(system, op, cfg);
  OperatorCheck c = is_density(op, tol);
  if (!c.pass)
    throw std::invalid_argument("not a density operator (violation " +
                                std::to_string(c.max_violation) + ")");
  return LqtState{std::move(system), std::move(op)};
}

LqtEffect make_effect(SystemString system, Matrix op, const LatentConfig& cfg,
                      double tol) {
  check_shape(system, op, cfg);
  OperatorCheck c = is_effect(op, tol);
  if (!c.pass)
    throw std::invalid_argument("not an effect (violation " +
                                std::to_string(c.max_violation) + ")");
  return LqtEffect{std::move(system), std::move(op)};
}

Povm make_povm(SystemString system, std::vector<Matrix> elements,
               const LatentConfig& cfg, double tol) {
  if (elements.empty()) throw std::invalid_argument("empty POVM");
  Povm povm;
  povm.system = system;
  Matrix sum = Matrix::Zero(elements[0].rows(), elements[0].cols());
  for (Matrix& e : elements) {
    sum += e;
    povm.outcomes.push_back(make_effect(system, std::move(e), cfg, tol));
  }
  if (max_abs_diff(sum, Matrix::Identity(sum.rows(), sum.cols())) > tol)
    throw std::invalid_argument("POVM elements do not sum to the identity");
  return povm;
}

bool is_pvm(const Povm& povm, double tol) {
  for (const LqtEffect& e : povm.outcomes)
    if (!is_pvm_element(e.op, tol).pass) return false;
  for (std::size_t a = 0; a < povm.outcomes.size(); ++a)
    for (std::size_t b = a + 1; b < povm.outcomes.size(); ++b) {
      const Matrix prod = povm.outcomes[a].op * povm.outcomes[b].op;
      if (prod.cwiseAbs().maxCoeff() > tol) return false;
    }
  return true;
}

LqtState compose_states(const std::vector<LqtState>& parts,
                        const LatentConfig& cfg) {
  if (parts.empty()) throw std::invalid_argument("no states to compose");
  std::vector<std::pair<const SystemString*, const Matrix*>> refs;
  refs.reserve(parts.size());
  for (const LqtState& p : parts) refs.emplace_back(&p.system, &p.op);
  auto [system, op] = compose_operators(
      refs, cfg,
      [&cfg](const ElementaryLabel& a, const ElementaryLabel& b) {
        return cfg.latent_state(a, b);
      });
  return LqtState{std::move(system), std::move(op)};
}

LqtEffect compose_effects(const std::vector<LqtEffect>& parts,
                          const LatentConfig& cfg) {
  if (parts.empty()) throw std::invalid_argument("no effects to compose");
  std::vector<std::pair<const SystemString*, const Matrix*>> refs;
  refs.reserve(parts.size());
  for (const LqtEffect& p : parts) refs.emplace_back(&p.system, &p.op);
  auto [system, op] = compose_operators(
      refs, cfg,
      [&cfg](const ElementaryLabel& a, const ElementaryLabel& b) {
        const Index d = cfg.latent_dim(a, b);
        return Matrix(Matrix::Identity(d, d));
      });
  return LqtEffect{std::move(system), std::move(op)};
}

double pairing(const LqtEffect& effect, const LqtState& state) {
  if (!(effect.system == state.system))
    throw std::invalid_argument("effect and state live on different systems");
  if (effect.op.rows() != state.op.rows())
    throw std::invalid_argument("effect and state dimension mismatch");
  return (state.op * effect.op).trace().real();
}

Povm compose_povms(const std::vector<Povm>& parts, const LatentConfig& cfg) {
  if (parts.empty()) throw std::invalid_argument("no POVMs to compose");
  Povm out;
  for (const Povm& p : parts)
    out.system = compose_systems(out.system, p.system);

  std::vector<std::size_t> idx(parts.size(), 0);
  while (true) {
    std::vector<LqtEffect> tuple;
    tuple.reserve(parts.size());
    for (std::size_t p = 0; p < parts.size(); ++p)
      tuple.push_back(parts[p].outcomes[idx[p]]);
    out.outcomes.push_back(compose_effects(tuple, cfg));
    // Odometer: last part varies fastest.
    std::size_t p = parts.size();
    while (p-- > 0) {
      if (++idx[p] < parts[p].outcomes.size()) break;
      idx[p] = 0;
      if (p == 0) return out;
    }
  }
}

Povm unit_povm(const SystemString& system, const LatentConfig& cfg) {
  const Index d = qmap(system, cfg).total_dim();
  Povm povm;
  povm.system = system;
  povm.outcomes.push_back(LqtEffect{system, Matrix::Identity(d, d)});
  return povm;
}

}  // namespace latentq
