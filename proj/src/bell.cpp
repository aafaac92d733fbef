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

#include "latentq/bell.hpp"

#include <cmath>

namespace latentq {

SystemString Scenario::total_system() const {
  SystemString total;
  for (const Party& p : parties) total = compose_systems(total, p.subsystem);
  return total;
}

namespace {

void validate_scenario(const Scenario& s, const LatentConfig& cfg) {
  if (s.parties.empty()) throw std::invalid_argument("scenario has no parties");
  const SystemString total = s.total_system();
  if (!(s.shared_state.system == total))
    throw std::invalid_argument("shared state is not on the party composite");
  for (const Party& p : s.parties) {
    if (p.settings.empty())
      throw std::invalid_argument("party with no settings");
    const Index d = qmap(p.subsystem, cfg).total_dim();
    for (const Povm& m : p.settings) {
      if (!(m.system == p.subsystem))
        throw std::invalid_argument("setting on the wrong subsystem");
      for (const LqtEffect& e : m.outcomes)
        if (e.op.rows() != d)
          throw std::invalid_argument("effect of the wrong dimension");
    }
  }
}

// Visit every (settings, outcomes) cell in deterministic order: the settings
// odometer is outermost, the first party varies slowest throughout.
template <typename F>
void for_each_cell(const std::vector<Party>& parties, F&& visit) {
  const std::size_t np = parties.size();
  std::vector<int> setting(np, 0);
  while (true) {
    std::vector<int> outcome(np, 0);
    while (true) {
      visit(setting, outcome);
      std::size_t p = np;
      bool done = true;
      while (p-- > 0) {
        const auto& povm =
            parties[p].settings[static_cast<std::size_t>(setting[p])];
        if (++outcome[p] < static_cast<int>(povm.outcomes.size())) {
          done = false;
          break;
        }
        outcome[p] = 0;
      }
      if (done) break;
    }
    std::size_t p = np;
    bool done = true;
    while (p-- > 0) {
      if (++setting[p] < static_cast<int>(parties[p].settings.size())) {
        done = false;
        break;
      }
      setting[p] = 0;
    }
    if (done) return;
  }
}

}  // namespace

Scenario make_scenario(std::vector<Party> parties, LqtState shared,
                       const LatentConfig& cfg) {
  Scenario s;
  s.parties = std::move(parties);
  s.shared_state = std::move(shared);
  validate_scenario(s, cfg);
  return s;
}

Scenario make_embedded_scenario(std::vector<Party> parties, Matrix qt_state,
                                const LatentConfig& cfg) {
  Scenario s;
  s.parties = std::move(parties);
  const SystemString total = s.total_system();
  s.shared_state = LqtState{total, embed_qt_state(qt_state, total, cfg)};
  s.embedded_qt_state = std::move(qt_state);
  validate_scenario(s, cfg);
  return s;
}

Scenario make_product_scenario(std::vector<Party> parties,
                               std::vector<Preparation> preparations,
                               const LatentConfig& cfg) {
  if (preparations.empty()) throw std::invalid_argument("no preparations");
  Scenario s;
  s.parties = std::move(parties);
  Matrix sum;
  for (const Preparation& prep : preparations) {
    const LqtState term = compose_states(prep.components, cfg);
    if (sum.size() == 0) {
      sum = prep.weight * term.op;
      s.shared_state.system = term.system;
    } else {
      if (!(term.system == s.shared_state.system))
        throw std::invalid_argument("mixture terms cover different systems");
      sum += prep.weight * term.op;
    }
  }
  s.shared_state.op = std::move(sum);
  s.preparations = std::move(preparations);
  validate_scenario(s, cfg);
  return s;
}

double table_distance(const CorrelationTable& a, const CorrelationTable& b) {
  if (a.entries.size() != b.entries.size())
    return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].settings != b.entries[i].settings ||
        a.entries[i].outcomes != b.entries[i].outcomes)
      return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(a.entries[i].p - b.entries[i].p));
  }
  return worst;
}

CorrelationTable correlations_lqt(const Scenario& s, const LatentConfig& cfg) {
  validate_scenario(s, cfg);
  CorrelationTable table;
  for_each_cell(s.parties, [&](const std::vector<int>& setting,
                               const std::vector<int>& outcome) {
    std::vector<LqtEffect> effects;
    effects.reserve(s.parties.size());
    for (std::size_t p = 0; p < s.parties.size(); ++p)
      effects.push_back(s.parties[p]
                            .settings[static_cast<std::size_t>(setting[p])]
                            .outcomes[static_cast<std::size_t>(outcome[p])]);
    const LqtEffect joint = compose_effects(effects, cfg);
    table.entries.push_back(
        {setting, outcome, pairing(joint, s.shared_state)});
  });
  return table;
}

QtProjection to_qt_state(const Scenario& s, const LatentConfig& cfg) {
  validate_scenario(s, cfg);
  const SystemString total = s.total_system();
  const QSpace q = qmap(total, cfg);
  const int n = total.length();

  // Party owning each global position, and block offsets of the grouped
  // order [cross links | party 1 links + ops | party 2 links + ops | ...].
  std::vector<int> owner(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> party_base;
  {
    int off = 0;
    for (const Party& p : s.parties) {
      party_base.push_back(off);
      for (int i = 1; i <= p.subsystem.length(); ++i)
        owner[static_cast<std::size_t>(off + i)] = static_cast<int>(party_base.size()) - 1;
      off += p.subsystem.length();
    }
  }

  std::size_t cross_count = 0;
  for (const auto& [i, j] : q.latent_pairs)
    if (owner[static_cast<std::size_t>(i)] != owner[static_cast<std::size_t>(j)])
      ++cross_count;

  std::vector<std::size_t> block_off(s.parties.size() + 1, cross_count);
  for (std::size_t p = 0; p < s.parties.size(); ++p) {
    const int len = s.parties[p].subsystem.length();
    block_off[p + 1] = block_off[p] +
                       static_cast<std::size_t>(len) * (len - 1) / 2 +
                       static_cast<std::size_t>(len);
  }

  std::vector<std::size_t> dest(q.factor_count());
  std::size_t cross_next = 0;
  std::vector<std::size_t> link_next(s.parties.size());
  for (std::size_t p = 0; p < s.parties.size(); ++p) link_next[p] = block_off[p];
  for (std::size_t f = 0; f < q.latent_count(); ++f) {
    const auto& [i, j] = q.latent_pairs[f];
    const int oi = owner[static_cast<std::size_t>(i)];
    const int oj = owner[static_cast<std::size_t>(j)];
    dest[f] = (oi == oj) ? link_next[static_cast<std::size_t>(oi)]++ : cross_next++;
  }
  for (std::size_t p = 0; p < s.parties.size(); ++p) {
    const int len = s.parties[p].subsystem.length();
    const std::size_t ops_off =
        block_off[p] + static_cast<std::size_t>(len) * (len - 1) / 2;
    for (int i = 1; i <= len; ++i)
      dest[q.operational_slot(party_base[p] + i)] =
          ops_off + static_cast<std::size_t>(i - 1);
  }

  QtProjection proj;
  proj.factor_perm = Permutation(std::move(dest));
  const FactorShape grouped =
      permuted_shape(q.full_shape(), proj.factor_perm);
  const Matrix relocated = apply_factor_permutation(
      s.shared_state.op, q.full_shape(), proj.factor_perm);

  std::vector<std::size_t> keep;
  for (std::size_t f = cross_count; f < grouped.count(); ++f) keep.push_back(f);
  for (std::size_t f = 0; f < cross_count; ++f) proj.traced_slots.push_back(f);
  proj.state = partial_trace(relocated, grouped, keep);

  for (std::size_t p = 0; p < s.parties.size(); ++p) {
    proj.party_shapes.push_back(FactorShape(std::vector<Index>(
        grouped.dims.begin() + static_cast<std::ptrdiff_t>(block_off[p]),
        grouped.dims.begin() + static_cast<std::ptrdiff_t>(block_off[p + 1]))));
  }
  return proj;
}

CorrelationTable correlations_qt_oracle(const Scenario& s,
                                        const LatentConfig& cfg) {
  const QtProjection proj = to_qt_state(s, cfg);
  CorrelationTable table;
  for_each_cell(s.parties, [&](const std::vector<int>& setting,
                               const std::vector<int>& outcome) {
    Matrix joint = Matrix::Identity(1, 1);
    for (std::size_t p = 0; p < s.parties.size(); ++p)
      joint = kron(joint, s.parties[p]
                              .settings[static_cast<std::size_t>(setting[p])]
                              .outcomes[static_cast<std::size_t>(outcome[p])]
                              .op);
    table.entries.push_back(
        {setting, outcome, (proj.state * joint).trace().real()});
  });
  return table;
}

CheckReport check_bell_equivalence(const Scenario& s, const LatentConfig& cfg,
                                   double tol) {
  CheckReport r;
  r.name = "bell_equivalence";
  r.tolerance = tol;

  const CorrelationTable lqt = correlations_lqt(s, cfg);
  const CorrelationTable qt = correlations_qt_oracle(s, cfg);
  r.trials = static_cast<int>(lqt.entries.size());
  r.max_deviation = table_distance(lqt, qt);

  bool elementary_parties = true;
  for (const Party& p : s.parties)
    if (p.subsystem.length() != 1) elementary_parties = false;
  if (s.embedded_qt_state && elementary_parties) {
    // Round trip: the raw operational state must give the same table directly.
    std::size_t i = 0;
    for_each_cell(s.parties, [&](const std::vector<int>& setting,
                                 const std::vector<int>& outcome) {
      Matrix joint = Matrix::Identity(1, 1);
      for (std::size_t p = 0; p < s.parties.size(); ++p)
        joint = kron(joint, s.parties[p]
                                .settings[static_cast<std::size_t>(setting[p])]
                                .outcomes[static_cast<std::size_t>(outcome[p])]
                                .op);
      const double direct = ((*s.embedded_qt_state) * joint).trace().real();
      r.max_deviation = std::max(r.max_deviation,
                                 std::abs(direct - lqt.entries[i].p));
      ++i;
    });
  }
  r.pass = r.max_deviation < tol;
  if (!r.pass) r.witness = "table mismatch";
  return r;
}

namespace {

// Relocates an operator on qmap(sub) for positions [base+1 .. base+len],
// tensored with one fill factor per link (p, j) reaching back before the
// range, into the per-position grouped order: for each position p ascending,
// its links (p, j) with j ascending, then its operational factor.
Matrix group_operator(int base, const SystemString& sub, const Matrix& own_op,
                      const SystemString& total, const LatentConfig& cfg,
                      const std::function<Matrix(const ElementaryLabel&,
                                                 const ElementaryLabel&)>& fill) {
  const int len = sub.length();
  const QSpace qs = qmap(sub, cfg);

  // Grouped-local slot of link (p, j) and of each operational factor.
  std::vector<std::size_t> pos_start(static_cast<std::size_t>(len) + 1, 0);
  for (int p = 1; p <= len; ++p)
    pos_start[static_cast<std::size_t>(p)] =
        pos_start[static_cast<std::size_t>(p - 1)] +
        static_cast<std::size_t>(base + p - 1) + 1;
  auto link_slot = [&](int p, int j) {  // p is range-local, j global (< base+p)
    return pos_start[static_cast<std::size_t>(p - 1)] +
           static_cast<std::size_t>(j - 1);
  };
  auto op_slot = [&](int p) {
    return pos_start[static_cast<std::size_t>(p)] - 1;
  };

  std::vector<Matrix> blocks;
  std::vector<Index> src_dims;
  std::vector<std::size_t> dest;

  blocks.push_back(own_op);
  for (std::size_t f = 0; f < qs.latent_count(); ++f) {
    const auto& [i, j] = qs.latent_pairs[f];
    src_dims.push_back(qs.latent_shape.dims[f]);
    dest.push_back(link_slot(i, base + j));
  }
  for (int p = 1; p <= len; ++p) {
    src_dims.push_back(sub.at(p).dim);
    dest.push_back(op_slot(p));
  }
  for (int p = 1; p <= len; ++p)
    for (int j = 1; j <= base; ++j) {
      Matrix f = fill(total.at(base + p), total.at(j));
      src_dims.push_back(f.rows());
      blocks.push_back(std::move(f));
      dest.push_back(link_slot(p, j));
    }

  return apply_factor_permutation(kron_all(blocks), FactorShape(src_dims),
                                  Permutation(std::move(dest)));
}

}  // namespace

CheckReport check_scenario_structure(const Scenario& s, const LatentConfig& cfg,
                                     double tol) {
  CheckReport r;
  r.name = "scenario_structure";
  r.tolerance = tol;
  if (s.preparations.empty())
    throw std::invalid_argument("scenario has no product-form preparation");
  const SystemString total = s.total_system();

  // All preparation terms must share one partition of the total string.
  std::vector<SystemString> prep_parts;
  for (const LqtState& c : s.preparations[0].components)
    prep_parts.push_back(c.system);
  for (const Preparation& prep : s.preparations) {
    SystemString assembled;
    if (prep.components.size() != prep_parts.size())
      throw std::invalid_argument("preparations with inconsistent partitions");
    for (std::size_t g = 0; g < prep.components.size(); ++g) {
      if (!(prep.components[g].system == prep_parts[g]))
        throw std::invalid_argument("preparations with inconsistent partitions");
      assembled = compose_systems(assembled, prep.components[g].system);
    }
    if (!(assembled == total))
      throw std::invalid_argument("preparation does not cover the scenario system");
  }

  // Grouped ordinary-quantum preparation, one relocated factor per term.
  auto fill_state = [&cfg](const ElementaryLabel& a, const ElementaryLabel& b) {
    return cfg.latent_state(a, b);
  };
  auto fill_identity = [&cfg](const ElementaryLabel& a, const ElementaryLabel& b) {
    const Index d = cfg.latent_dim(a, b);
    return Matrix(Matrix::Identity(d, d));
  };

  Matrix qt_state;
  for (const Preparation& prep : s.preparations) {
    Matrix term = Matrix::Identity(1, 1);
    int base = 0;
    for (const LqtState& c : prep.components) {
      term = kron(term, group_operator(base, c.system, c.op, total, cfg,
                                       fill_state));
      base += c.system.length();
    }
    if (qt_state.size() == 0)
      qt_state = prep.weight * term;
    else
      qt_state += prep.weight * term;
  }

  const CorrelationTable lqt = correlations_lqt(s, cfg);
  std::size_t i = 0;
  double worst = 0.0;
  for_each_cell(s.parties, [&](const std::vector<int>& setting,
                               const std::vector<int>& outcome) {
    Matrix joint = Matrix::Identity(1, 1);
    int base = 0;
    for (std::size_t p = 0; p < s.parties.size(); ++p) {
      const LqtEffect& e = s.parties[p]
                               .settings[static_cast<std::size_t>(setting[p])]
                               .outcomes[static_cast<std::size_t>(outcome[p])];
      joint = kron(joint, group_operator(base, s.parties[p].subsystem, e.op,
                                         total, cfg, fill_identity));
      base += s.parties[p].subsystem.length();
    }
    const double p_qt = (qt_state * joint).trace().real();
    worst = std::max(worst, std::abs(p_qt - lqt.entries[i].p));
    ++i;
  });

  r.trials = static_cast<int>(lqt.entries.size());
  r.max_deviation = worst;
  r.pass = worst < tol;
  if (!r.pass) r.witness = "table mismatch";
  return r;
}

namespace {

// d^2 Hermitian basis elements, clipped into valid effects.
std::vector<Matrix> local_effect_basis(Index d) {
  std::vector<Matrix> basis;
  const Matrix eye = Matrix::Identity(d, d);
  for (Index r = 0; r < d; ++r) {
    Matrix b = Matrix::Zero(d, d);
    b(r, r) = 1.0;
    basis.push_back((b + eye) / 4.0);
  }
  for (Index r = 0; r < d; ++r)
    for (Index c = r + 1; c < d; ++c) {
      Matrix x = Matrix::Zero(d, d);
      x(r, c) = 1.0;
      x(c, r) = 1.0;
      basis.push_back((x + eye) / 4.0);
      Matrix y = Matrix::Zero(d, d);
      y(r, c) = Complex(0.0, -1.0);
      y(c, r) = Complex(0.0, 1.0);
      basis.push_back((y + eye) / 4.0);
    }
  return basis;
}

}  // namespace

TomographySpan tomography_span(const SystemString& system,
                               const LatentConfig& cfg) {
  if (system.length() < 2)
    throw std::invalid_argument("tomography span needs a composite system");
  std::vector<std::vector<LqtEffect>> local;
  for (int p = 1; p <= system.length(); ++p) {
    const SystemString sub = SystemString::elementary(system.at(p));
    std::vector<LqtEffect> effects;
    for (Matrix& m : local_effect_basis(system.at(p).dim))
      effects.push_back(LqtEffect{sub, std::move(m)});
    local.push_back(std::move(effects));
  }

  std::vector<Matrix> products;
  std::vector<std::size_t> idx(local.size(), 0);
  while (true) {
    std::vector<LqtEffect> tuple;
    for (std::size_t p = 0; p < local.size(); ++p)
      tuple.push_back(local[p][idx[p]]);
    products.push_back(compose_effects(tuple, cfg).op);
    std::size_t p = local.size();
    bool done = true;
    while (p-- > 0) {
      if (++idx[p] < local[p].size()) {
        done = false;
        break;
      }
      idx[p] = 0;
    }
    if (done) break;
  }

  const std::size_t m = products.size();
  Eigen::MatrixXd gram(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      // Tr(A B) for Hermitian A, B.
      const double v =
          products[a].conjugate().cwiseProduct(products[b]).sum().real();
      gram(static_cast<Index>(a), static_cast<Index>(b)) = v;
      gram(static_cast<Index>(b), static_cast<Index>(a)) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double cutoff = 1e-8 * es.eigenvalues().maxCoeff();
  Index rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cutoff) ++rank;

  const Index total = qmap(system, cfg).total_dim();
  return TomographySpan{rank, total * total};
}

TomographyWitness tomography_violation_witness(const SystemString& system,
                                               const LatentConfig& cfg) {
  TomographyWitness w;
  w.system = system;
  if (system.length() != 2)
    throw std::invalid_argument("witness construction expects two subsystems");
  const Index ld = cfg.latent_dim(system.at(1), system.at(2));
  if (ld < 2) {
    w.exists = false;
    w.note = "local tomography holds: product effects span the full space";
    return w;
  }

  const Matrix xi = cfg.latent_state(system.at(1), system.at(2));
  Eigen::SelfAdjointEigenSolver<Matrix> es((xi + xi.adjoint()) / 2.0);
  const Vector bottom = es.eigenvectors().col(0);  // least-weight direction
  const Matrix xi_prime = bottom * bottom.adjoint();

  const QSpace q = qmap(system, cfg);
  const Index od = q.operational_shape.total();
  Matrix rho_op = Matrix::Zero(od, od);
  rho_op(0, 0) = 1.0;

  w.state1 = kron(xi, rho_op);
  w.state2 = kron(xi_prime, rho_op);

  // Support projector of the first link state, extended by the identity.
  Matrix support = Matrix::Zero(ld, ld);
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-12)
      support += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  const Matrix p1 = kron(support, Matrix::Identity(od, od));
  const Matrix p2 =
      Matrix::Identity(p1.rows(), p1.cols()) - p1;
  w.distinguishing_povm = {p1, p2};
  w.success_prob = 0.5 * ((w.state1 * p1).trace().real() +
                          (w.state2 * p2).trace().real());

  // Every product effect carries the identity on the link sector, so the two
  // states are locally indistinguishable; report the worst case found.
  double dev = 0.0;
  std::vector<std::vector<Matrix>> locals;
  for (int p = 1; p <= system.length(); ++p)
    locals.push_back(local_effect_basis(system.at(p).dim));
  for (const Matrix& ea : locals[0])
    for (const Matrix& eb : locals[1]) {
      const LqtEffect joint = compose_effects(
          {LqtEffect{SystemString::elementary(system.at(1)), ea},
           LqtEffect{SystemString::elementary(system.at(2)), eb}},
          cfg);
      dev = std::max(dev, std::abs((w.state1 * joint.op).trace().real() -
                                   (w.state2 * joint.op).trace().real()));
    }
  w.product_stat_deviation = dev;
  w.exists = true;
  w.note = "link sector invisible to product effects";
  return w;
}

TomographyWitness tomography_violation_witness(const LatentConfig& cfg) {
  for (const auto& [name, dim] : cfg.labels()) {
    const ElementaryLabel l{name, dim};
    if (l.is_trivial()) continue;
    const SystemString sys =
        compose_systems(SystemString::elementary(l), SystemString::elementary(l));
    if (cfg.latent_dim(l, l) >= 2) return tomography_violation_witness(sys, cfg);
  }
  TomographyWitness w;
  w.exists = false;
  w.note = "no pair with a link dimension of at least 2";
  return w;
}

Povm qubit_angle_povm(const ElementaryLabel& label, double theta,
                      const LatentConfig& cfg) {
  if (label.dim != 2)
    throw std::invalid_argument("angle measurement needs a two-level system");
  Matrix a(2, 2);
  a << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  const Matrix eye = Matrix::Identity(2, 2);
  return make_povm(SystemString::elementary(label),
                   {(eye + a) / 2.0, (eye - a) / 2.0}, cfg);
}

Scenario chsh_scenario(const ElementaryLabel& qubit, const LatentConfig& cfg,
                       double a0, double a1, double b0, double b1,
                       const Matrix& qt_state) {
  Party alice{SystemString::elementary(qubit),
              {qubit_angle_povm(qubit, a0, cfg), qubit_angle_povm(qubit, a1, cfg)}};
  Party bob{SystemString::elementary(qubit),
            {qubit_angle_povm(qubit, b0, cfg), qubit_angle_povm(qubit, b1, cfg)}};
  return make_embedded_scenario({alice, bob}, qt_state, cfg);
}

double chsh_value(const CorrelationTable& table) {
  double e[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (const auto& entry : table.entries) {
    if (entry.settings.size() != 2 || entry.outcomes.size() != 2)
      throw std::invalid_argument("not a two-party table");
    const double sign = (entry.outcomes[0] + entry.outcomes[1]) % 2 == 0 ? 1.0 : -1.0;
    e[entry.settings[0]][entry.settings[1]] += sign * entry.p;
  }
  return e[0][0] + e[0][1] + e[1][0] - e[1][1];
}

Matrix bell_phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

Matrix bell_singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

}  // namespace latentq
