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

#include "latentq/transforms.hpp"

#include <algorithm>
#include <limits>

namespace latentq {

NoisyPermutation::NoisyPermutation() : perm_(Permutation::identity(0)) {}

NoisyPermutation::NoisyPermutation(int fresh, int traced, Permutation perm)
    : fresh_(fresh), traced_(traced), perm_(std::move(perm)) {
  if (fresh_ < 0 || traced_ < 0 || static_cast<std::size_t>(fresh_) > perm_.size() ||
      static_cast<std::size_t>(traced_) > perm_.size())
    throw std::invalid_argument("wire counts out of range");
  for (int i = 0; i < fresh_; ++i)
    if (perm_[static_cast<std::size_t>(i)] < static_cast<std::size_t>(traced_))
      throw std::invalid_argument("not in reduced form: a fresh wire is traced");
  normalize();
}

NoisyPermutation NoisyPermutation::identity(int n) {
  return NoisyPermutation(0, 0, Permutation::identity(static_cast<std::size_t>(n)));
}

NoisyPermutation NoisyPermutation::reset() {
  return NoisyPermutation(1, 1, Permutation({1, 0}));
}

std::optional<int> NoisyPermutation::input_destination(int i) const {
  const std::size_t post = perm_[static_cast<std::size_t>(fresh_ + i)];
  if (post < static_cast<std::size_t>(traced_)) return std::nullopt;
  return static_cast<int>(post) - traced_;
}

std::optional<int> NoisyPermutation::output_source(int s) const {
  const std::size_t pre = perm_.inverse()[static_cast<std::size_t>(traced_ + s)];
  if (pre < static_cast<std::size_t>(fresh_)) return std::nullopt;
  return static_cast<int>(pre) - fresh_;
}

void NoisyPermutation::normalize() {
  const int n = input_arity();
  std::vector<std::size_t> dest(perm_.size());
  // Fresh wires, reordered by destination.
  std::vector<std::size_t> fresh_dests;
  for (int i = 0; i < fresh_; ++i)
    fresh_dests.push_back(perm_[static_cast<std::size_t>(i)]);
  std::sort(fresh_dests.begin(), fresh_dests.end());
  for (int i = 0; i < fresh_; ++i) dest[static_cast<std::size_t>(i)] = fresh_dests[static_cast<std::size_t>(i)];
  // Inputs: traced ones fill slots 0..traced-1 in source order.
  std::size_t next_traced = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t post = perm_[static_cast<std::size_t>(fresh_ + i)];
    dest[static_cast<std::size_t>(fresh_ + i)] =
        post < static_cast<std::size_t>(traced_) ? next_traced++ : post;
  }
  perm_ = Permutation(std::move(dest));
}

NoisyPermutation seq_compose(const NoisyPermutation& later,
                             const NoisyPermutation& earlier) {
  if (earlier.output_arity() != later.input_arity())
    throw std::invalid_argument("wire arity mismatch in sequential composition");
  const int n = earlier.input_arity();
  const int m_final = later.output_arity();

  // Final slot fed by input wire i, if it survives both stages.
  std::vector<std::optional<int>> input_fate(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (auto mid = earlier.input_destination(i))
      input_fate[static_cast<std::size_t>(i)] = later.input_destination(*mid);
  }
  // Output slots fed by fresh wires of either stage.
  std::vector<int> fresh_slots;
  for (int s = 0; s < m_final; ++s) {
    auto mid = later.output_source(s);
    if (!mid) {
      fresh_slots.push_back(s);
      continue;
    }
    if (!earlier.output_source(*mid)) fresh_slots.push_back(s);
    // Fresh wires of the earlier stage that the later stage traces cancel
    // against their trace (the link state is normalized), so they vanish
    // from the reduced data entirely.
  }

  const int fresh = static_cast<int>(fresh_slots.size());
  int traced = 0;
  for (const auto& f : input_fate)
    if (!f) ++traced;

  std::vector<std::size_t> dest(static_cast<std::size_t>(fresh + n));
  for (int r = 0; r < fresh; ++r)
    dest[static_cast<std::size_t>(r)] =
        static_cast<std::size_t>(traced + fresh_slots[static_cast<std::size_t>(r)]);
  std::size_t next_traced = 0;
  for (int i = 0; i < n; ++i) {
    const auto& f = input_fate[static_cast<std::size_t>(i)];
    dest[static_cast<std::size_t>(fresh + i)] =
        f ? static_cast<std::size_t>(traced + *f) : next_traced++;
  }
  return NoisyPermutation(fresh, traced, Permutation(std::move(dest)));
}

NoisyPermutation par_merge(const NoisyPermutation& a, const NoisyPermutation& b) {
  const int n1 = a.input_arity(), n2 = b.input_arity();
  const int m1 = a.output_arity();
  const int fresh = a.fresh_count() + b.fresh_count();
  const int traced = a.traced_count() + b.traced_count();

  std::vector<std::size_t> dest(static_cast<std::size_t>(fresh + n1 + n2));
  auto out_slot = [&](bool from_b, std::size_t post, int side_traced) {
    return static_cast<std::size_t>(traced) + (from_b ? static_cast<std::size_t>(m1) : 0u) +
           (post - static_cast<std::size_t>(side_traced));
  };
  std::size_t w = 0;
  for (int i = 0; i < a.fresh_count(); ++i)
    dest[w++] = out_slot(false, a.perm()[static_cast<std::size_t>(i)], a.traced_count());
  for (int i = 0; i < b.fresh_count(); ++i)
    dest[w++] = out_slot(true, b.perm()[static_cast<std::size_t>(i)], b.traced_count());
  for (int i = 0; i < n1; ++i) {
    const std::size_t post = a.perm()[static_cast<std::size_t>(a.fresh_count() + i)];
    dest[w++] = post < static_cast<std::size_t>(a.traced_count())
                    ? post
                    : out_slot(false, post, a.traced_count());
  }
  for (int j = 0; j < n2; ++j) {
    const std::size_t post = b.perm()[static_cast<std::size_t>(b.fresh_count() + j)];
    dest[w++] = post < static_cast<std::size_t>(b.traced_count())
                    ? static_cast<std::size_t>(a.traced_count()) + post
                    : out_slot(true, post, b.traced_count());
  }
  return NoisyPermutation(fresh, traced, Permutation(std::move(dest)));
}

KrausMap wire_channel_kraus(const FactorShape& input_dims,
                            const std::vector<Matrix>& fresh_states,
                            const Permutation& perm, int traced) {
  FactorShape pre;
  for (const Matrix& s : fresh_states) {
    if (s.rows() != s.cols()) throw std::invalid_argument("fresh state not square");
    pre.dims.push_back(s.rows());
  }
  pre = concat_shapes(pre, input_dims);
  if (perm.size() != pre.count())
    throw std::invalid_argument("wire permutation arity mismatch");
  const FactorShape post = permuted_shape(pre, perm);
  if (static_cast<std::size_t>(traced) > post.count())
    throw std::invalid_argument("traced count out of range");

  FactorShape out_shape;
  Index traced_dim = 1;
  for (std::size_t i = 0; i < post.count(); ++i) {
    if (i < static_cast<std::size_t>(traced))
      traced_dim *= post.dims[i];
    else
      out_shape.dims.push_back(post.dims[i]);
  }

  const Matrix p = permutation_operator(perm, pre);
  const Index din = input_dims.total();
  const Index dout = out_shape.total();

  Matrix joint_fresh = kron_all(fresh_states);
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      (joint_fresh + joint_fresh.adjoint()) / 2.0);

  std::vector<Matrix> ops;
  for (Index s = 0; s < es.eigenvalues().size(); ++s) {
    const double w = es.eigenvalues()(s);
    if (w < 1e-14) continue;
    const Matrix lifted =
        p * kron(Matrix(es.eigenvectors().col(s)), Matrix::Identity(din, din));
    for (Index t = 0; t < traced_dim; ++t) {
      Matrix k = std::sqrt(w) * lifted.middleRows(t * dout, dout);
      if (k.squaredNorm() > 1e-30) ops.push_back(std::move(k));
    }
  }
  return KrausMap(input_dims, out_shape, std::move(ops));
}

KrausMap noisy_perm_kraus(const NoisyPermutation& np,
                          const ElementaryLabel& ancilla_char,
                          const SystemString& input,
                          const SystemString& output, const LatentConfig& cfg) {
  if (np.input_arity() != input.length() || np.output_arity() != output.length())
    throw std::invalid_argument("wire data does not match string lengths");
  FactorShape in_dims;
  for (int i = 1; i <= input.length(); ++i)
    in_dims.dims.push_back(cfg.latent_dim(ancilla_char, input.at(i)));
  std::vector<Matrix> fresh;
  for (int r = 0; r < np.fresh_count(); ++r) {
    const int slot =
        static_cast<int>(np.perm()[static_cast<std::size_t>(r)]) - np.traced_count();
    fresh.push_back(cfg.latent_state(ancilla_char, output.at(slot + 1)));
  }
  for (int i = 0; i < input.length(); ++i) {
    if (auto slot = np.input_destination(i)) {
      if (cfg.latent_dim(ancilla_char, input.at(i + 1)) !=
          cfg.latent_dim(ancilla_char, output.at(*slot + 1)))
        throw std::invalid_argument(
            "link dimension changes across a surviving wire");
    }
  }
  return wire_channel_kraus(in_dims, fresh, np.perm(), np.traced_count());
}

Matrix apply_noisy_perm(const NoisyPermutation& np, const Matrix& rho,
                        const ElementaryLabel& ancilla_char,
                        const SystemString& input, const SystemString& output,
                        const LatentConfig& cfg) {
  return noisy_perm_kraus(np, ancilla_char, input, output, cfg).apply(rho);
}

namespace {

Matrix wrong_link_state(Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  m(dim - 1, dim - 1) = 1.0;
  return m;
}

}  // namespace

KrausMap star_product_kraus(const LatentTransformation& a,
                            const LatentTransformation& b,
                            const LatentConfig& cfg) {
  const SystemString &na = a.input_system, &ma = a.output_system;
  const SystemString &nb = b.input_system, &mb = b.output_system;
  const int n1 = na.length(), m1 = ma.length();
  const int n2 = nb.length(), m2 = mb.length();

  FactorShape in_dims;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i)
      in_dims.dims.push_back(cfg.latent_dim(nb.at(j + 1), na.at(i + 1)));

  // An output link passes through iff both of its wires survive; otherwise it
  // is freshly prepared. An input link is traced iff either wire is traced.
  struct FreshOut {
    int slot;
    Matrix state;
  };
  std::vector<FreshOut> fresh;
  std::vector<std::optional<std::size_t>> source_of_out(
      static_cast<std::size_t>(m2 * m1));
  for (int jp = 0; jp < m2; ++jp)
    for (int ip = 0; ip < m1; ++ip) {
      const int o = jp * m1 + ip;
      const auto src_a = a.latent_part.output_source(ip);
      const auto src_b = b.latent_part.output_source(jp);
      if (src_a && src_b) {
        source_of_out[static_cast<std::size_t>(o)] =
            static_cast<std::size_t>(*src_b * n1 + *src_a);
      } else {
        const bool both_fresh = !src_a && !src_b;
        const Index d = cfg.latent_dim(mb.at(jp + 1), ma.at(ip + 1));
        Matrix state = (both_fresh && cfg.mutation == Mutation::kStarWrongFresh)
                           ? wrong_link_state(d)
                           : cfg.latent_state(mb.at(jp + 1), ma.at(ip + 1));
        fresh.push_back(FreshOut{o, std::move(state)});
      }
    }

  const int k = static_cast<int>(fresh.size());
  const int total_in = n2 * n1;
  const int traced = total_in - (m2 * m1 - k);

  std::vector<std::optional<int>> out_slot_of(static_cast<std::size_t>(total_in));
  for (int o = 0; o < m2 * m1; ++o)
    if (auto w = source_of_out[static_cast<std::size_t>(o)]) out_slot_of[*w] = o;

  std::vector<std::size_t> dest(static_cast<std::size_t>(k + total_in));
  for (int r = 0; r < k; ++r)
    dest[static_cast<std::size_t>(r)] =
        static_cast<std::size_t>(traced + fresh[static_cast<std::size_t>(r)].slot);
  std::size_t next_traced = 0;
  for (int w = 0; w < total_in; ++w) {
    const auto& o = out_slot_of[static_cast<std::size_t>(w)];
    dest[static_cast<std::size_t>(k + w)] =
        o ? static_cast<std::size_t>(traced + *o) : next_traced++;
  }

  std::vector<Matrix> fresh_states;
  fresh_states.reserve(fresh.size());
  for (FreshOut& f : fresh) fresh_states.push_back(std::move(f.state));
  return wire_channel_kraus(in_dims, fresh_states, Permutation(std::move(dest)),
                            traced);
}

namespace {

// Factor relocation from the canonical order of qmap(N + E) into contiguous
// blocks [E-own links | per-ancilla-character cross links | N-own links |
// N operational | E operational].
struct RealizeLayout {
  Permutation to_blocks;
  FactorShape block_shape;
  std::size_t eown_count = 0;
  std::size_t cross_first = 0;   // first factor of the j = 1 cross block
  std::size_t t_first = 0;       // first factor of the local-action range
  std::size_t t_count = 0;
  std::size_t eops_count = 0;
};

RealizeLayout realize_layout(const SystemString& acted, const SystemString& anc,
                             const LatentConfig& cfg) {
  const SystemString combined = compose_systems(acted, anc);
  const QSpace q = qmap(combined, cfg);
  const int n = acted.length(), e = anc.length();
  const std::size_t eown = static_cast<std::size_t>(e) * (e - 1) / 2;
  const std::size_t nown = static_cast<std::size_t>(n) * (n - 1) / 2;

  RealizeLayout lay;
  lay.eown_count = eown;
  lay.cross_first = eown;
  lay.t_first = eown + static_cast<std::size_t>(e) * static_cast<std::size_t>(n);
  lay.t_count = nown + static_cast<std::size_t>(n);
  lay.eops_count = static_cast<std::size_t>(e);

  const std::size_t nops_off = lay.t_first + nown;
  const std::size_t eops_off = nops_off + static_cast<std::size_t>(n);

  std::vector<std::size_t> dest(q.factor_count());
  std::size_t eown_next = 0, nown_next = lay.t_first;
  for (std::size_t s = 0; s < q.latent_count(); ++s) {
    const auto& [i, j] = q.latent_pairs[s];
    if (i <= n) {
      dest[s] = nown_next++;
    } else if (j <= n) {
      const std::size_t jc = static_cast<std::size_t>(i - n - 1);
      dest[s] = lay.cross_first + jc * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(j - 1);
    } else {
      dest[s] = eown_next++;
    }
  }
  for (int p = 1; p <= combined.length(); ++p) {
    dest[q.operational_slot(p)] = p <= n
                                      ? nops_off + static_cast<std::size_t>(p - 1)
                                      : eops_off + static_cast<std::size_t>(p - n - 1);
  }
  lay.to_blocks = Permutation(std::move(dest));
  lay.block_shape = permuted_shape(q.full_shape(), lay.to_blocks);
  return lay;
}

// Factor relocation from the canonical order of qmap(A + B) into blocks
// [cross links | A-own links | A operational | B-own links | B operational].
struct PairLayout {
  Permutation to_blocks;
  FactorShape block_shape;
};

PairLayout pair_layout(const SystemString& a, const SystemString& b,
                       const LatentConfig& cfg) {
  const SystemString combined = compose_systems(a, b);
  const QSpace q = qmap(combined, cfg);
  const int n1 = a.length(), n2 = b.length();
  const std::size_t cross = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  const std::size_t aown_off = cross;
  const std::size_t aops_off = aown_off + static_cast<std::size_t>(n1) * (n1 - 1) / 2;
  const std::size_t bown_off = aops_off + static_cast<std::size_t>(n1);
  const std::size_t bops_off = bown_off + static_cast<std::size_t>(n2) * (n2 - 1) / 2;

  std::vector<std::size_t> dest(q.factor_count());
  std::size_t aown_next = aown_off, bown_next = bown_off;
  for (std::size_t s = 0; s < q.latent_count(); ++s) {
    const auto& [i, j] = q.latent_pairs[s];
    if (i <= n1) {
      dest[s] = aown_next++;
    } else if (j <= n1) {
      const std::size_t jc = static_cast<std::size_t>(i - n1 - 1);
      dest[s] = jc * static_cast<std::size_t>(n1) + static_cast<std::size_t>(j - 1);
    } else {
      dest[s] = bown_next++;
    }
  }
  for (int p = 1; p <= combined.length(); ++p)
    dest[q.operational_slot(p)] =
        p <= n1 ? aops_off + static_cast<std::size_t>(p - 1)
                : bops_off + static_cast<std::size_t>(p - n1 - 1);

  PairLayout lay;
  lay.to_blocks = Permutation(std::move(dest));
  lay.block_shape = permuted_shape(q.full_shape(), lay.to_blocks);
  return lay;
}

FactorShape shape_slice(const FactorShape& shape, std::size_t first,
                        std::size_t count) {
  return FactorShape(std::vector<Index>(
      shape.dims.begin() + static_cast<std::ptrdiff_t>(first),
      shape.dims.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

}  // namespace

LatentTransformation make_transformation(SystemString input, SystemString output,
                                         KrausMap op_part,
                                         NoisyPermutation latent_part,
                                         const LatentConfig& cfg) {
  if (!(op_part.input_shape == qmap(input, cfg).full_shape()) ||
      !(op_part.output_shape == qmap(output, cfg).full_shape()))
    throw std::invalid_argument("local action does not match the system spaces");
  if (latent_part.input_arity() != input.length() ||
      latent_part.output_arity() != output.length())
    throw std::invalid_argument("wire data arity does not match string lengths");
  return LatentTransformation{std::move(input), std::move(output),
                              std::move(op_part), std::move(latent_part)};
}

LatentTransformation identity_transformation(const SystemString& s,
                                             const LatentConfig& cfg) {
  return make_transformation(s, s, KrausMap::identity(qmap(s, cfg).full_shape()),
                             NoisyPermutation::identity(s.length()), cfg);
}

LatentTransformation elementary_transformation(const ElementaryLabel& label,
                                               KrausMap local, bool reset_link,
                                               const LatentConfig& cfg) {
  const SystemString s = SystemString::elementary(label);
  if (s.is_trivial())
    throw std::invalid_argument("elementary transformation on the trivial label");
  return make_transformation(
      s, s, std::move(local),
      reset_link ? NoisyPermutation::reset() : NoisyPermutation::identity(1), cfg);
}

LatentTransformation preparation(const LqtState& state, const LatentConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((state.op + state.op.adjoint()) / 2.0);
  std::vector<Matrix> ops;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < 1e-14) continue;
    ops.push_back(std::sqrt(es.eigenvalues()(i)) * Matrix(es.eigenvectors().col(i)));
  }
  const int m = state.system.length();
  return make_transformation(
      SystemString::trivial(), state.system,
      KrausMap(FactorShape{}, qmap(state.system, cfg).full_shape(), std::move(ops)),
      NoisyPermutation(m, 0, Permutation::identity(static_cast<std::size_t>(m))),
      cfg);
}

LatentTransformation measurement_effect(const LqtEffect& effect,
                                        const LatentConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((effect.op + effect.op.adjoint()) / 2.0);
  std::vector<Matrix> ops;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < 1e-14) continue;
    ops.push_back(std::sqrt(es.eigenvalues()(i)) *
                  Matrix(es.eigenvectors().col(i).adjoint()));
  }
  const int n = effect.system.length();
  return make_transformation(
      effect.system, SystemString::trivial(),
      KrausMap(qmap(effect.system, cfg).full_shape(), FactorShape{}, std::move(ops)),
      NoisyPermutation(0, n, Permutation::identity(static_cast<std::size_t>(n))),
      cfg);
}

LatentTransformation swap_transformation(const SystemString& a,
                                         const SystemString& b,
                                         const LatentConfig& cfg) {
  const SystemString in = compose_systems(a, b);
  const SystemString out = compose_systems(b, a);
  const QSpace qin = qmap(in, cfg), qout = qmap(out, cfg);
  const int n1 = a.length(), n2 = b.length();
  const bool move_links = cfg.mutation != Mutation::kSwapNoLatent;

  auto new_pos = [&](int p) { return p <= n1 ? n2 + p : p - n1; };

  std::vector<std::size_t> dest(qin.factor_count());
  for (std::size_t s = 0; s < qin.latent_count(); ++s) {
    if (move_links) {
      const auto& [i, j] = qin.latent_pairs[s];
      dest[s] = qout.latent_slot(new_pos(i), new_pos(j));
    } else {
      if (qin.latent_shape.dims[s] != qout.latent_shape.dims[s])
        throw std::invalid_argument(
            "swap mutation requires slot-wise equal link dimensions");
      dest[s] = s;
    }
  }
  for (int p = 1; p <= in.length(); ++p)
    dest[qin.operational_slot(p)] = qout.operational_slot(new_pos(p));

  Matrix u = permutation_operator(Permutation(std::move(dest)), qin.full_shape());
  KrausMap op = KrausMap::from_single(std::move(u), qin.full_shape(), qout.full_shape());

  NoisyPermutation np = NoisyPermutation::identity(n1 + n2);
  if (move_links) {
    std::vector<std::size_t> wd(static_cast<std::size_t>(n1 + n2));
    for (int w = 0; w < n1 + n2; ++w)
      wd[static_cast<std::size_t>(w)] = static_cast<std::size_t>(new_pos(w + 1) - 1);
    np = NoisyPermutation(0, 0, Permutation(std::move(wd)));
  }
  return make_transformation(in, out, std::move(op), std::move(np), cfg);
}

LatentTransformation seq_compose(const LatentTransformation& g,
                                 const LatentTransformation& f,
                                 const LatentConfig& cfg) {
  if (!(f.output_system == g.input_system))
    throw std::invalid_argument("sequential composition type mismatch");
  NoisyPermutation np = seq_compose(g.latent_part, f.latent_part);
  if (cfg.mutation == Mutation::kSeqDropLatent &&
      f.input_system.length() == g.input_system.length())
    np = g.latent_part;
  return make_transformation(f.input_system, g.output_system,
                             kraus_compose(g.op_part, f.op_part), std::move(np),
                             cfg);
}

LatentTransformation par_compose(const LatentTransformation& a,
                                 const LatentTransformation& b,
                                 const LatentConfig& cfg) {
  const SystemString in = compose_systems(a.input_system, b.input_system);
  const SystemString out = compose_systems(a.output_system, b.output_system);
  const PairLayout lin = pair_layout(a.input_system, b.input_system, cfg);
  const PairLayout lout = pair_layout(a.output_system, b.output_system, cfg);

  const KrausMap mid = kraus_tensor(
      kraus_tensor(star_product_kraus(a, b, cfg), a.op_part), b.op_part);
  if (!(mid.input_shape == lin.block_shape) ||
      !(mid.output_shape == lout.block_shape))
    throw std::logic_error("parallel composition block mismatch");

  const std::vector<Index> col_map =
      permutation_index_map(lin.to_blocks, qmap(in, cfg).full_shape());
  const std::vector<Index> row_map =
      permutation_index_map(lout.to_blocks.inverse(), lout.block_shape);
  std::vector<Matrix> ops;
  ops.reserve(mid.ops.size());
  for (const Matrix& k : mid.ops)
    ops.push_back(relabel_operator(k, row_map, col_map));

  return make_transformation(
      in, out,
      KrausMap(qmap(in, cfg).full_shape(), qmap(out, cfg).full_shape(),
               std::move(ops)),
      par_merge(a.latent_part, b.latent_part), cfg);
}

KrausMap realize(const LatentTransformation& t, const SystemString& ancilla,
                 const LatentConfig& cfg) {
  const RealizeLayout lin = realize_layout(t.input_system, ancilla, cfg);
  const RealizeLayout lout = realize_layout(t.output_system, ancilla, cfg);
  const SystemString in = compose_systems(t.input_system, ancilla);
  const SystemString out = compose_systems(t.output_system, ancilla);

  KrausMap mid = KrausMap::identity(shape_slice(lin.block_shape, 0, lin.eown_count));
  for (int j = 1; j <= ancilla.length(); ++j)
    mid = kraus_tensor(mid, noisy_perm_kraus(t.latent_part, ancilla.at(j),
                                             t.input_system, t.output_system, cfg));
  mid = kraus_tensor(mid, t.op_part);
  mid = kraus_tensor(mid, KrausMap::identity(shape_slice(
                              lin.block_shape,
                              lin.block_shape.count() - lin.eops_count,
                              lin.eops_count)));
  if (!(mid.input_shape == lin.block_shape) ||
      !(mid.output_shape == lout.block_shape))
    throw std::logic_error("realization block mismatch");

  const std::vector<Index> col_map =
      permutation_index_map(lin.to_blocks, qmap(in, cfg).full_shape());
  const std::vector<Index> row_map =
      permutation_index_map(lout.to_blocks.inverse(), lout.block_shape);
  std::vector<Matrix> ops;
  ops.reserve(mid.ops.size());
  for (const Matrix& k : mid.ops)
    ops.push_back(relabel_operator(k, row_map, col_map));
  return KrausMap(qmap(in, cfg).full_shape(), qmap(out, cfg).full_shape(),
                  std::move(ops));
}

Matrix apply_realized(const LatentTransformation& t, const SystemString& ancilla,
                      const Matrix& rho, const LatentConfig& cfg) {
  const RealizeLayout lin = realize_layout(t.input_system, ancilla, cfg);
  const RealizeLayout lout = realize_layout(t.output_system, ancilla, cfg);
  const SystemString in = compose_systems(t.input_system, ancilla);
  const FactorShape in_shape = qmap(in, cfg).full_shape();
  if (rho.rows() != in_shape.total() || rho.cols() != rho.rows())
    throw std::invalid_argument("state does not match the realized input space");

  Matrix cur = apply_factor_permutation(rho, in_shape, lin.to_blocks);
  FactorShape shape = lin.block_shape;

  const int n = t.input_system.length();
  std::size_t pos = lin.cross_first;
  for (int j = 1; j <= ancilla.length(); ++j) {
    const KrausMap np = noisy_perm_kraus(t.latent_part, ancilla.at(j),
                                         t.input_system, t.output_system, cfg);
    cur = apply_kraus_to_range(cur, shape, pos, static_cast<std::size_t>(n), np);
    shape = replaced_range_shape(shape, pos, static_cast<std::size_t>(n),
                                 np.output_shape);
    pos += np.output_shape.count();
  }
  cur = apply_kraus_to_range(cur, shape, pos, lin.t_count, t.op_part);
  shape = replaced_range_shape(shape, pos, lin.t_count, t.op_part.output_shape);
  if (!(shape == lout.block_shape))
    throw std::logic_error("realized output block mismatch");

  return apply_factor_permutation(cur, shape, lout.to_blocks.inverse());
}

double generator_distance(const LatentTransformation& a,
                          const LatentTransformation& b) {
  if (!(a.input_system == b.input_system) ||
      !(a.output_system == b.output_system) ||
      !(a.latent_part == b.latent_part))
    return std::numeric_limits<double>::infinity();
  return max_abs_diff(choi_matrix(a.op_part), choi_matrix(b.op_part));
}

bool transformations_equal(const LatentTransformation& a,
                           const LatentTransformation& b, double tol) {
  return generator_distance(a, b) <= tol;
}

}  // namespace latentq
