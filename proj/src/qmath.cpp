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

#include "latentq/qmath.hpp"

#include <algorithm>
#include <numeric>

namespace latentq {

namespace {

// Row-major strides: stride[i] = product of dims after i.
std::vector<Index> strides_of(const FactorShape& shape) {
  std::vector<Index> s(shape.count(), 1);
  for (std::size_t i = shape.count(); i-- > 1;)
    s[i - 1] = s[i] * shape.dims[i];
  return s;
}

// Flat index -> per-factor tuple.
void decode(Index flat, const FactorShape& shape, std::vector<Index>& tuple) {
  tuple.resize(shape.count());
  for (std::size_t i = shape.count(); i-- > 0;) {
    tuple[i] = flat % shape.dims[i];
    flat /= shape.dims[i];
  }
}

}  // namespace

// Index map for relocating factors: out_flat[in_flat] under perm.
std::vector<Index> permutation_index_map(const Permutation& perm,
                                         const FactorShape& shape) {
  if (perm.size() != shape.count())
    throw std::invalid_argument("permutation/shape factor count mismatch");
  const FactorShape out_shape = permuted_shape(shape, perm);
  const auto out_strides = strides_of(out_shape);
  const Index total = shape.total();
  std::vector<Index> map(static_cast<std::size_t>(total));
  std::vector<Index> tuple;
  for (Index f = 0; f < total; ++f) {
    decode(f, shape, tuple);
    Index out = 0;
    for (std::size_t i = 0; i < shape.count(); ++i)
      out += tuple[i] * out_strides[perm[i]];
    map[static_cast<std::size_t>(f)] = out;
  }
  return map;
}

Matrix relabel_operator(const Matrix& k, const std::vector<Index>& row_map,
                        const std::vector<Index>& col_map) {
  if (static_cast<std::size_t>(k.rows()) != row_map.size() ||
      static_cast<std::size_t>(k.cols()) != col_map.size())
    throw std::invalid_argument("relabelling maps do not match the operator");
  Matrix cols(k.rows(), k.cols());
  for (Index c = 0; c < k.cols(); ++c)
    cols.col(c) = k.col(col_map[static_cast<std::size_t>(c)]);
  Matrix out(k.rows(), k.cols());
  for (Index r = 0; r < k.rows(); ++r)
    out.row(row_map[static_cast<std::size_t>(r)]) = cols.row(r);
  return out;
}

Permutation::Permutation(std::vector<std::size_t> dest) : dest_(std::move(dest)) {
  std::vector<bool> seen(dest_.size(), false);
  for (std::size_t d : dest_) {
    if (d >= dest_.size() || seen[d])
      throw std::invalid_argument("not a permutation");
    seen[d] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> d(n);
  std::iota(d.begin(), d.end(), 0u);
  return Permutation(std::move(d));
}

Permutation Permutation::then(const Permutation& second) const {
  if (second.size() != size())
    throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> d(size());
  for (std::size_t i = 0; i < size(); ++i) d[i] = second[dest_[i]];
  return Permutation(std::move(d));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> d(size());
  for (std::size_t i = 0; i < size(); ++i) d[dest_[i]] = i;
  return Permutation(std::move(d));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (dest_[i] != i) return false;
  return true;
}

void FactorShape::validate() const {
  for (Index d : dims)
    if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
}

Index FactorShape::total() const {
  Index t = 1;
  for (Index d : dims) t *= d;
  return t;
}

FactorShape concat_shapes(const FactorShape& a, const FactorShape& b) {
  std::vector<Index> d = a.dims;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  return FactorShape(std::move(d));
}

FactorShape permuted_shape(const FactorShape& shape, const Permutation& perm) {
  if (perm.size() != shape.count())
    throw std::invalid_argument("permutation/shape factor count mismatch");
  std::vector<Index> d(shape.count());
  for (std::size_t i = 0; i < shape.count(); ++i) d[perm[i]] = shape.dims[i];
  return FactorShape(std::move(d));
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

Matrix permutation_operator(const Permutation& perm, const FactorShape& shape) {
  const Index total = shape.total();
  const auto map = permutation_index_map(perm, shape);
  Matrix p = Matrix::Zero(total, total);
  for (Index c = 0; c < total; ++c) p(map[static_cast<std::size_t>(c)], c) = 1.0;
  return p;
}

Matrix apply_factor_permutation(const Matrix& m, const FactorShape& shape,
                                const Permutation& perm) {
  const Index total = shape.total();
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("operator does not match shape");
  const auto map = permutation_index_map(perm, shape);
  Matrix out(total, total);
  for (Index r = 0; r < total; ++r)
    for (Index c = 0; c < total; ++c)
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) =
          m(r, c);
  return out;
}

Matrix partial_trace(const Matrix& rho, const FactorShape& shape,
                     const std::vector<std::size_t>& keep) {
  const Index total = shape.total();
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("operator does not match shape");
  std::vector<bool> kept(shape.count(), false);
  for (std::size_t k : keep) {
    if (k >= shape.count()) throw std::out_of_range("kept factor out of range");
    kept[k] = true;
  }

  const auto strides = strides_of(shape);
  std::vector<std::size_t> keep_sorted, traced;
  for (std::size_t i = 0; i < shape.count(); ++i)
    (kept[i] ? keep_sorted : traced).push_back(i);

  FactorShape keep_shape, trace_shape;
  for (std::size_t i : keep_sorted) keep_shape.dims.push_back(shape.dims[i]);
  for (std::size_t i : traced) trace_shape.dims.push_back(shape.dims[i]);

  const Index dk = keep_shape.total();
  const Index dt = trace_shape.total();

  // Flat offsets contributed by each kept / traced tuple.
  std::vector<Index> keep_offset(static_cast<std::size_t>(dk), 0);
  std::vector<Index> trace_offset(static_cast<std::size_t>(dt), 0);
  std::vector<Index> tuple;
  for (Index a = 0; a < dk; ++a) {
    decode(a, keep_shape, tuple);
    Index off = 0;
    for (std::size_t i = 0; i < keep_sorted.size(); ++i)
      off += tuple[i] * strides[keep_sorted[i]];
    keep_offset[static_cast<std::size_t>(a)] = off;
  }
  for (Index t = 0; t < dt; ++t) {
    decode(t, trace_shape, tuple);
    Index off = 0;
    for (std::size_t i = 0; i < traced.size(); ++i)
      off += tuple[i] * strides[traced[i]];
    trace_offset[static_cast<std::size_t>(t)] = off;
  }

  Matrix out = Matrix::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a)
    for (Index b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (Index t = 0; t < dt; ++t)
        sum += rho(keep_offset[static_cast<std::size_t>(a)] +
                       trace_offset[static_cast<std::size_t>(t)],
                   keep_offset[static_cast<std::size_t>(b)] +
                       trace_offset[static_cast<std::size_t>(t)]);
      out(a, b) = sum;
    }
  return out;
}

KrausMap::KrausMap(FactorShape in, FactorShape out, std::vector<Matrix> kraus)
    : input_shape(std::move(in)), output_shape(std::move(out)), ops(std::move(kraus)) {
  for (const Matrix& k : ops) {
    if (k.rows() != output_shape.total() || k.cols() != input_shape.total())
      throw std::invalid_argument("Kraus operator dimension mismatch");
    if (!k.allFinite()) throw std::invalid_argument("non-finite Kraus operator");
  }
}

KrausMap KrausMap::identity(const FactorShape& shape) {
  return KrausMap(shape, shape, {Matrix::Identity(shape.total(), shape.total())});
}

KrausMap KrausMap::from_single(Matrix k, FactorShape in, FactorShape out) {
  std::vector<Matrix> ops;
  ops.push_back(std::move(k));
  return KrausMap(std::move(in), std::move(out), std::move(ops));
}

Matrix KrausMap::apply(const Matrix& rho) const {
  if (rho.rows() != input_dim() || rho.cols() != input_dim())
    throw std::invalid_argument("state does not match map input shape");
  Matrix out = Matrix::Zero(output_dim(), output_dim());
  for (const Matrix& k : ops) out.noalias() += k * rho * k.adjoint();
  return out;
}

Matrix KrausMap::completeness() const {
  Matrix s = Matrix::Zero(input_dim(), input_dim());
  for (const Matrix& k : ops) s.noalias() += k.adjoint() * k;
  return s;
}

double KrausMap::trace_preservation_gap() const {
  return max_abs_diff(completeness(), Matrix::Identity(input_dim(), input_dim()));
}

bool KrausMap::is_trace_nonincreasing(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(completeness());
  return es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

bool KrausMap::is_channel(double tol) const {
  return trace_preservation_gap() <= tol;
}

Matrix apply_kraus(const KrausMap& map, const Matrix& rho) { return map.apply(rho); }

KrausMap kraus_compose(const KrausMap& g, const KrausMap& f) {
  if (!(f.output_shape == g.input_shape) && f.output_dim() != g.input_dim())
    throw std::invalid_argument("composed maps have mismatched dimensions");
  std::vector<Matrix> ops;
  ops.reserve(g.ops.size() * f.ops.size());
  for (const Matrix& kg : g.ops)
    for (const Matrix& kf : f.ops) ops.push_back(kg * kf);
  return KrausMap(f.input_shape, g.output_shape, std::move(ops));
}

KrausMap kraus_tensor(const KrausMap& a, const KrausMap& b) {
  std::vector<Matrix> ops;
  ops.reserve(a.ops.size() * b.ops.size());
  for (const Matrix& ka : a.ops)
    for (const Matrix& kb : b.ops) ops.push_back(kron(ka, kb));
  return KrausMap(concat_shapes(a.input_shape, b.input_shape),
                  concat_shapes(a.output_shape, b.output_shape), std::move(ops));
}

FactorShape replaced_range_shape(const FactorShape& shape, std::size_t first,
                                 std::size_t count, const FactorShape& repl) {
  if (first + count > shape.count()) throw std::out_of_range("factor range");
  std::vector<Index> d(shape.dims.begin(),
                       shape.dims.begin() + static_cast<std::ptrdiff_t>(first));
  d.insert(d.end(), repl.dims.begin(), repl.dims.end());
  d.insert(d.end(),
           shape.dims.begin() + static_cast<std::ptrdiff_t>(first + count),
           shape.dims.end());
  return FactorShape(std::move(d));
}

namespace {

// (I_pre x K x I_post) * m, with m viewed as (pre*in*post) x cols.
Matrix left_apply_middle(const Matrix& k, const Matrix& m, Index pre, Index post) {
  const Index din = k.cols();
  const Index dout = k.rows();
  Matrix out = Matrix::Zero(pre * dout * post, m.cols());
  for (Index a = 0; a < pre; ++a) {
    const Index in_base = a * din * post;
    const Index out_base = a * dout * post;
    for (Index o = 0; o < dout; ++o)
      for (Index i = 0; i < din; ++i) {
        const Complex c = k(o, i);
        if (c == Complex(0.0)) continue;
        out.middleRows(out_base + o * post, post).noalias() +=
            c * m.middleRows(in_base + i * post, post);
      }
  }
  return out;
}

}  // namespace

Matrix apply_kraus_to_range(const Matrix& rho, const FactorShape& shape,
                            std::size_t first, std::size_t count,
                            const KrausMap& map) {
  if (first + count > shape.count()) throw std::out_of_range("factor range");
  Index pre = 1, mid = 1, post = 1;
  for (std::size_t i = 0; i < first; ++i) pre *= shape.dims[i];
  for (std::size_t i = first; i < first + count; ++i) mid *= shape.dims[i];
  for (std::size_t i = first + count; i < shape.count(); ++i)
    post *= shape.dims[i];
  if (mid != map.input_dim())
    throw std::invalid_argument("factor range does not match map input");
  if (rho.rows() != pre * mid * post || rho.cols() != rho.rows())
    throw std::invalid_argument("operator does not match shape");

  const Index out_dim = pre * map.output_dim() * post;
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (const Matrix& k : map.ops) {
    Matrix left = left_apply_middle(k, rho, pre, post);
    out.noalias() += left_apply_middle(k, left.adjoint(), pre, post).adjoint();
  }
  return out;
}

Matrix choi_matrix(const KrausMap& map) {
  const Index n = map.input_dim() * map.output_dim();
  Matrix c = Matrix::Zero(n, n);
  for (const Matrix& k : map.ops) {
    Eigen::Map<const Vector> v(k.data(), k.size());
    c.noalias() += v * v.adjoint();
  }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_gap(const Matrix& m) {
  return max_abs_diff(m, m.adjoint());
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((hermitian + hermitian.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

namespace {

OperatorCheck combine(std::initializer_list<double> violations) {
  double worst = 0.0;
  for (double v : violations) worst = std::max(worst, v);
  return OperatorCheck{worst == 0.0, worst};
}

double excess(double value, double lo, double hi) {
  if (value < lo) return lo - value;
  if (value > hi) return value - hi;
  return 0.0;
}

}  // namespace

OperatorCheck is_density(const Matrix& m, double tol, double eig_tol) {
  if (m.rows() != m.cols() || !m.allFinite()) return {false, 1.0};
  const double herm = std::max(0.0, hermiticity_gap(m) - tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  const double neg = std::max(0.0, -(es.eigenvalues().minCoeff()) - eig_tol);
  const double tr = excess(m.trace().real(), -tol, 1.0 + tol);
  return combine({herm, neg, tr});
}

OperatorCheck is_effect(const Matrix& m, double tol, double eig_tol) {
  if (m.rows() != m.cols() || !m.allFinite()) return {false, 1.0};
  const double herm = std::max(0.0, hermiticity_gap(m) - tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  const double neg = std::max(0.0, -(es.eigenvalues().minCoeff()) - eig_tol);
  const double above =
      std::max(0.0, es.eigenvalues().maxCoeff() - 1.0 - eig_tol);
  return combine({herm, neg, above});
}

OperatorCheck is_pvm_element(const Matrix& m, double tol, double eig_tol) {
  OperatorCheck eff = is_effect(m, tol, eig_tol);
  const double idem = std::max(0.0, max_abs_diff(m * m, m) - tol);
  return combine({eff.max_violation, idem});
}

}  // namespace latentq
