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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace latentq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Default tolerance for operator equality (max-abs entry difference).
inline constexpr double kOpTol = 1e-9;
/// Default slack for eigenvalue positivity checks.
inline constexpr double kEigTol = 1e-10;

/// A bijection of slots, stored as dest[i] = destination of source slot i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> dest);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return dest_.size(); }
  std::size_t operator[](std::size_t i) const { return dest_[i]; }
  const std::vector<std::size_t>& dest() const { return dest_; }

  /// Composite permutation: apply *this first, then `second`.
  Permutation then(const Permutation& second) const;
  Permutation inverse() const;
  bool is_identity() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> dest_;
};

/// Ordered list of tensor-factor dimensions. The flat index of a tuple is
/// row-major: the first factor varies slowest.
struct FactorShape {
  std::vector<Index> dims;

  FactorShape() = default;
  FactorShape(std::initializer_list<Index> d) : dims(d) { validate(); }
  explicit FactorShape(std::vector<Index> d) : dims(std::move(d)) { validate(); }

  Index total() const;
  std::size_t count() const { return dims.size(); }

  bool operator==(const FactorShape&) const = default;

 private:
  void validate() const;
};

FactorShape concat_shapes(const FactorShape& a, const FactorShape& b);
/// Shape after relocating factors: out.dims[perm[i]] = in.dims[i].
FactorShape permuted_shape(const FactorShape& shape, const Permutation& perm);

/// Kronecker product. Dimensions multiply; entries must be finite.
template <typename DA, typename DB>
Matrix kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker product of a list; the empty list gives the 1x1 identity.
Matrix kron_all(const std::vector<Matrix>& factors);

/// Unitary P relocating factor i to slot perm[i]:
/// P (v_1 x ... x v_n) has v_i in slot perm[i].
Matrix permutation_operator(const Permutation& perm, const FactorShape& shape);

/// P m P^dag computed by index relabelling (exact, no arithmetic).
Matrix apply_factor_permutation(const Matrix& m, const FactorShape& shape,
                                const Permutation& perm);

/// Flat-index destinations of a factor relocation: where each basis index of
/// `shape` lands once factor i moves to slot perm[i].
std::vector<Index> permutation_index_map(const Permutation& perm,
                                         const FactorShape& shape);

/// P_out k P_in as an index relabelling: rows relocated by row_map
/// (out(row_map[r], .) = k(r, .)) and column c taken from col_map[c].
Matrix relabel_operator(const Matrix& k, const std::vector<Index>& row_map,
                        const std::vector<Index>& col_map);

/// Reduced operator on the kept factors, in their original relative order.
Matrix partial_trace(const Matrix& rho, const FactorShape& shape,
                     const std::vector<std::size_t>& keep);

/// A completely positive map in Kraus form, rho -> sum_k K rho K^dag.
struct KrausMap {
  FactorShape input_shape;
  FactorShape output_shape;
  std::vector<Matrix> ops;

  KrausMap() = default;
  KrausMap(FactorShape in, FactorShape out, std::vector<Matrix> kraus);

  static KrausMap identity(const FactorShape& shape);
  static KrausMap from_single(Matrix k, FactorShape in, FactorShape out);

  Index input_dim() const { return input_shape.total(); }
  Index output_dim() const { return output_shape.total(); }

  Matrix apply(const Matrix& rho) const;

  /// sum_k K^dag K; equals the identity for a channel.
  Matrix completeness() const;
  double trace_preservation_gap() const;
  bool is_trace_nonincreasing(double tol = kOpTol) const;
  bool is_channel(double tol = kOpTol) const;
};

Matrix apply_kraus(const KrausMap& map, const Matrix& rho);

/// g after f, as the product Kraus set {G F}.
KrausMap kraus_compose(const KrausMap& g, const KrausMap& f);
/// Parallel action a x b, as the set {A x B}.
KrausMap kraus_tensor(const KrausMap& a, const KrausMap& b);

/// Applies `map` to the contiguous factor range [first, first+count) of rho,
/// acting as identity elsewhere. The factor range is replaced by
/// map.output_shape; returns the new operator (see replaced_range_shape).
Matrix apply_kraus_to_range(const Matrix& rho, const FactorShape& shape,
                            std::size_t first, std::size_t count,
                            const KrausMap& map);
FactorShape replaced_range_shape(const FactorShape& shape, std::size_t first,
                                 std::size_t count, const FactorShape& repl);

/// Choi matrix sum_k vec(K) vec(K)^dag with column-major vec. Two maps are
/// equal iff their Choi matrices are.
Matrix choi_matrix(const KrausMap& map);

struct OperatorCheck {
  bool pass = false;
  double max_violation = 0.0;
};

OperatorCheck is_density(const Matrix& m, double tol = kOpTol,
                         double eig_tol = kEigTol);
OperatorCheck is_effect(const Matrix& m, double tol = kOpTol,
                        double eig_tol = kEigTol);
OperatorCheck is_pvm_element(const Matrix& m, double tol = kOpTol,
                             double eig_tol = kEigTol);

double max_abs_diff(const Matrix& a, const Matrix& b);
double hermiticity_gap(const Matrix& m);
double min_eigenvalue(const Matrix& hermitian);

}  // namespace latentq
