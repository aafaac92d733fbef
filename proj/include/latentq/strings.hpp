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

#include <tuple>
#include <utility>
#include <vector>

#include "latentq/qmath.hpp"

namespace latentq {

// Calculus of labelled character strings and their pair products. Characters
// are identified by (tag, position) where the tag names the string instance
// they were created in, so equal-content strings remain distinct objects and
// characters keep their identity through concatenation.

struct StringChar {
  int tag = 0;
  int pos = 0;  // 1-based within the originating string

  auto operator<=>(const StringChar&) const = default;
};

class LabelledString {
 public:
  LabelledString() = default;
  explicit LabelledString(std::vector<StringChar> chars)
      : chars_(std::move(chars)) {}

  /// A new string of n characters with a process-unique tag.
  static LabelledString fresh(int n);

  int length() const { return static_cast<int>(chars_.size()); }
  const std::vector<StringChar>& chars() const { return chars_; }
  const StringChar& at(int i) const { return chars_.at(static_cast<std::size_t>(i)); }

  bool operator==(const LabelledString&) const = default;

 private:
  std::vector<StringChar> chars_;
};

/// Concatenation: a's characters precede b's, identities preserved.
LabelledString concat(const LabelledString& a, const LabelledString& b);

struct CharPair {
  StringChar first;
  StringChar second;

  /// Orientation-free key: the two characters sorted.
  std::pair<StringChar, StringChar> unordered_key() const;

  auto operator<=>(const CharPair&) const = default;
};

struct PairString {
  std::vector<CharPair> pairs;

  int length() const { return static_cast<int>(pairs.size()); }
  bool operator==(const PairString&) const = default;
};

PairString concat(const PairString& a, const PairString& b);

/// All pairs (a_i, b_j) in lexicographic order (i outer, j inner); length n*m.
PairString times(const LabelledString& a, const LabelledString& b);

/// Pairs (a_i, a_j) with j < i, ordered by i then j; length C(n, 2).
PairString odot(const LabelledString& a);

struct OdotDecomposition {
  /// Slot permutation: right[perm[s]] matches left[s] as an unordered pair,
  /// where left = odot(concat(n, e)) and
  /// right = odot(e) ++ times(e, n) ++ odot(n).
  Permutation perm;
  /// Whether the matched right-side pair has the opposite orientation.
  std::vector<bool> flipped;
};

/// The character permutation splitting the pairs of a concatenated string
/// into the pure-e, cross, and pure-n sectors.
OdotDecomposition odot_decomposition_perm(const LabelledString& n,
                                          const LabelledString& e);

/// Permutation realizing times(n1, n2) ~ times(n2, n1) after entry flip:
/// times(n2, n1)[perm[s]] == flip(times(n1, n2)[s]).
Permutation times_symmetry_perm(const LabelledString& n1,
                                const LabelledString& n2);

/// Permutation realizing times(e, n1 ++ n2) ~ times(e, n2 ++ n1):
/// right[perm[s]] == left[s] exactly (no flip).
Permutation boxplus_symmetry_perm(const LabelledString& e,
                                  const LabelledString& n1,
                                  const LabelledString& n2);

// Position-level helpers used for tensor-factor bookkeeping elsewhere.
// Pairs are 1-based (i, j) with i > j, in the odot order.

std::vector<std::pair<int, int>> odot_pairs(int n);
/// Slot of pair {i, j} (any orientation) within odot_pairs(n).
std::size_t odot_slot(int n, int i, int j);

}  // namespace latentq
