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

#include "latentq/strings.hpp"

#include <atomic>
#include <map>

namespace latentq {

LabelledString LabelledString::fresh(int n) {
  static std::atomic<int> next_tag{1};
  const int tag = next_tag.fetch_add(1);
  std::vector<StringChar> chars;
  chars.reserve(static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) chars.push_back(StringChar{tag, p});
  return LabelledString(std::move(chars));
}

LabelledString concat(const LabelledString& a, const LabelledString& b) {
  std::vector<StringChar> chars = a.chars();
  chars.insert(chars.end(), b.chars().begin(), b.chars().end());
  return LabelledString(std::move(chars));
}

std::pair<StringChar, StringChar> CharPair::unordered_key() const {
  return first < second ? std::make_pair(first, second)
                        : std::make_pair(second, first);
}

PairString concat(const PairString& a, const PairString& b) {
  PairString out = a;
  out.pairs.insert(out.pairs.end(), b.pairs.begin(), b.pairs.end());
  return out;
}

PairString times(const LabelledString& a, const LabelledString& b) {
  PairString out;
  out.pairs.reserve(static_cast<std::size_t>(a.length()) *
                    static_cast<std::size_t>(b.length()));
  for (const StringChar& ca : a.chars())
    for (const StringChar& cb : b.chars()) out.pairs.push_back(CharPair{ca, cb});
  return out;
}

PairString odot(const LabelledString& a) {
  PairString out;
  for (int i = 1; i < a.length(); ++i)
    for (int j = 0; j < i; ++j)
      out.pairs.push_back(CharPair{a.at(i), a.at(j)});
  return out;
}

namespace {

// Slot permutation matching left pairs to right pairs by unordered key.
// Keys must be unique on both sides.
std::pair<Permutation, std::vector<bool>> match_unordered(
    const PairString& left, const PairString& right) {
  if (left.length() != right.length())
    throw std::invalid_argument("pair lists of different length");
  std::map<std::pair<StringChar, StringChar>, std::size_t> where;
  for (std::size_t s = 0; s < right.pairs.size(); ++s) {
    if (!where.emplace(right.pairs[s].unordered_key(), s).second)
      throw std::invalid_argument("duplicate pair on right side");
  }
  std::vector<std::size_t> dest(left.pairs.size());
  std::vector<bool> flipped(left.pairs.size(), false);
  for (std::size_t s = 0; s < left.pairs.size(); ++s) {
    auto it = where.find(left.pairs[s].unordered_key());
    if (it == where.end())
      throw std::invalid_argument("unmatched pair between sides");
    dest[s] = it->second;
    flipped[s] = !(right.pairs[it->second] == left.pairs[s]);
  }
  return {Permutation(std::move(dest)), std::move(flipped)};
}

}  // namespace

OdotDecomposition odot_decomposition_perm(const LabelledString& n,
                                          const LabelledString& e) {
  const PairString left = odot(concat(n, e));
  const PairString right = concat(concat(odot(e), times(e, n)), odot(n));
  auto [perm, flipped] = match_unordered(left, right);
  return OdotDecomposition{std::move(perm), std::move(flipped)};
}

Permutation times_symmetry_perm(const LabelledString& n1,
                                const LabelledString& n2) {
  PairString left = times(n1, n2);
  for (CharPair& p : left.pairs) std::swap(p.first, p.second);
  const PairString right = times(n2, n1);
  std::map<CharPair, std::size_t> where;
  for (std::size_t s = 0; s < right.pairs.size(); ++s)
    where.emplace(right.pairs[s], s);
  std::vector<std::size_t> dest(left.pairs.size());
  for (std::size_t s = 0; s < left.pairs.size(); ++s)
    dest[s] = where.at(left.pairs[s]);
  return Permutation(std::move(dest));
}

Permutation boxplus_symmetry_perm(const LabelledString& e,
                                  const LabelledString& n1,
                                  const LabelledString& n2) {
  const PairString left = times(e, concat(n1, n2));
  const PairString right = times(e, concat(n2, n1));
  std::map<CharPair, std::size_t> where;
  for (std::size_t s = 0; s < right.pairs.size(); ++s)
    where.emplace(right.pairs[s], s);
  std::vector<std::size_t> dest(left.pairs.size());
  for (std::size_t s = 0; s < left.pairs.size(); ++s)
    dest[s] = where.at(left.pairs[s]);
  return Permutation(std::move(dest));
}

std::vector<std::pair<int, int>> odot_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 2; i <= n; ++i)
    for (int j = 1; j < i; ++j) out.emplace_back(i, j);
  return out;
}

std::size_t odot_slot(int n, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw std::out_of_range("invalid position pair");
  if (i < j) std::swap(i, j);
  // Pairs with larger entry < i come first: C(i-1, 2) of them, then j-1.
  return static_cast<std::size_t>((i - 1) * (i - 2) / 2 + (j - 1));
}

}  // namespace latentq
