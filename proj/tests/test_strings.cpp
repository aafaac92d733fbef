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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "latentq/strings.hpp"

using namespace latentq;

namespace {

// Multiset of orientation-free pair keys.
std::multiset<std::pair<StringChar, StringChar>> keys(const PairString& p) {
  std::multiset<std::pair<StringChar, StringChar>> out;
  for (const CharPair& c : p.pairs) out.insert(c.unordered_key());
  return out;
}

}  // namespace

TEST_CASE("concatenation") {
  const LabelledString empty = LabelledString::fresh(0);
  const LabelledString n = LabelledString::fresh(3);
  CHECK(concat(empty, n) == n);
  CHECK(concat(n, empty) == n);

  const LabelledString a = LabelledString::fresh(2);
  CHECK(concat(a, n).length() == 5);

  const LabelledString b = LabelledString::fresh(1);
  CHECK(concat(concat(a, b), n) == concat(a, concat(b, n)));
}

TEST_CASE("distinct instances of equal content differ") {
  CHECK_FALSE(LabelledString::fresh(2) == LabelledString::fresh(2));
}

TEST_CASE("pair product lengths and order") {
  const LabelledString n = LabelledString::fresh(2);
  const LabelledString m = LabelledString::fresh(2);
  const PairString p = times(n, m);
  REQUIRE(p.length() == 4);
  CHECK(p.pairs[0] == CharPair{n.at(0), m.at(0)});
  CHECK(p.pairs[1] == CharPair{n.at(0), m.at(1)});
  CHECK(p.pairs[2] == CharPair{n.at(1), m.at(0)});
  CHECK(p.pairs[3] == CharPair{n.at(1), m.at(1)});

  CHECK(times(LabelledString::fresh(1), LabelledString::fresh(1)).length() == 1);
  CHECK(times(LabelledString::fresh(0), m).length() == 0);

  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      CHECK(times(LabelledString::fresh(a), LabelledString::fresh(b)).length() ==
            a * b);
}

TEST_CASE("triangular product") {
  CHECK(odot(LabelledString::fresh(1)).length() == 0);

  const LabelledString n = LabelledString::fresh(3);
  const PairString p = odot(n);
  REQUIRE(p.length() == 3);
  CHECK(p.pairs[0] == CharPair{n.at(1), n.at(0)});
  CHECK(p.pairs[1] == CharPair{n.at(2), n.at(0)});
  CHECK(p.pairs[2] == CharPair{n.at(2), n.at(1)});

  for (int a = 0; a <= 6; ++a)
    CHECK(odot(LabelledString::fresh(a)).length() == a * (a - 1) / 2);
}

TEST_CASE("split of a concatenated triangular product") {
  SUBCASE("single cross pair") {
    const auto d = odot_decomposition_perm(LabelledString::fresh(1),
                                           LabelledString::fresh(1));
    REQUIRE(d.perm.size() == 1);
    CHECK(d.perm.is_identity());
  }
  SUBCASE("empty appended string") {
    const auto d = odot_decomposition_perm(LabelledString::fresh(4),
                                           LabelledString::fresh(0));
    CHECK(d.perm.size() == 6);
    CHECK(d.perm.is_identity());
  }
  SUBCASE("exhaustive multiset match") {
    for (int nn = 0; nn <= 4; ++nn)
      for (int ee = 0; ee <= 4; ++ee) {
        const LabelledString n = LabelledString::fresh(nn);
        const LabelledString e = LabelledString::fresh(ee);
        const auto d = odot_decomposition_perm(n, e);
        const PairString left = odot(concat(n, e));
        const PairString right =
            concat(concat(odot(e), times(e, n)), odot(n));
        REQUIRE(d.perm.size() == left.pairs.size());
        CHECK(keys(left) == keys(right));
        for (std::size_t s = 0; s < left.pairs.size(); ++s)
          CHECK(right.pairs[d.perm[s]].unordered_key() ==
                left.pairs[s].unordered_key());
        // Bijectivity is enforced by construction; inverse must round-trip.
        CHECK(d.perm.inverse().then(d.perm).is_identity());
      }
  }
}

TEST_CASE("pair-product symmetry permutations") {
  SUBCASE("singletons need no reordering") {
    const auto p = times_symmetry_perm(LabelledString::fresh(1),
                                       LabelledString::fresh(1));
    CHECK(p.is_identity());
  }
  SUBCASE("entry flip with reordering") {
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        const LabelledString n1 = LabelledString::fresh(a);
        const LabelledString n2 = LabelledString::fresh(b);
        const Permutation p = times_symmetry_perm(n1, n2);
        const PairString left = times(n1, n2);
        const PairString right = times(n2, n1);
        REQUIRE(p.size() == left.pairs.size());
        for (std::size_t s = 0; s < left.pairs.size(); ++s) {
          CHECK(right.pairs[p[s]].first == left.pairs[s].second);
          CHECK(right.pairs[p[s]].second == left.pairs[s].first);
        }
      }
  }
  SUBCASE("swapping the appended blocks") {
    const LabelledString e = LabelledString::fresh(1);
    const LabelledString n1 = LabelledString::fresh(1);
    const LabelledString n2 = LabelledString::fresh(1);
    const Permutation p = boxplus_symmetry_perm(e, n1, n2);
    CHECK(p == Permutation({1, 0}));

    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        const LabelledString ee = LabelledString::fresh(2);
        const LabelledString m1 = LabelledString::fresh(a);
        const LabelledString m2 = LabelledString::fresh(b);
        const Permutation q = boxplus_symmetry_perm(ee, m1, m2);
        const PairString left = times(ee, concat(m1, m2));
        const PairString right = times(ee, concat(m2, m1));
        for (std::size_t s = 0; s < left.pairs.size(); ++s)
          CHECK(right.pairs[q[s]] == left.pairs[s]);
      }
  }
}

TEST_CASE("position pair helpers") {
  const auto pairs = odot_pairs(4);
  REQUIRE(pairs.size() == 6);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    CHECK(odot_slot(4, pairs[s].first, pairs[s].second) == s);
    CHECK(odot_slot(4, pairs[s].second, pairs[s].first) == s);
  }
  CHECK_THROWS_AS(odot_slot(4, 2, 2), std::out_of_range);
}
