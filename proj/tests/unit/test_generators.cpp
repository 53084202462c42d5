// Copyright 2026 The metricext Authors
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

#include <gtest/gtest.h>

#include "metricext/metricext.hpp"
#include "oracles.hpp"

namespace metricext {
namespace {

std::size_t depth_of(const VertexId& v) { return v.label().size() - 1; }

// Length of the longest common prefix of two labels, without the "s".
std::size_t meet(const VertexId& s, const VertexId& t) {
  std::size_t k = 1;
  while (k < s.label().size() && k < t.label().size() && s.label()[k] == t.label()[k]) ++k;
  return k - 1;
}

TEST(Cantor, Examples) {
  PartialMetric c1 = cantor_tree(1);
  EXPECT_EQ(c1.size(), 3u);
  EXPECT_EQ(c1.edge_count(), 2u);
  EXPECT_EQ(c1.weight(Doubleton("s", "s0")), Rational(1, 2));
  EXPECT_TRUE(is_floppy(c1).floppy);
  EXPECT_TRUE(is_floppy(cantor_tree(2)).floppy);
  // Frozen from tests/support/derive_examples.py.
  PartialMetric c2 = cantor_tree(2);
  EXPECT_EQ(hat(c2, "s0", "s10"), Rational(5, 4));
  EXPECT_EQ(check(c2, "s0", "s10"), Rational(1, 4));
  EXPECT_EQ(hat(c2, "s00", "s10"), Rational(3, 2));
  EXPECT_EQ(check(c2, "s00", "s10"), Rational(0));

  try {
    cantor_tree(0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::depth_zero);
  }
  EXPECT_THROW(cantor_tree(kMaxCantorDepth + 1), Error);
}

// check matches |2^-|s| - 2^-|t||; hat matches 2^(1-|s^t|) - 2^-|s| - 2^-|t|.
TEST(Cantor, ClosedForms) {
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    PartialMetric m = cantor_tree(depth);
    EXPECT_EQ(m.size(), (std::size_t{2} << depth) - 1);
    DistanceTables t(m);
    // Simple-chain enumeration is exponential; keep it to the small trees.
    auto h = depth <= 2 ? oracle::hat_matrix(m) : std::vector<Rational>{};
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const auto& s = m.label(i);
        const auto& u = m.label(j);
        ASSERT_EQ(t.check(i, j), (pow2_neg(depth_of(s)) - pow2_neg(depth_of(u))).abs());
        const Rational corrected = Rational(2) * pow2_neg(meet(s, u)) - pow2_neg(depth_of(s)) - pow2_neg(depth_of(u));
        ASSERT_EQ(t.hat(i, j), corrected) << m.pair(i, j).str();
        if (!h.empty()) ASSERT_EQ(h[i * m.size() + j], corrected);
      }
    }
  }
}

TEST(SimpleFamilies, AreGraphMetrics) {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (const PartialMetric& m : {path(n), cycle(n), star(n), complete(n), path(n, Rational(3, 2))}) {
      auto r = validate(m);
      EXPECT_TRUE(r.graph_metric);
      EXPECT_TRUE(r.connected);
    }
    EXPECT_EQ(path(n).edge_count(), n - 1);
    EXPECT_EQ(cycle(n).edge_count(), n);
    EXPECT_EQ(star(n).edge_count(), n - 1);
    EXPECT_TRUE(complete(n).is_full());
    EXPECT_EQ(hat(path(n, Rational(1, 2)), "v0", path(n).label(n - 1)), Rational(static_cast<std::int64_t>(n - 1), 2));
  }
  EXPECT_THROW(cycle(2), Error);
  EXPECT_THROW(path(3, Rational(0)), Error);
  EXPECT_THROW(complete(3, Rational(-1)), Error);
}

TEST(RandomFloppy, DeterministicAndFloppy) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PartialMetric a = random_floppy(2 + seed % 9, Rational(3 + seed % 7, 10), seed);
    EXPECT_EQ(a, random_floppy(2 + seed % 9, Rational(3 + seed % 7, 10), seed));
    EXPECT_TRUE(is_floppy(a).floppy);
    EXPECT_TRUE(validate(a).graph_metric);
  }
  EXPECT_TRUE(random_floppy(2, Rational(1, 2), 1).is_full());
  EXPECT_TRUE(random_floppy(6, Rational(1), 1).is_full());
  EXPECT_THROW(random_floppy(1, Rational(1, 2), 0), Error);
  EXPECT_THROW(random_floppy(5, Rational(0), 0), Error);
  EXPECT_THROW(random_floppy(5, Rational(3, 2), 0), Error);
}

TEST(Generate, Dispatches) {
  GenSpec spec;
  spec.kind = GenKind::cantor;
  spec.size = 2;
  EXPECT_EQ(generate(spec), cantor_tree(2));
  spec.kind = GenKind::star;
  spec.size = 4;
  spec.scale = Rational(2);
  EXPECT_EQ(generate(spec), star(4, Rational(2)));
}

}  // namespace
}  // namespace metricext
