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

using oracle::h_graph;
using oracle::path_abc;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::invariant_violated;
}

TEST(Doubleton, IsOrderIndependent) {
  EXPECT_EQ(Doubleton("b", "a"), Doubleton("a", "b"));
  EXPECT_EQ(Doubleton("b", "a").a(), VertexId("a"));
  EXPECT_EQ(code_of([] { Doubleton("a", "a"); }), ErrorCode::invalid_argument);
}

TEST(PartialMetric, RejectsMalformed) {
  auto make = [](std::vector<VertexId> v, std::vector<WeightedPair> e) { PartialMetric m(std::move(v), e); };
  EXPECT_EQ(code_of([&] { make({}, {}); }), ErrorCode::reject_malformed);
  EXPECT_EQ(code_of([&] { make({"a", "a"}, {}); }), ErrorCode::reject_malformed);
  EXPECT_EQ(code_of([&] { make({"a"}, {{"a", "b", 1}}); }), ErrorCode::reject_malformed);
  EXPECT_EQ(code_of([&] { make({"a", "b"}, {{"a", "a", 1}}); }), ErrorCode::reject_malformed);
  EXPECT_EQ(code_of([&] { make({"a", "b"}, {{"a", "b", -1}}); }), ErrorCode::reject_malformed);
  EXPECT_EQ(code_of([&] { make({"a", "b"}, {{"a", "b", 1}, {"b", "a", 1}}); }), ErrorCode::reject_malformed);
}

TEST(PartialMetric, CanonicalOrder) {
  PartialMetric m({"c", "a", "b"}, {{"c", "b", 1}, {"b", "a", 2}});
  EXPECT_EQ(m.label(0), VertexId("a"));
  ASSERT_EQ(m.edges().size(), 2u);
  EXPECT_EQ(m.edges()[0].u, 0u);
  EXPECT_EQ(m.edges()[0].v, 1u);
  EXPECT_EQ(m.weight(Doubleton("a", "b")), Rational(2));
  EXPECT_FALSE(m.weight(Doubleton("a", "c")).has_value());
  EXPECT_EQ(m, PartialMetric({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 1}}));
  EXPECT_EQ(m.fingerprint(), PartialMetric({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 1}}).fingerprint());
}

TEST(Validate, Examples) {
  auto r = validate(path_abc());
  EXPECT_TRUE(r.connected);
  EXPECT_TRUE(r.graph_pseudometric);
  EXPECT_TRUE(r.graph_metric);
  EXPECT_FALSE(r.full);

  r = validate(PartialMetric({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 5}}));
  EXPECT_FALSE(r.graph_pseudometric);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->edge, Doubleton("a", "c"));
  EXPECT_EQ(r.violation->chain_weight, Rational(2));
  EXPECT_EQ(r.violation->chain, (std::vector<VertexId>{"a", "b", "c"}));

  r = validate(complete(3));
  EXPECT_TRUE(r.full);
  EXPECT_TRUE(r.graph_metric);
}

TEST(Validate, DegenerateAndPseudometric) {
  auto r = validate(PartialMetric({"a"}, {}));
  EXPECT_TRUE(r.full);
  EXPECT_TRUE(r.connected);
  EXPECT_TRUE(is_floppy(PartialMetric({"a"}, {})).floppy);

  r = validate(PartialMetric({"a", "b", "c"}, {{"a", "b", 0}, {"b", "c", 1}}));
  EXPECT_TRUE(r.graph_pseudometric);
  EXPECT_FALSE(r.graph_metric);

  r = validate(PartialMetric({"a", "b", "c"}, {{"a", "b", 1}}));
  EXPECT_FALSE(r.connected);
  EXPECT_FALSE(r.graph_pseudometric);
}

// Frozen from tests/support/derive_examples.py.
TEST(Distances, Examples) {
  EXPECT_EQ(hat(path_abc(), "a", "c"), Rational(2));
  EXPECT_EQ(hat(h_graph(), "x", "y"), Rational(12));
  EXPECT_EQ(ddot(h_graph(), {"a", "b"}, {"a", "b"}), Rational(0));
  EXPECT_EQ(ddot(h_graph(), {"a", "b"}, {"x", "y"}), Rational(2));
  EXPECT_EQ(ddot(oracle::path_abcd(), {"a", "c"}, {"b", "d"}), Rational(2));
  EXPECT_EQ(check(path_abc(), "a", "c"), Rational(0));
  EXPECT_EQ(check(h_graph(), "x", "y"), Rational(8));
  EXPECT_EQ(check(h_graph(), "a", "y"), Rational(9));
  EXPECT_EQ(hat(cantor_tree(1), "s0", "s1"), Rational(1));
  EXPECT_EQ(check(cantor_tree(1), "s0", "s1"), Rational(0));
}

TEST(Distances, Errors) {
  EXPECT_EQ(code_of([] { hat(path_abc(), "a", "z"); }), ErrorCode::unknown_vertex);
  EXPECT_EQ(code_of([] { check(path_abc(), "z", "a"); }), ErrorCode::unknown_vertex);
  EXPECT_EQ(code_of([] { ddot(path_abc(), {"a", "b"}, {"a", "q"}); }), ErrorCode::unknown_vertex);
  PartialMetric split({"a", "b", "c"}, {{"a", "b", 1}});
  EXPECT_EQ(code_of([&] { hat(split, "a", "c"); }), ErrorCode::disconnected);
  EXPECT_EQ(code_of([&] { hat(split, "a", "q"); }), ErrorCode::unknown_vertex);
}

TEST(Distances, MethodsAgree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PartialMetric g = oracle::random_connected_graph(3 + seed % 6, seed);
    DistanceTables fw(g, ShortestPathMethod::floyd_warshall);
    DistanceTables dj(g, ShortestPathMethod::dijkstra);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) ASSERT_EQ(fw.hat(i, j), dj.hat(i, j));
    }
  }
}

TEST(Distances, IncrementalMatchesRecompute) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PartialMetric g = oracle::random_connected_graph(4 + seed % 4, seed);
    auto missing = g.non_edges();
    if (missing.empty()) continue;
    auto [i, j] = missing[seed % missing.size()];
    Rational r(1 + static_cast<std::int64_t>(seed % 9), 2);
    DistanceTables inc = DistanceTables(g).extended(i, j, r);
    DistanceTables full(g.with_edge(i, j, r));
    for (std::size_t u = 0; u < g.size(); ++u) {
      for (std::size_t v = 0; v < g.size(); ++v) ASSERT_EQ(inc.hat(u, v), full.hat(u, v));
    }
    EXPECT_EQ(inc.source_fingerprint(), full.source_fingerprint());
  }
}

TEST(Floppy, Examples) {
  auto r = is_floppy(h_graph());
  EXPECT_TRUE(r.floppy);
  ASSERT_TRUE(r.worst_pair.has_value());
  EXPECT_EQ(r.worst_pair->pair, Doubleton("a", "y"));
  EXPECT_EQ(r.worst_pair->gap, Rational(2));

  PartialMetric star({"c", "u", "v", "w"}, {{"c", "u", 1}, {"c", "v", 1}, {"c", "w", 5}});
  r = is_floppy(star);
  EXPECT_TRUE(r.floppy);
  EXPECT_EQ(r.worst_pair->pair, Doubleton("u", "v"));
  EXPECT_EQ(r.worst_pair->gap, Rational(2));
  EXPECT_EQ(check(star, "u", "w"), Rational(4));

  r = is_floppy(complete(4));
  EXPECT_TRUE(r.floppy);
  EXPECT_FALSE(r.worst_pair.has_value());

  r = is_floppy(oracle::collinear_witness());
  EXPECT_FALSE(r.floppy);
  EXPECT_EQ(r.worst_pair->pair, Doubleton("a", "c"));
  EXPECT_EQ(r.worst_pair->gap, Rational(0));

  EXPECT_EQ(code_of([] { is_floppy(PartialMetric({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 5}})); }),
            ErrorCode::not_graph_metric);
  EXPECT_EQ(code_of([] { is_floppy(PartialMetric({"a", "b"}, {{"a", "b", 0}})); }), ErrorCode::not_graph_metric);
}

TEST(MinimalFloppyExtension, Examples) {
  auto e = minimal_floppy_extension(h_graph());
  EXPECT_EQ(e.metric, h_graph());
  EXPECT_EQ(e.iterations, 0u);

  e = minimal_floppy_extension(path_abc());
  EXPECT_EQ(e.metric, path_abc());

  e = minimal_floppy_extension(oracle::collinear_witness());
  EXPECT_EQ(e.iterations, 1u);
  ASSERT_EQ(e.added.size(), 1u);
  EXPECT_EQ(e.added[0], Doubleton("a", "c"));
  EXPECT_EQ(e.metric.weight(Doubleton("a", "c")), Rational(2));
  EXPECT_TRUE(e.metric.is_full());
}

// Property: the result contains the input, and no forced pair remains.
TEST(MinimalFloppyExtension, FixpointProperty) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    PartialMetric m = oracle::random_graph_metric(3 + seed % 5, seed);
    auto e = minimal_floppy_extension(m);
    for (const auto& [u, v, w] : m.labeled_edges()) ASSERT_EQ(e.metric.weight(Doubleton(u, v)), w);
    DistanceTables t(e.metric);
    for (auto [i, j] : e.metric.non_edges()) {
      ASSERT_FALSE(t.hat(i, j).sign() > 0 && t.check(i, j) == t.hat(i, j));
    }
    EXPECT_TRUE(validate(e.metric).graph_metric);
  }
}

}  // namespace
}  // namespace metricext
