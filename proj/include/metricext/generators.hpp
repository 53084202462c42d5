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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metricext/distance.hpp"
#include "metricext/error.hpp"
#include "metricext/metric_core.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/random.hpp"
#include "metricext/rational.hpp"

namespace metricext {

/// Deepest truncation accepted by cantor_tree.
inline constexpr std::size_t kMaxCantorDepth = 8;

inline Rational pow2_neg(std::size_t k) { return Rational(1, std::int64_t{1} << k); }

/// Binary strings of length <= depth labelled "s" + bits, with an edge
/// between every string and each of its proper extensions, weighted
/// 2^-|s| - 2^-|t|. With `verify`, asserts floppiness and
/// check(s, t) = |2^-|s| - 2^-|t|| on every pair.
inline PartialMetric cantor_tree(std::size_t depth, bool verify = true) {
  if (depth == 0) throw Error(ErrorCode::depth_zero, "depth 0 leaves a single vertex");
  if (depth > kMaxCantorDepth) {
    throw Error(ErrorCode::invalid_argument, "depth above " + std::to_string(kMaxCantorDepth));
  }
  std::vector<std::string> words{""};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() < depth) {
      words.push_back(words[i] + "0");
      words.push_back(words[i] + "1");
    }
  }
  std::vector<VertexId> vertices;
  std::vector<WeightedPair> edges;
  for (const auto& s : words) {
    vertices.emplace_back("s" + s);
    for (const auto& t : words) {
      if (t.size() > s.size() && t.compare(0, s.size(), s) == 0) {
        edges.push_back({"s" + s, "s" + t, pow2_neg(s.size()) - pow2_neg(t.size())});
      }
    }
  }
  PartialMetric m(std::move(vertices), edges);
  if (verify) {
    DistanceTables t = graph_metric_tables(m);
    if (!floppy_report(t).floppy) throw Error(ErrorCode::invariant_violated, "cantor tree is not floppy");
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const Rational expect = (pow2_neg(m.label(i).label().size() - 1) - pow2_neg(m.label(j).label().size() - 1)).abs();
        if (t.check(i, j) != expect) {
          throw Error(ErrorCode::invariant_violated, "check formula fails at " + m.pair(i, j).str());
        }
      }
    }
  }
  return m;
}

namespace detail {

inline std::vector<VertexId> numbered(std::size_t n) {
  const std::size_t width = std::to_string(n > 1 ? n - 1 : 0).size();
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    out.emplace_back("v" + std::string(width - digits.size(), '0') + digits);
  }
  return out;
}

inline void require_scale(const Rational& scale) {
  if (scale.sign() <= 0) throw Error(ErrorCode::invalid_argument, "scale must be positive");
}

}  // namespace detail

/// v0 - v1 - ... - v(n-1), every edge of weight `scale`.
inline PartialMetric path(std::size_t n, const Rational& scale = Rational(1)) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "path needs a vertex");
  detail::require_scale(scale);
  auto v = detail::numbered(n);
  std::vector<WeightedPair> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({v[i], v[i + 1], scale});
  return PartialMetric(std::move(v), edges);
}

inline PartialMetric cycle(std::size_t n, const Rational& scale = Rational(1)) {
  if (n < 3) throw Error(ErrorCode::invalid_argument, "cycle needs at least 3 vertices");
  detail::require_scale(scale);
  auto v = detail::numbered(n);
  std::vector<WeightedPair> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({v[i], v[(i + 1) % n], scale});
  return PartialMetric(std::move(v), edges);
}

/// Centre v0 joined to v1 .. v(n-1).
inline PartialMetric star(std::size_t n, const Rational& scale = Rational(1)) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "star needs a vertex");
  detail::require_scale(scale);
  auto v = detail::numbered(n);
  std::vector<WeightedPair> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({v[0], v[i], scale});
  return PartialMetric(std::move(v), edges);
}

inline PartialMetric complete(std::size_t n, const Rational& scale = Rational(1)) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "complete graph needs a vertex");
  detail::require_scale(scale);
  auto v = detail::numbered(n);
  std::vector<WeightedPair> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({v[i], v[j], scale});
  }
  return PartialMetric(std::move(v), edges);
}

inline constexpr int kRandomFloppyAttempts = 1000;

/// Distinct points of a small 3-D integer grid under the taxicab distance,
/// restricted to a random spanning tree plus random extra pairs up to
/// ceil(density * n(n-1)/2) edges. Redrawn until floppy.
inline PartialMetric random_floppy(std::size_t n, const Rational& density, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "random_floppy needs n >= 2");
  if (density.sign() <= 0 || Rational(1) < density) {
    throw Error(ErrorCode::invalid_argument, "density must lie in (0, 1]");
  }
  const std::size_t pairs = n * (n - 1) / 2;
  const auto wanted = (density * static_cast<std::int64_t>(pairs)).ceil();
  std::size_t target = n - 1;
  while (Rational(static_cast<std::int64_t>(target)) < wanted) ++target;
  const auto side = static_cast<std::int64_t>(2 * n + 2);
  auto labels = detail::numbered(n);
  Rng rng(seed);

  for (int attempt = 0; attempt < kRandomFloppyAttempts; ++attempt) {
    std::vector<std::array<std::int64_t, 3>> points;
    std::set<std::array<std::int64_t, 3>> seen;
    while (points.size() < n) {
      std::array<std::int64_t, 3> p{rng.between(0, side), rng.between(0, side), rng.between(0, side)};
      if (seen.insert(p).second) points.push_back(p);
    }
    auto dist = [&](std::size_t i, std::size_t j) {
      std::int64_t s = 0;
      for (int k = 0; k < 3; ++k) s += std::llabs(points[i][k] - points[j][k]);
      return Rational(s);
    };
    std::vector<char> chosen(n * n, 0);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::size_t count = 0;
    for (std::size_t k = 1; k < n; ++k) {
      std::size_t a = order[k];
      std::size_t b = order[rng.below(k)];
      chosen[std::min(a, b) * n + std::max(a, b)] = 1;
      ++count;
    }
    std::vector<std::pair<std::size_t, std::size_t>> rest;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!chosen[i * n + j]) rest.emplace_back(i, j);
      }
    }
    rng.shuffle(rest);
    for (std::size_t k = 0; count < target; ++k, ++count) chosen[rest[k].first * n + rest[k].second] = 1;

    std::vector<WeightedPair> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (chosen[i * n + j]) edges.push_back({labels[i], labels[j], dist(i, j)});
      }
    }
    PartialMetric m(labels, edges);
    if (floppy_report(graph_metric_tables(m)).floppy) return m;
  }
  throw Error(ErrorCode::generation_exhausted,
              "no floppy instance after " + std::to_string(kRandomFloppyAttempts) + " draws");
}

enum class GenKind { cantor, path, cycle, star, complete, random_floppy };

struct GenSpec {
  GenKind kind = GenKind::path;
  /// Depth for cantor, vertex count otherwise.
  std::size_t size = 1;
  Rational scale{1};
  Rational density{1, 2};
  std::uint64_t seed = 0;
};

inline PartialMetric generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::cantor: return cantor_tree(spec.size);
    case GenKind::path: return path(spec.size, spec.scale);
    case GenKind::cycle: return cycle(spec.size, spec.scale);
    case GenKind::star: return star(spec.size, spec.scale);
    case GenKind::complete: return complete(spec.size, spec.scale);
    case GenKind::random_floppy: return random_floppy(spec.size, spec.density, spec.seed);
  }
  throw Error(ErrorCode::invalid_argument, "unknown generator");
}

}  // namespace metricext
