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

// Shortest-path pseudometric (hat), doubleton distance (ddot) and the lower
// envelope (check) of a connected partial metric.
//
//   hat(x, y)        = min weight of a chain of edges from x to y
//   ddot(xy, uv)     = min{hat(x,u) + hat(y,v), hat(x,v) + hat(y,u)}
//   check(x, y)      = max(0, max over edges ab of w(ab) - ddot(ab, xy))
//
// Only the hat table is stored; ddot is O(1) from it and check is one pass
// over the edge list.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <vector>

#include "metricext/error.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/rational.hpp"

namespace metricext {

enum class ShortestPathMethod { automatic, floyd_warshall, dijkstra };

inline bool is_connected(const PartialMetric& m) {
  const std::size_t n = m.size();
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : m.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

namespace detail {

struct SingleSource {
  std::vector<Rational> dist;
  std::vector<char> reached;
  std::vector<std::size_t> parent;
};

inline SingleSource dijkstra(const PartialMetric& m, std::size_t source) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> adj(n);
  for (const Edge& e : m.edges()) {
    adj[e.u].emplace_back(e.v, &e.weight);
    adj[e.v].emplace_back(e.u, &e.weight);
  }
  SingleSource out{std::vector<Rational>(n), std::vector<char>(n, 0), std::vector<std::size_t>(n, n)};
  std::vector<char> done(n, 0);
  using Item = std::pair<Rational, std::size_t>;
  auto greater = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(greater)> heap(greater);
  out.reached[source] = 1;
  out.parent[source] = source;
  heap.emplace(Rational(0), source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (auto [v, w] : adj[u]) {
      Rational cand = d + *w;
      if (!out.reached[v] || cand < out.dist[v]) {
        out.reached[v] = 1;
        out.dist[v] = cand;
        out.parent[v] = u;
        heap.emplace(std::move(cand), v);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Cached shortest-path table for one partial metric. Immutable.
class DistanceTables {
 public:
  explicit DistanceTables(PartialMetric m, ShortestPathMethod method = ShortestPathMethod::automatic)
      : metric_(std::move(m)) {
    const std::size_t n = metric_.size();
    if (n == 0) throw Error(ErrorCode::reject_malformed, "metric has no vertices");
    if (method == ShortestPathMethod::automatic) {
      method = 4 * metric_.edge_count() < n * n ? ShortestPathMethod::dijkstra
                                                 : ShortestPathMethod::floyd_warshall;
    }
    hat_.assign(n * n, Rational());
    if (method == ShortestPathMethod::dijkstra) {
      for (std::size_t s = 0; s < n; ++s) {
        auto sp = detail::dijkstra(metric_, s);
        for (std::size_t t = 0; t < n; ++t) {
          if (!sp.reached[t]) throw disconnected(s, t);
          hat_[s * n + t] = std::move(sp.dist[t]);
        }
      }
    } else {
      floyd_warshall();
    }
  }

  const PartialMetric& metric() const noexcept { return metric_; }
  std::uint64_t source_fingerprint() const { return metric_.fingerprint(); }
  std::size_t size() const noexcept { return metric_.size(); }

  const Rational& hat(std::size_t i, std::size_t j) const { return hat_[i * size() + j]; }

  Rational ddot(std::size_t x, std::size_t y, std::size_t u, std::size_t v) const {
    return std::min(hat(x, u) + hat(y, v), hat(x, v) + hat(y, u));
  }

  Rational check(std::size_t x, std::size_t y) const {
    Rational best;
    for (const Edge& e : metric_.edges()) {
      Rational slack = e.weight - ddot(e.u, e.v, x, y);
      if (best < slack) best = std::move(slack);
    }
    return best;
  }

  Rational gap(std::size_t x, std::size_t y) const { return hat(x, y) - check(x, y); }

  /// check for every ordered pair, row-major; diagonal is 0.
  std::vector<Rational> check_matrix() const {
    const std::size_t n = size();
    std::vector<Rational> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        out[i * n + j] = check(i, j);
        out[j * n + i] = out[i * n + j];
      }
    }
    return out;
  }

  /// Tables for metric() plus edge ij of weight r, updated by relaxing every
  /// pair through the new edge (O(n^2)). ij must be a non-edge.
  DistanceTables extended(std::size_t i, std::size_t j, const Rational& r) const {
    DistanceTables out(*this, metric_.with_edge(i, j, r));
    const std::size_t n = size();
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        Rational via = std::min(hat(u, i) + hat(j, v), hat(u, j) + hat(i, v)) + r;
        if (via < out.hat_[u * n + v]) {
          out.hat_[u * n + v] = via;
          out.hat_[v * n + u] = std::move(via);
        }
      }
    }
    return out;
  }

  /// Vertices of a shortest chain from i to j (inclusive).
  std::vector<std::size_t> shortest_chain(std::size_t i, std::size_t j) const {
    auto sp = detail::dijkstra(metric_, i);
    std::vector<std::size_t> chain{j};
    while (chain.back() != i) chain.push_back(sp.parent[chain.back()]);
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

 private:
  DistanceTables(const DistanceTables& base, PartialMetric m)
      : metric_(std::move(m)), hat_(base.hat_) {}

  Error disconnected(std::size_t s, std::size_t t) const {
    return Error(ErrorCode::disconnected, "no chain joins '" + metric_.label(s).label() + "' and '" +
                                              metric_.label(t).label() + "'");
  }

  void floyd_warshall() {
    const std::size_t n = size();
    std::vector<char> finite(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) finite[i * n + i] = 1;
    for (const Edge& e : metric_.edges()) {
      hat_[e.u * n + e.v] = e.weight;
      hat_[e.v * n + e.u] = e.weight;
      finite[e.u * n + e.v] = finite[e.v * n + e.u] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!finite[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!finite[k * n + j]) continue;
          Rational via = hat_[i * n + k] + hat_[k * n + j];
          if (!finite[i * n + j] || via < hat_[i * n + j]) {
            hat_[i * n + j] = std::move(via);
            finite[i * n + j] = 1;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!finite[i * n + j]) throw disconnected(i, j);
      }
    }
  }

  PartialMetric metric_;
  std::vector<Rational> hat_;
};

inline Rational hat(const PartialMetric& m, const VertexId& x, const VertexId& y) {
  auto i = m.index_of(x);
  auto j = m.index_of(y);
  return DistanceTables(m).hat(i, j);
}

inline Rational ddot(const PartialMetric& m, const Doubleton& p, const Doubleton& q) {
  auto [x, y] = m.index_of(p);
  auto [u, v] = m.index_of(q);
  return DistanceTables(m).ddot(x, y, u, v);
}

inline Rational check(const PartialMetric& m, const VertexId& x, const VertexId& y) {
  auto i = m.index_of(x);
  auto j = m.index_of(y);
  return DistanceTables(m).check(i, j);
}

}  // namespace metricext
