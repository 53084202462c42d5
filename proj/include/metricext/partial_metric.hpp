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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metricext/error.hpp"
#include "metricext/rational.hpp"

namespace metricext {

/// Opaque vertex label.
class VertexId {
 public:
  VertexId() = default;
  VertexId(std::string label) : label_(std::move(label)) {}  // NOLINT
  VertexId(const char* label) : label_(label) {}             // NOLINT

  const std::string& label() const noexcept { return label_; }

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
  friend bool operator==(const VertexId&, const VertexId&) = default;

 private:
  std::string label_;
};

/// Unordered pair {a, b} with a != b, stored with a < b.
class Doubleton {
 public:
  Doubleton(VertexId a, VertexId b) {
    if (a == b) {
      throw Error(ErrorCode::invalid_argument,
                  "doubleton needs two distinct vertices, got '" + a.label() + "' twice");
    }
    if (b < a) std::swap(a, b);
    a_ = std::move(a);
    b_ = std::move(b);
  }

  const VertexId& a() const noexcept { return a_; }
  const VertexId& b() const noexcept { return b_; }

  std::string str() const { return a_.label() + "," + b_.label(); }

  friend auto operator<=>(const Doubleton&, const Doubleton&) = default;
  friend bool operator==(const Doubleton&, const Doubleton&) = default;

 private:
  VertexId a_;
  VertexId b_;
};

/// Index-level edge; `u < v` index into PartialMetric::labels().
struct Edge {
  std::size_t u;
  std::size_t v;
  Rational weight;
};

struct WeightedPair {
  VertexId u;
  VertexId v;
  Rational weight;
};

/// A weight function on an edge set over labeled vertices. Weights are
/// nonnegative; zero weights are representable so that pseudometrics can be
/// validated, but every extension operation demands strictly positive ones.
/// Connectivity is not enforced here; `validate` reports it.
class PartialMetric {
 public:
  /// Empty placeholder; every operation rejects it.
  PartialMetric() = default;

  PartialMetric(std::vector<VertexId> vertices, const std::vector<WeightedPair>& edges) {
    if (vertices.empty()) throw Error(ErrorCode::reject_malformed, "metric has no vertices");
    std::sort(vertices.begin(), vertices.end());
    if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end()) {
      throw Error(ErrorCode::reject_malformed, "duplicate vertex '" + dup->label() + "'");
    }
    labels_ = std::move(vertices);
    slot_.assign(labels_.size() * labels_.size(), -1);
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
      auto u = find(e.u);
      auto v = find(e.v);
      if (!u || !v) {
        const VertexId& missing = u ? e.v : e.u;
        throw Error(ErrorCode::reject_malformed,
                    "edge endpoint '" + missing.label() + "' is not a vertex");
      }
      if (*u == *v) {
        throw Error(ErrorCode::reject_malformed, "self-loop at '" + e.u.label() + "'");
      }
      if (e.weight.sign() < 0) {
        throw Error(ErrorCode::reject_malformed,
                    "negative weight on " + e.u.label() + "," + e.v.label());
      }
      auto [lo, hi] = std::minmax(*u, *v);
      if (slot(lo, hi) >= 0) {
        throw Error(ErrorCode::reject_malformed,
                    "duplicate edge " + e.u.label() + "," + e.v.label());
      }
      slot_[lo * size() + hi] = 0;
      edges_.push_back({lo, hi, e.weight});
    }
    reindex();
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t pair_count() const noexcept { return size() * (size() - 1) / 2; }
  bool is_full() const noexcept { return edges_.size() == pair_count(); }

  const std::vector<VertexId>& labels() const noexcept { return labels_; }
  const VertexId& label(std::size_t i) const { return labels_.at(i); }

  /// Edges sorted by (u, v).
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::optional<std::size_t> find(const VertexId& v) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
    if (it == labels_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t index_of(const VertexId& v) const {
    if (auto i = find(v)) return *i;
    throw Error(ErrorCode::unknown_vertex, "unknown vertex '" + v.label() + "'");
  }

  std::pair<std::size_t, std::size_t> index_of(const Doubleton& p) const {
    return {index_of(p.a()), index_of(p.b())};
  }

  bool contains(const VertexId& v) const { return find(v).has_value(); }

  bool has_edge(std::size_t i, std::size_t j) const { return i != j && slot(i, j) >= 0; }
  bool has_edge(const Doubleton& p) const {
    auto [i, j] = index_of(p);
    return has_edge(i, j);
  }

  /// Weight of edge ij, or nullptr if ij is not an edge.
  const Rational* weight(std::size_t i, std::size_t j) const {
    if (i == j) return nullptr;
    auto s = slot(i, j);
    return s < 0 ? nullptr : &edges_[static_cast<std::size_t>(s)].weight;
  }
  std::optional<Rational> weight(const Doubleton& p) const {
    auto [i, j] = index_of(p);
    if (const Rational* w = weight(i, j)) return *w;
    return std::nullopt;
  }

  Doubleton pair(std::size_t i, std::size_t j) const { return Doubleton(labels_.at(i), labels_.at(j)); }

  /// Missing pairs in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> non_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) {
        if (slot(i, j) < 0) out.emplace_back(i, j);
      }
    }
    return out;
  }

  /// Copy with ij added at weight `w`. ij must not already be an edge.
  PartialMetric with_edge(std::size_t i, std::size_t j, const Rational& w) const {
    if (i == j || i >= size() || j >= size()) {
      throw Error(ErrorCode::invalid_argument, "with_edge: bad vertex indices");
    }
    if (has_edge(i, j)) {
      throw Error(ErrorCode::already_edge, pair(i, j).str() + " is already an edge");
    }
    if (w.sign() < 0) throw Error(ErrorCode::invalid_argument, "negative weight");
    PartialMetric out = *this;
    auto [lo, hi] = std::minmax(i, j);
    auto pos = std::lower_bound(out.edges_.begin(), out.edges_.end(), std::pair{lo, hi},
                                [](const Edge& e, const std::pair<std::size_t, std::size_t>& k) {
                                  return std::pair{e.u, e.v} < k;
                                });
    out.edges_.insert(pos, Edge{lo, hi, w});
    out.reindex();
    return out;
  }

  /// Canonical (sorted) list of labeled edges.
  std::vector<WeightedPair> labeled_edges() const {
    std::vector<WeightedPair> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back({labels_[e.u], labels_[e.v], e.weight});
    return out;
  }

  friend bool operator==(const PartialMetric& a, const PartialMetric& b) {
    if (a.labels_ != b.labels_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t k = 0; k < a.edges_.size(); ++k) {
      const Edge& x = a.edges_[k];
      const Edge& y = b.edges_[k];
      if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
    }
    return true;
  }

  /// FNV-1a over the canonical edge list; identifies the source of derived tables.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    };
    for (const auto& l : labels_) mix(l.label());
    for (const auto& e : edges_) {
      mix(std::to_string(e.u) + ":" + std::to_string(e.v) + "=" + e.weight.str());
    }
    return h;
  }

 private:
  std::int32_t slot(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return slot_[i * size() + j];
  }

  void reindex() {
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair{a.u, a.v} < std::pair{b.u, b.v}; });
    std::fill(slot_.begin(), slot_.end(), -1);
    if (slot_.size() != size() * size()) slot_.assign(size() * size(), -1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      slot_[edges_[k].u * size() + edges_[k].v] = static_cast<std::int32_t>(k);
    }
  }

  std::vector<VertexId> labels_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> slot_;  // upper triangle: edge index or -1
};

}  // namespace metricext
