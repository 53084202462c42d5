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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "metricext/distance.hpp"
#include "metricext/error.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/rational.hpp"

namespace metricext {

/// An edge whose weight exceeds the chain joining its endpoints.
struct PolygonalViolation {
  Doubleton edge;
  Rational weight;
  std::vector<VertexId> chain;
  Rational chain_weight;
};

struct ValidationReport {
  bool connected = false;
  bool graph_pseudometric = false;
  bool graph_metric = false;
  bool full = false;
  std::optional<PolygonalViolation> violation;
};

inline std::optional<PolygonalViolation> find_polygonal_violation(const DistanceTables& t) {
  const PartialMetric& m = t.metric();
  for (const Edge& e : m.edges()) {
    if (e.weight == t.hat(e.u, e.v)) continue;
    std::vector<VertexId> chain;
    for (std::size_t k : t.shortest_chain(e.u, e.v)) chain.push_back(m.label(k));
    return PolygonalViolation{m.pair(e.u, e.v), e.weight, std::move(chain), t.hat(e.u, e.v)};
  }
  return std::nullopt;
}

inline ValidationReport validate(const PartialMetric& m) {
  if (m.size() == 0) throw Error(ErrorCode::reject_malformed, "metric has no vertices");
  ValidationReport report;
  report.full = m.is_full();
  report.connected = is_connected(m);
  if (!report.connected) return report;
  DistanceTables tables(m);
  report.violation = find_polygonal_violation(tables);
  report.graph_pseudometric = !report.violation.has_value();
  bool positive = true;
  for (const Edge& e : m.edges()) positive = positive && e.weight.sign() > 0;
  report.graph_metric = report.graph_pseudometric && positive;
  return report;
}

/// Tables of `m` after checking that it is a graph metric (or, with
/// `allow_zero`, a graph pseudometric). Throws NOT_GRAPH_METRIC otherwise.
inline DistanceTables graph_metric_tables(const PartialMetric& m, bool allow_zero = false) {
  if (m.size() == 0) throw Error(ErrorCode::reject_malformed, "metric has no vertices");
  if (!is_connected(m)) throw Error(ErrorCode::not_graph_metric, "edge set is not connected");
  for (const Edge& e : m.edges()) {
    if (e.weight.sign() == 0 && !allow_zero) {
      throw Error(ErrorCode::not_graph_metric,
                  "zero weight on " + m.pair(e.u, e.v).str() + " (pseudometric only)");
    }
  }
  DistanceTables tables(m);
  if (auto bad = find_polygonal_violation(tables)) {
    throw Error(ErrorCode::not_graph_metric, "edge " + bad->edge.str() + " has weight " +
                                                 bad->weight.str() + " but a chain of weight " +
                                                 bad->chain_weight.str() + " joins it");
  }
  return tables;
}

struct PairGap {
  Doubleton pair;
  Rational gap;
};

struct FloppyReport {
  bool floppy = true;
  /// Non-edge minimizing hat - check (first in lexicographic order on ties);
  /// absent when the metric is full.
  std::optional<PairGap> worst_pair;
};

/// Floppiness of the metric behind `t`, without re-checking the graph-metric
/// property.
inline FloppyReport floppy_report(const DistanceTables& t) {
  const PartialMetric& m = t.metric();
  FloppyReport report;
  for (auto [i, j] : m.non_edges()) {
    Rational g = t.gap(i, j);
    if (!report.worst_pair || g < report.worst_pair->gap) {
      report.worst_pair = PairGap{m.pair(i, j), std::move(g)};
    }
  }
  report.floppy = !report.worst_pair || report.worst_pair->gap.sign() > 0;
  return report;
}

inline FloppyReport is_floppy(const PartialMetric& m) { return floppy_report(graph_metric_tables(m)); }

struct MinimalFloppyExtension {
  PartialMetric metric;
  /// Passes that added at least one forced pair.
  std::size_t iterations = 0;
  std::vector<Doubleton> added;
};

/// Adds every non-edge whose value is forced (check == hat > 0), repeating
/// until no pair is forced. Forced pairs take their hat value, so hat itself
/// never changes; only check can grow between passes.
inline MinimalFloppyExtension minimal_floppy_extension(const PartialMetric& m) {
  DistanceTables tables = graph_metric_tables(m);
  MinimalFloppyExtension out{m, 0, {}};
  const std::size_t cap = m.size() * m.size();
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> forced;
    for (auto [i, j] : out.metric.non_edges()) {
      const Rational& h = tables.hat(i, j);
      if (h.sign() > 0 && tables.check(i, j) == h) forced.emplace_back(i, j);
    }
    if (forced.empty()) return out;
    if (out.iterations == cap) {
      throw Error(ErrorCode::extension_diverged,
                  "no fixpoint after " + std::to_string(cap) + " passes");
    }
    for (auto [i, j] : forced) {
      tables = tables.extended(i, j, tables.hat(i, j));
      out.added.push_back(out.metric.pair(i, j));
    }
    out.metric = tables.metric();
    ++out.iterations;
  }
}

}  // namespace metricext
