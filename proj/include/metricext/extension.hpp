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

// One-step and full extensions of floppy graph metrics.
//
// For a floppy graph metric d and a non-edge xy, every r in
//
//     [ check(x,y)/3 + 2*hat(x,y)/3 , hat(x,y) )
//
// yields a floppy graph metric d + {xy: r}. Repeating this over every missing
// pair produces a full metric. The wider range check(x,y) <= r <= hat(x,y)
// still yields a graph pseudometric ("proposition" mode) and is the range
// over which the five one-step inequalities in verify_pstep are checked.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metricext/choice_set.hpp"
#include "metricext/distance.hpp"
#include "metricext/error.hpp"
#include "metricext/metric_core.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/random.hpp"
#include "metricext/rational.hpp"

namespace metricext {

/// [lo, hi): lo = check/3 + 2*hat/3, hi = hat.
struct AdmissibleInterval {
  Rational lo;
  Rational hi;
  bool closed_lo = true;
  bool open_hi = true;

  static AdmissibleInterval from(const Rational& check, const Rational& hat) {
    return {check * Rational(1, 3) + hat * Rational(2, 3), hat};
  }

  bool nonempty() const { return lo < hi; }
  bool contains(const Rational& r) const { return lo <= r && r < hi; }
  Rational midpoint() const { return metricext::midpoint(lo, hi); }

  friend bool operator==(const AdmissibleInterval&, const AdmissibleInterval&) = default;
};

enum class StepMode { theorem, proposition };

namespace detail {

inline std::pair<std::size_t, std::size_t> require_non_edge(const PartialMetric& m, const Doubleton& xy) {
  auto [i, j] = m.index_of(xy);
  if (m.has_edge(i, j)) throw Error(ErrorCode::already_edge, xy.str() + " is already an edge");
  return {i, j};
}

inline void require_floppy(const DistanceTables& t) {
  FloppyReport report = floppy_report(t);
  if (!report.floppy) {
    throw Error(ErrorCode::not_floppy, "pair " + report.worst_pair->pair.str() + " has gap " +
                                           report.worst_pair->gap.str());
  }
}

}  // namespace detail

inline AdmissibleInterval admissible_interval(const PartialMetric& m, const Doubleton& xy) {
  auto [i, j] = detail::require_non_edge(m, xy);
  DistanceTables tables = graph_metric_tables(m);
  detail::require_floppy(tables);
  return AdmissibleInterval::from(tables.check(i, j), tables.hat(i, j));
}

/// Returns m + {xy: r}. Theorem mode needs a floppy graph metric and r in the
/// admissible interval, and guarantees a floppy graph metric. Proposition
/// mode needs a graph pseudometric and check <= r <= hat, and guarantees a
/// graph pseudometric.
inline PartialMetric one_step_extend(const PartialMetric& m, const Doubleton& xy, const Rational& r,
                                     StepMode mode = StepMode::theorem) {
  auto [i, j] = detail::require_non_edge(m, xy);
  const bool theorem = mode == StepMode::theorem;
  DistanceTables tables = graph_metric_tables(m, /*allow_zero=*/!theorem);
  if (theorem) detail::require_floppy(tables);
  const Rational c = tables.check(i, j);
  const Rational& h = tables.hat(i, j);
  const Rational lo = theorem ? AdmissibleInterval::from(c, h).lo : c;
  if (r < lo) {
    throw Error(ErrorCode::r_out_of_range, "r = " + r.str() + " is below the lower bound " + lo.str(),
                "lo");
  }
  if (theorem ? !(r < h) : h < r) {
    throw Error(ErrorCode::r_out_of_range,
                "r = " + r.str() + (theorem ? " is not below " : " exceeds ") + h.str(), "hi");
  }
  PartialMetric out = m.with_edge(i, j, r);
  if (theorem) {
    if (!is_floppy(out).floppy) {
      throw Error(ErrorCode::invariant_violated, "extension by " + xy.str() + " lost floppiness");
    }
  } else if (!validate(out).graph_pseudometric) {
    throw Error(ErrorCode::invariant_violated, "extension by " + xy.str() + " broke a polygonal inequality");
  }
  return out;
}

// ---------------------------------------------------------------------------
// The five one-step inequalities, evaluated pair by pair.

enum class StatementResult { pass, fail, vacuous };

struct PairStatements {
  Doubleton pair;
  std::array<StatementResult, 5> results;
};

struct PropertyReport {
  bool extension_is_graph_pseudometric = false;
  std::vector<PairStatements> pairs;

  std::array<std::size_t, 5> failures() const {
    std::array<std::size_t, 5> out{};
    for (const auto& p : pairs) {
      for (std::size_t k = 0; k < 5; ++k) out[k] += p.results[k] == StatementResult::fail;
    }
    return out;
  }
  std::array<std::size_t, 5> applicable() const {
    std::array<std::size_t, 5> out{};
    for (const auto& p : pairs) {
      for (std::size_t k = 0; k < 5; ++k) out[k] += p.results[k] != StatementResult::vacuous;
    }
    return out;
  }
  bool all_pass() const {
    if (!extension_is_graph_pseudometric) return false;
    for (std::size_t f : failures()) {
      if (f != 0) return false;
    }
    return true;
  }
};

/// Evaluates the statements for D = d + {ij: r} over every pair u < v.
/// `base_check` is base.check_matrix(); callers checking many r for the same
/// base pass it in once. Preconditions are not re-checked here.
inline PropertyReport verify_pstep(const DistanceTables& base, const std::vector<Rational>& base_check,
                                   std::size_t i, std::size_t j, const Rational& r) {
  const std::size_t n = base.size();
  const DistanceTables ext = base.extended(i, j, r);
  PropertyReport report;
  report.extension_is_graph_pseudometric = true;
  for (const Edge& e : ext.metric().edges()) {
    if (e.weight != ext.hat(e.u, e.v)) report.extension_is_graph_pseudometric = false;
  }
  auto verdict = [](bool ok) { return ok ? StatementResult::pass : StatementResult::fail; };
  const Rational& hat_xy = base.hat(i, j);
  const Rational& check_xy = base_check[i * n + j];
  const Rational lower_third = check_xy * Rational(1, 3) + hat_xy * Rational(2, 3);
  const bool strong_range = lower_third <= r && r <= hat_xy;
  const Rational spare = hat_xy - r;
  report.pairs.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const Rational& hat_uv = base.hat(u, v);
      const Rational& check_uv = base_check[u * n + v];
      const Rational& hat_ext = ext.hat(u, v);
      const Rational check_ext = ext.check(u, v);
      const Rational dd = base.ddot(i, j, u, v);
      const Rational r_minus_dd = r - dd;

      std::array<StatementResult, 5> res{};
      res[0] = verdict(hat_ext <= hat_uv && std::max(check_uv, r_minus_dd) <= check_ext);
      const bool hat_moved = hat_uv != hat_ext;
      res[1] = hat_moved ? verdict(hat_uv - spare <= hat_ext && hat_ext == r + dd) : StatementResult::vacuous;
      res[2] = hat_moved ? verdict(hat_ext - check_uv >= r - check_xy) : StatementResult::vacuous;
      const bool guard4 = check_uv != check_ext && check_ext != r_minus_dd && check_ext > hat_xy - r - r;
      res[3] = guard4 ? verdict(check_ext - check_uv <= spare && hat_uv - check_ext >= r - check_xy)
                      : StatementResult::vacuous;
      res[4] = strong_range
                   ? verdict(hat_ext - check_ext >= std::min({hat_uv - check_uv, spare, dd + dd}))
                   : StatementResult::vacuous;
      report.pairs.push_back({base.metric().pair(u, v), res});
    }
  }
  return report;
}

inline PropertyReport verify_pstep(const PartialMetric& m, const Doubleton& xy, const Rational& r) {
  auto [i, j] = detail::require_non_edge(m, xy);
  DistanceTables tables = graph_metric_tables(m, /*allow_zero=*/true);
  const Rational c = tables.check(i, j);
  if (r < c) throw Error(ErrorCode::r_out_of_range, "r = " + r.str() + " is below check = " + c.str(), "lo");
  if (tables.hat(i, j) < r) {
    throw Error(ErrorCode::r_out_of_range, "r = " + r.str() + " exceeds hat = " + tables.hat(i, j).str(), "hi");
  }
  return verify_pstep(tables, tables.check_matrix(), i, j, r);
}

// ---------------------------------------------------------------------------
// Full extension.

enum class OrderKind { lexicographic, max_gap, random };

struct OrderPolicy {
  OrderKind kind = OrderKind::lexicographic;
  std::uint64_t seed = 0;

  static OrderPolicy lexicographic() { return {}; }
  static OrderPolicy max_gap() { return {OrderKind::max_gap, 0}; }
  static OrderPolicy random(std::uint64_t seed) { return {OrderKind::random, seed}; }
};

/// Midpoint of the admissible interval, or a value drawn from a per-pair
/// choice set. Values drawn from choice sets are pairwise distinct.
struct ChoicePolicy {
  std::optional<std::map<Doubleton, ChoiceSet>> sets;

  static ChoicePolicy midpoint() { return {}; }
  static ChoicePolicy from_sets(std::map<Doubleton, ChoiceSet> s) { return {std::move(s)}; }
};

struct ExtendOptions {
  /// Re-check floppiness after every step.
  bool verify_steps = true;
  /// Recompute all shortest paths from scratch after each step instead of
  /// relaxing through the new edge.
  bool exhaustive_recompute = false;
};

struct ExtensionStep {
  Doubleton pair;
  AdmissibleInterval interval;
  Rational chosen;
};

struct ExtensionTrace {
  std::vector<ExtensionStep> steps;
  PartialMetric result;
};

namespace detail {

/// A member of `set` inside [lo, hi) and outside `used`.
inline std::optional<Rational> pick_from(const ChoiceSet& set, const AdmissibleInterval& iv,
                                         const std::set<Rational>& used) {
  for (const auto& p : set.points()) {
    if (iv.contains(p) && !used.contains(p)) return p;
  }
  for (const auto& piece : set.intervals()) {
    Rational from = std::max(piece.lo, iv.lo);
    Rational to = piece.hi ? std::min(*piece.hi, iv.hi) : iv.hi;
    if (!(from < to)) continue;
    Rational candidate = metricext::midpoint(from, to);
    while (used.contains(candidate)) candidate = metricext::midpoint(candidate, to);
    return candidate;
  }
  return std::nullopt;
}

}  // namespace detail

inline ExtensionTrace full_extend(const PartialMetric& m, OrderPolicy order = {}, const ChoicePolicy& choice = {},
                                  ExtendOptions options = {}) {
  DistanceTables tables = graph_metric_tables(m);
  detail::require_floppy(tables);

  std::vector<std::pair<std::size_t, std::size_t>> pending = m.non_edges();
  if (choice.sets) {
    for (auto [i, j] : pending) {
      if (!choice.sets->contains(m.pair(i, j))) {
        throw Error(ErrorCode::missing_choice_set, "no choice set for " + m.pair(i, j).str());
      }
    }
  }
  if (order.kind == OrderKind::random) {
    Rng rng(order.seed);
    rng.shuffle(pending);
  }

  ExtensionTrace trace;
  std::set<Rational> used;
  std::size_t cursor = 0;
  while (cursor < pending.size()) {
    if (order.kind == OrderKind::max_gap) {
      std::size_t best = cursor;
      Rational best_gap = tables.gap(pending[cursor].first, pending[cursor].second);
      for (std::size_t k = cursor + 1; k < pending.size(); ++k) {
        Rational g = tables.gap(pending[k].first, pending[k].second);
        if (best_gap < g) {
          best = k;
          best_gap = std::move(g);
        }
      }
      // Keep the remaining pairs in lexicographic order.
      std::rotate(pending.begin() + static_cast<std::ptrdiff_t>(cursor),
                  pending.begin() + static_cast<std::ptrdiff_t>(best),
                  pending.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    }
    auto [i, j] = pending[cursor++];
    const Doubleton pair = m.pair(i, j);
    const AdmissibleInterval iv = AdmissibleInterval::from(tables.check(i, j), tables.hat(i, j));
    if (!iv.nonempty()) {
      throw Error(ErrorCode::invariant_violated, "empty admissible interval at " + pair.str());
    }
    Rational chosen;
    if (choice.sets) {
      auto picked = detail::pick_from(choice.sets->at(pair), iv, used);
      if (!picked) {
        throw Error(ErrorCode::choice_set_misses_interval,
                    "choice set for " + pair.str() + " has no unused value in [" + iv.lo.str() + ", " +
                        iv.hi.str() + ")",
                    pair.str());
      }
      chosen = std::move(*picked);
      used.insert(chosen);
    } else {
      chosen = iv.midpoint();
    }
    tables = options.exhaustive_recompute ? DistanceTables(tables.metric().with_edge(i, j, chosen))
                                          : tables.extended(i, j, chosen);
    if (options.verify_steps && !floppy_report(tables).floppy) {
      throw Error(ErrorCode::invariant_violated, "extension by " + pair.str() + " lost floppiness");
    }
    trace.steps.push_back({pair, iv, std::move(chosen)});
  }
  trace.result = tables.metric();
  if (!trace.result.is_full()) throw Error(ErrorCode::invariant_violated, "extension is not full");
  return trace;
}

}  // namespace metricext
