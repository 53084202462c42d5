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

// Patchworks: a full base pseudometric p with pieces f glued along gateway
// sets G_f = V_f n V_p. With the gluing conditions in place, shortest paths
// of the union are
//
//   hat(x, y) = hat_h(x, y)                                  x, y in V_h
//   hat(x, y) = min over a in G_f, b in G_g of
//               hat_f(x, a) + p(a, b) + hat_g(b, y)          x in V_f, y in V_g
//
// where h, f, g range over {p} and the pieces, and G_p = V_p.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metricext/distance.hpp"
#include "metricext/error.hpp"
#include "metricext/metric_core.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/rational.hpp"

namespace metricext {

struct Patchwork {
  PartialMetric base;
  std::vector<PartialMetric> pieces;
};

/// Gateways V_f n V_p of each piece, sorted.
struct GateSet {
  std::vector<std::vector<VertexId>> gateways;
};

inline GateSet gate_set(const Patchwork& pw) {
  GateSet out;
  for (const auto& f : pw.pieces) {
    std::vector<VertexId> g;
    for (const auto& v : f.labels()) {
      if (pw.base.contains(v)) g.push_back(v);
    }
    out.gateways.push_back(std::move(g));
  }
  return out;
}

enum class PatchworkCondition {
  base_full_pseudometric,
  piece_graph_pseudometric,
  gateway_nonempty,
  gateway_agreement,
  overlap_in_base,
};

inline std::string_view to_string(PatchworkCondition c) {
  switch (c) {
    case PatchworkCondition::base_full_pseudometric: return "BASE_FULL_PSEUDOMETRIC";
    case PatchworkCondition::piece_graph_pseudometric: return "PIECE_GRAPH_PSEUDOMETRIC";
    case PatchworkCondition::gateway_nonempty: return "GATEWAY_NONEMPTY";
    case PatchworkCondition::gateway_agreement: return "GATEWAY_AGREEMENT";
    case PatchworkCondition::overlap_in_base: return "OVERLAP_IN_BASE";
  }
  return "UNKNOWN";
}

struct PatchworkIssue {
  PatchworkCondition condition;
  /// Offending piece; absent for base issues.
  std::optional<std::size_t> piece;
  std::optional<std::size_t> other_piece;
  std::string message;
};

struct PatchworkReport {
  std::vector<PatchworkIssue> issues;
  bool valid() const noexcept { return issues.empty(); }
};

inline PatchworkReport validate_patchwork(const Patchwork& pw) {
  PatchworkReport report;
  auto fail = [&](PatchworkCondition c, std::optional<std::size_t> f, std::optional<std::size_t> g,
                  std::string msg) { report.issues.push_back({c, f, g, std::move(msg)}); };

  ValidationReport base = validate(pw.base);
  const bool base_ok = base.full && base.graph_pseudometric;
  if (!base_ok) {
    fail(PatchworkCondition::base_full_pseudometric, std::nullopt, std::nullopt,
         !base.full ? "base is not full"
                    : "base edge " + base.violation->edge.str() + " exceeds its shortest chain");
  }
  std::vector<char> piece_ok(pw.pieces.size(), 0);
  for (std::size_t k = 0; k < pw.pieces.size(); ++k) {
    ValidationReport r = validate(pw.pieces[k]);
    piece_ok[k] = r.connected && r.graph_pseudometric;
    if (!r.connected) {
      fail(PatchworkCondition::piece_graph_pseudometric, k, std::nullopt, "piece is not connected");
    } else if (!r.graph_pseudometric) {
      fail(PatchworkCondition::piece_graph_pseudometric, k, std::nullopt,
           "edge " + r.violation->edge.str() + " exceeds its shortest chain");
    }
  }

  const GateSet gates = gate_set(pw);
  for (std::size_t k = 0; k < pw.pieces.size(); ++k) {
    const auto& g = gates.gateways[k];
    if (g.empty()) {
      fail(PatchworkCondition::gateway_nonempty, k, std::nullopt, "piece shares no vertex with the base");
      continue;
    }
    if (!piece_ok[k] || !base_ok || g.size() < 2) continue;
    DistanceTables fk(pw.pieces[k]);
    DistanceTables pt(pw.base);
    for (std::size_t s = 0; s < g.size(); ++s) {
      for (std::size_t t = s + 1; t < g.size(); ++t) {
        const Rational& in_piece = fk.hat(pw.pieces[k].index_of(g[s]), pw.pieces[k].index_of(g[t]));
        const Rational& in_base = pt.hat(pw.base.index_of(g[s]), pw.base.index_of(g[t]));
        if (in_piece != in_base) {
          fail(PatchworkCondition::gateway_agreement, k, std::nullopt,
               "gateway pair " + Doubleton(g[s], g[t]).str() + ": piece distance " + in_piece.str() +
                   " but base distance " + in_base.str());
        }
      }
    }
  }

  for (std::size_t k = 0; k < pw.pieces.size(); ++k) {
    for (std::size_t l = k + 1; l < pw.pieces.size(); ++l) {
      for (const auto& v : pw.pieces[k].labels()) {
        if (pw.pieces[l].contains(v) && !pw.base.contains(v)) {
          fail(PatchworkCondition::overlap_in_base, k, l, "vertex '" + v.label() + "' is shared outside the base");
        }
      }
    }
  }
  return report;
}

namespace detail {

inline void require_valid(const Patchwork& pw) {
  PatchworkReport r = validate_patchwork(pw);
  if (!r.valid()) {
    const auto& issue = r.issues.front();
    std::string where = issue.piece ? "piece " + std::to_string(*issue.piece) + ": " : "base: ";
    throw Error(ErrorCode::patchwork_invalid, where + issue.message, std::string(to_string(issue.condition)));
  }
}

inline PartialMetric glue_unchecked(const Patchwork& pw) {
  std::vector<VertexId> vertices = pw.base.labels();
  std::map<Doubleton, Rational> weights;
  auto absorb = [&](const PartialMetric& m) {
    vertices.insert(vertices.end(), m.labels().begin(), m.labels().end());
    for (const auto& [u, v, w] : m.labeled_edges()) {
      auto [it, fresh] = weights.emplace(Doubleton(u, v), w);
      if (!fresh && it->second != w) {
        throw Error(ErrorCode::invariant_violated, "pieces disagree on edge " + it->first.str());
      }
    }
  };
  absorb(pw.base);
  for (const auto& f : pw.pieces) absorb(f);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<WeightedPair> edges;
  for (const auto& [pair, w] : weights) edges.push_back({pair.a(), pair.b(), w});
  return PartialMetric(std::move(vertices), edges);
}

}  // namespace detail

/// d = p together with every piece. Throws PATCHWORK_INVALID when the
/// gluing conditions fail.
inline PartialMetric glue(const Patchwork& pw) {
  detail::require_valid(pw);
  PartialMetric d = detail::glue_unchecked(pw);
  ValidationReport r = validate(d);
  if (!r.connected || !r.graph_pseudometric) {
    throw Error(ErrorCode::invariant_violated, "glued relation is not a graph pseudometric");
  }
  return d;
}

/// Shortest-path distances of a glued patchwork by the gateway formula,
/// from per-piece tables only.
class GluedDistances {
 public:
  explicit GluedDistances(const Patchwork& pw) : pw_(pw), gates_(gate_set(pw)) {
    detail::require_valid(pw);
    glued_ = detail::glue_unchecked(pw);
    tables_.emplace_back(pw.base);
    for (const auto& f : pw.pieces) tables_.emplace_back(f);
  }

  const Patchwork& patchwork() const noexcept { return pw_; }
  const PartialMetric& glued() const noexcept { return glued_; }
  const GateSet& gates() const noexcept { return gates_; }

  Rational hat(const VertexId& x, const VertexId& y) const {
    const std::size_t hx = home(x);
    const std::size_t hy = home(y);
    if (x == y) return Rational();
    for (std::size_t k = 0; k < tables_.size(); ++k) {
      const PartialMetric& m = tables_[k].metric();
      auto i = m.find(x);
      auto j = m.find(y);
      if (i && j) return tables_[k].hat(*i, *j);
    }
    const std::vector<VertexId>& gx = gateways_of(hx);
    const std::vector<VertexId>& gy = gateways_of(hy);
    const DistanceTables& tx = tables_[hx];
    const DistanceTables& ty = tables_[hy];
    const DistanceTables& tp = tables_[0];
    const std::size_t ix = tx.metric().index_of(x);
    const std::size_t iy = ty.metric().index_of(y);
    std::optional<Rational> best;
    for (const auto& a : gx) {
      const Rational& xa = tx.hat(ix, tx.metric().index_of(a));
      const std::size_t pa = tp.metric().index_of(a);
      for (const auto& b : gy) {
        Rational via = xa + tp.hat(pa, tp.metric().index_of(b)) + ty.hat(ty.metric().index_of(b), iy);
        if (!best || via < *best) best = std::move(via);
      }
    }
    return *best;
  }

  /// min over a, b in B of hat(a, v) + hat(v, b) - hat(a, b).
  Rational lambda(const VertexId& v, const std::vector<VertexId>& b) const {
    if (b.empty()) throw Error(ErrorCode::empty_b, "gateway set is empty");
    home(v);
    std::vector<Rational> to_v;
    for (const auto& a : b) to_v.push_back(hat(a, v));
    std::optional<Rational> best;
    for (std::size_t s = 0; s < b.size(); ++s) {
      for (std::size_t t = s; t < b.size(); ++t) {
        Rational slack = to_v[s] + to_v[t] - hat(b[s], b[t]);
        if (!best || slack < *best) best = std::move(slack);
      }
    }
    return *best;
  }

  /// 0 for the base, k + 1 for piece k: the member holding v, preferring the
  /// base. Unique otherwise because pieces meet only inside the base.
  std::size_t home(const VertexId& v) const {
    if (pw_.base.contains(v)) return 0;
    for (std::size_t k = 0; k < pw_.pieces.size(); ++k) {
      if (pw_.pieces[k].contains(v)) return k + 1;
    }
    throw Error(ErrorCode::unknown_vertex, "unknown vertex '" + v.label() + "'");
  }

  const DistanceTables& member_tables(std::size_t member) const { return tables_.at(member); }

 private:
  const std::vector<VertexId>& gateways_of(std::size_t member) const {
    return member == 0 ? pw_.base.labels() : gates_.gateways[member - 1];
  }

  Patchwork pw_;
  GateSet gates_;
  PartialMetric glued_;
  std::vector<DistanceTables> tables_;
};

inline Rational glue_hat(const Patchwork& pw, const VertexId& x, const VertexId& y) {
  return GluedDistances(pw).hat(x, y);
}

inline Rational lambda(const Patchwork& pw, const VertexId& v, const std::vector<VertexId>& b) {
  if (b.empty()) throw Error(ErrorCode::empty_b, "gateway set is empty");
  GluedDistances g(pw);
  for (const auto& a : b) g.home(a);
  return g.lambda(v, b);
}

// ---------------------------------------------------------------------------
// Floppiness certificate.

enum class BoundKind {
  /// x in V_f \ V_p, y in V_p \ V_f: min{L(x; G_f), L(y; G_f) / 2}.
  base_cross,
  /// x in V_f \ V_p, y in V_g \ V_p: min{L(x; G_f), L(y; G_g)}.
  piece_cross,
  /// x, y in V_f: hat_f - check_f.
  same_piece,
};

inline std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::base_cross: return "BASE_CROSS";
    case BoundKind::piece_cross: return "PIECE_CROSS";
    case BoundKind::same_piece: return "SAME_PIECE";
  }
  return "UNKNOWN";
}

struct GapBound {
  Doubleton pair;
  BoundKind kind;
  Rational delta;
  /// hat - check on the glued metric.
  Rational gap;
  bool met() const { return delta <= gap; }
};

struct LambdaFailure {
  std::size_t piece;
  VertexId vertex;
  Rational value;
};

struct PieceFloppiness {
  bool floppy = false;
  std::optional<PairGap> worst_pair;
};

enum class Grade { metric, pseudometric };

struct CertReport {
  bool certified = false;
  bool base_full = false;
  std::vector<PieceFloppiness> pieces;
  std::vector<LambdaFailure> lambda_failures;
  /// Filled only when certified.
  std::optional<Grade> grade;
  bool glued_floppy = false;
  std::vector<GapBound> bounds;
};

/// Checks that the base is full, every piece is floppy, and L(x; G_f) > 0
/// for x in V_f \ V_p and L(y; G_f) > 0 for y in V_p \ V_f. When all hold,
/// the glued metric is floppy and each non-edge gap is at least its bound.
inline CertReport floppy_certificate(const Patchwork& pw) {
  GluedDistances gd(pw);
  CertReport cert;
  cert.base_full = pw.base.is_full();
  bool pieces_floppy = true;
  for (std::size_t k = 0; k < pw.pieces.size(); ++k) {
    FloppyReport r = floppy_report(gd.member_tables(k + 1));
    cert.pieces.push_back({r.floppy, r.worst_pair});
    pieces_floppy = pieces_floppy && r.floppy;
  }
  std::vector<std::map<VertexId, Rational>> lam(pw.pieces.size());
  for (std::size_t k = 0; k < pw.pieces.size(); ++k) {
    const auto& g = gd.gates().gateways[k];
    auto record = [&](const VertexId& v) {
      Rational value = gd.lambda(v, g);
      if (value.sign() <= 0) cert.lambda_failures.push_back({k, v, value});
      lam[k].emplace(v, std::move(value));
    };
    for (const auto& x : pw.pieces[k].labels()) {
      if (!pw.base.contains(x)) record(x);
    }
    for (const auto& y : pw.base.labels()) {
      if (!pw.pieces[k].contains(y)) record(y);
    }
  }
  cert.certified = cert.base_full && pieces_floppy && cert.lambda_failures.empty();
  if (!cert.certified) return cert;

  const PartialMetric& d = gd.glued();
  const DistanceTables dt = graph_metric_tables(d, /*allow_zero=*/true);
  bool positive = true;
  for (const Edge& e : d.edges()) positive = positive && e.weight.sign() > 0;
  cert.grade = positive ? Grade::metric : Grade::pseudometric;
  cert.glued_floppy = floppy_report(dt).floppy;

  for (auto [i, j] : d.non_edges()) {
    const VertexId& x = d.label(i);
    const VertexId& y = d.label(j);
    const std::size_t hx = gd.home(x);
    const std::size_t hy = gd.home(y);
    GapBound b{d.pair(i, j), BoundKind::same_piece, Rational(), dt.gap(i, j)};
    std::optional<std::size_t> shared;
    for (std::size_t k = 0; k < pw.pieces.size() && !shared; ++k) {
      if (pw.pieces[k].contains(x) && pw.pieces[k].contains(y)) shared = k;
    }
    if (shared) {
      const DistanceTables& t = gd.member_tables(*shared + 1);
      b.delta = t.gap(t.metric().index_of(x), t.metric().index_of(y));
    } else if (hx != 0 && hy != 0) {
      b.kind = BoundKind::piece_cross;
      b.delta = std::min(lam[hx - 1].at(x), lam[hy - 1].at(y));
    } else {
      // One endpoint lies in the base only.
      const bool x_outside = hx != 0;
      const VertexId& out = x_outside ? x : y;
      const VertexId& in = x_outside ? y : x;
      const std::size_t f = (x_outside ? hx : hy) - 1;
      b.kind = BoundKind::base_cross;
      b.delta = std::min(lam[f].at(out), lam[f].at(in) * Rational(1, 2));
    }
    cert.bounds.push_back(std::move(b));
  }
  if (!cert.glued_floppy) throw Error(ErrorCode::invariant_violated, "certified patchwork glued to a non-floppy metric");
  for (const auto& b : cert.bounds) {
    if (!b.met()) {
      throw Error(ErrorCode::invariant_violated,
                  "gap " + b.gap.str() + " at " + b.pair.str() + " is below the bound " + b.delta.str());
    }
  }
  return cert;
}

}  // namespace metricext
