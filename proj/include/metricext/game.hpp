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

// The metric-extending game of finite length.
//
// Each inning Player I names a pair and a choice set, and Player II answers
// with a member of that set. After the last inning the referee inspects the
// relation base + {pair: answer}; Player I wins iff it is a full metric.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metricext/choice_set.hpp"
#include "metricext/distance.hpp"
#include "metricext/error.hpp"
#include "metricext/extension.hpp"
#include "metricext/metric_core.hpp"
#include "metricext/partial_metric.hpp"
#include "metricext/random.hpp"
#include "metricext/rational.hpp"

namespace metricext {

struct Move {
  Doubleton pair;
  ChoiceSet offered;
  Rational answer;
  /// The pair was already an edge of the base.
  bool base_edge = false;
  /// The pair was named in an earlier inning.
  bool repeated = false;
};

enum class Verdict { player_i_wins, player_ii_wins };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::player_i_wins ? "PLAYER_I_WINS" : "PLAYER_II_WINS";
}

enum class WitnessKind {
  full_metric,
  missing_pair,
  multi_valued,
  polygonal,
  non_positive,
  illegal_move_i,
  illegal_move_ii,
};

inline std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::full_metric: return "FULL_METRIC";
    case WitnessKind::missing_pair: return "MISSING_PAIR";
    case WitnessKind::multi_valued: return "MULTI_VALUED";
    case WitnessKind::polygonal: return "POLYGONAL";
    case WitnessKind::non_positive: return "NON_POSITIVE";
    case WitnessKind::illegal_move_i: return "ILLEGAL_MOVE_I";
    case WitnessKind::illegal_move_ii: return "ILLEGAL_MOVE_II";
  }
  return "UNKNOWN";
}

struct Witness {
  WitnessKind kind = WitnessKind::full_metric;
  std::string message;
  std::optional<Doubleton> pair;
  std::optional<PolygonalViolation> polygonal;
  std::optional<ValidationReport> validation;
};

struct GameTranscript {
  PartialMetric base;
  std::size_t length = 0;
  std::vector<Move> moves;
  Verdict verdict = Verdict::player_ii_wins;
  Witness reason;
};

/// Player I's move. Endpoints are raw labels so that malformed pairs can be
/// ruled illegal instead of failing to construct.
struct Offer {
  VertexId u;
  VertexId v;
  ChoiceSet offered;
};

/// Read-only state handed to the strategies.
class GameView {
 public:
  GameView(const PartialMetric& base, const DistanceTables& base_tables, const std::vector<Move>& history,
           std::size_t length, const DistanceTables* current)
      : base_(base), base_tables_(base_tables), history_(history), length_(length), current_(current) {}

  const PartialMetric& base() const noexcept { return base_; }
  const DistanceTables& base_tables() const noexcept { return base_tables_; }
  const std::vector<Move>& history() const noexcept { return history_; }
  std::size_t inning() const noexcept { return history_.size(); }
  std::size_t length() const noexcept { return length_; }
  /// Tables of the accumulated relation; null once it stopped being a
  /// single-valued function.
  const DistanceTables* current() const noexcept { return current_; }

 private:
  const PartialMetric& base_;
  const DistanceTables& base_tables_;
  const std::vector<Move>& history_;
  std::size_t length_;
  const DistanceTables* current_;
};

class PlayerIStrategy {
 public:
  virtual ~PlayerIStrategy() = default;
  virtual Offer offer(const GameView& view) = 0;
};

class PlayerIIStrategy {
 public:
  virtual ~PlayerIIStrategy() = default;
  virtual Rational answer(const GameView& view, const Doubleton& pair, const ChoiceSet& offered) = 0;
};

namespace detail {

inline Witness referee(const PartialMetric& base, const std::vector<Move>& moves, Verdict& verdict) {
  verdict = Verdict::player_ii_wins;
  std::map<Doubleton, Rational> values;
  for (const auto& [u, v, w] : base.labeled_edges()) values.emplace(Doubleton(u, v), w);
  for (const Move& mv : moves) {
    auto [it, fresh] = values.emplace(mv.pair, mv.answer);
    if (!fresh && it->second != mv.answer) {
      return {WitnessKind::multi_valued,
              "pair " + mv.pair.str() + " holds both " + it->second.str() + " and " + mv.answer.str(),
              mv.pair, std::nullopt, std::nullopt};
    }
  }
  std::vector<WeightedPair> edges;
  for (const auto& [pair, w] : values) edges.push_back({pair.a(), pair.b(), w});
  PartialMetric relation(base.labels(), edges);
  ValidationReport report = validate(relation);
  if (!report.full) {
    auto missing = relation.non_edges().front();
    Doubleton pair = relation.pair(missing.first, missing.second);
    return {WitnessKind::missing_pair, "pair " + pair.str() + " never received a value", pair, std::nullopt,
            report};
  }
  if (!report.graph_pseudometric) {
    const PolygonalViolation& bad = *report.violation;
    std::string chain;
    for (const auto& v : bad.chain) chain += (chain.empty() ? "" : "-") + v.label();
    return {WitnessKind::polygonal,
            "edge " + bad.edge.str() + " = " + bad.weight.str() + " exceeds chain " + chain + " = " +
                bad.chain_weight.str(),
            bad.edge, bad, report};
  }
  if (!report.graph_metric) {
    for (const Edge& e : relation.edges()) {
      if (e.weight.sign() <= 0) {
        Doubleton pair = relation.pair(e.u, e.v);
        return {WitnessKind::non_positive, "pair " + pair.str() + " has value " + e.weight.str(), pair,
                std::nullopt, report};
      }
    }
  }
  verdict = Verdict::player_i_wins;
  return {WitnessKind::full_metric, "the relation is a full metric", std::nullopt, std::nullopt, report};
}

}  // namespace detail

/// Plays `length` innings and rules on the result. Illegal moves end the game
/// at once as a loss for the offending player.
inline GameTranscript play(const PartialMetric& base, std::size_t length, PlayerIStrategy& player_i,
                           PlayerIIStrategy& player_ii) {
  const DistanceTables base_tables = graph_metric_tables(base);
  GameTranscript t;
  t.base = base;
  t.length = length;
  std::optional<DistanceTables> current = base_tables;
  std::map<Doubleton, Rational> named;

  for (std::size_t inning = 0; inning < length; ++inning) {
    GameView view(base, base_tables, t.moves, length, current ? &*current : nullptr);
    Offer offer = player_i.offer(view);
    auto u = base.find(offer.u);
    auto v = base.find(offer.v);
    std::string illegal;
    if (!u || !v) {
      illegal = "pair {" + offer.u.label() + "," + offer.v.label() + "} names an unknown vertex";
    } else if (*u == *v) {
      illegal = "pair {" + offer.u.label() + "," + offer.v.label() + "} is not a doubleton";
    } else if (offer.offered.empty()) {
      illegal = "empty choice set";
    }
    if (!illegal.empty()) {
      t.verdict = Verdict::player_ii_wins;
      t.reason = {WitnessKind::illegal_move_i, "inning " + std::to_string(inning) + ": " + illegal, std::nullopt,
                  std::nullopt, std::nullopt};
      return t;
    }
    const Doubleton pair(offer.u, offer.v);
    Rational answer = player_ii.answer(view, pair, offer.offered);
    Move mv{pair, std::move(offer.offered), std::move(answer), base.has_edge(*u, *v), named.contains(pair)};
    if (!mv.offered.contains(mv.answer)) {
      t.moves.push_back(std::move(mv));
      t.verdict = Verdict::player_i_wins;
      t.reason = {WitnessKind::illegal_move_ii,
                  "inning " + std::to_string(inning) + ": answer " + t.moves.back().answer.str() +
                      " is not in the offered set",
                  pair, std::nullopt, std::nullopt};
      return t;
    }
    if (current) {
      if (const Rational* w = current->metric().weight(*u, *v)) {
        if (*w != mv.answer) current.reset();
      } else {
        current = current->extended(*u, *v, mv.answer);
      }
    }
    named.emplace(pair, mv.answer);
    t.moves.push_back(std::move(mv));
  }
  t.reason = detail::referee(base, t.moves, t.verdict);
  return t;
}

// ---------------------------------------------------------------------------
// Player I.

namespace detail {

class PairwisePlayer1 : public PlayerIStrategy {
 public:
  explicit PairwisePlayer1(const PartialMetric& base) {
    for (auto [i, j] : base.non_edges()) missing_.push_back(base.pair(i, j));
  }

 protected:
  /// Once every missing pair has been named, repeat the first base pair with
  /// its current value. Such moves cannot change the relation.
  static Offer idle(const GameView& view) {
    const PartialMetric& m = view.current() ? view.current()->metric() : view.base();
    const Edge& e = m.edges().front();
    return {m.label(e.u), m.label(e.v), ChoiceSet::of_points({e.weight})};
  }

  std::vector<Doubleton> missing_;
};

class WinningPlayer1 final : public PairwisePlayer1 {
 public:
  explicit WinningPlayer1(const PartialMetric& base) : PairwisePlayer1(base) {
    detail::require_floppy(graph_metric_tables(base));
  }

  Offer offer(const GameView& view) override {
    if (view.inning() >= missing_.size()) return idle(view);
    const DistanceTables* t = view.current();
    if (!t) throw Error(ErrorCode::invariant_violated, "accumulated relation is no longer a function");
    const Doubleton& pair = missing_[view.inning()];
    auto [i, j] = t->metric().index_of(pair);
    AdmissibleInterval iv = AdmissibleInterval::from(t->check(i, j), t->hat(i, j));
    return {pair.a(), pair.b(), ChoiceSet::of_interval(iv.lo, iv.hi)};
  }
};

class FamilyPlayer1 final : public PairwisePlayer1 {
 public:
  FamilyPlayer1(const PartialMetric& base, std::map<Doubleton, ChoiceSet> family)
      : PairwisePlayer1(base), family_(std::move(family)) {
    for (const auto& p : missing_) {
      if (!family_.contains(p)) throw Error(ErrorCode::missing_choice_set, "no choice set for " + p.str());
    }
  }

  Offer offer(const GameView& view) override {
    if (view.inning() >= missing_.size()) return idle(view);
    const Doubleton& pair = missing_[view.inning()];
    return {pair.a(), pair.b(), family_.at(pair)};
  }

 private:
  std::map<Doubleton, ChoiceSet> family_;
};

}  // namespace detail

/// Names the missing pairs in lexicographic order and offers the open
/// interval (check/3 + 2*hat/3, hat) of the accumulated metric.
inline std::unique_ptr<PlayerIStrategy> winning_player1(const PartialMetric& base) {
  return std::make_unique<detail::WinningPlayer1>(base);
}

/// Names the missing pairs in lexicographic order and offers F(pair).
inline std::unique_ptr<PlayerIStrategy> family_player1(const PartialMetric& base,
                                                       std::map<Doubleton, ChoiceSet> family) {
  return std::make_unique<detail::FamilyPlayer1>(base, std::move(family));
}

// ---------------------------------------------------------------------------
// Player II.

enum class SamplerMode { low, high, mid, random, mixed };

namespace detail {

/// Canonical members of a choice set used by the samplers.
inline Rational sample(const ChoiceSet& s, SamplerMode mode, Rng& rng) {
  static const Rational kEdge(1, 1024);
  if (mode == SamplerMode::mixed) mode = static_cast<SamplerMode>(rng.below(4));
  const auto& points = s.points();
  const auto& intervals = s.intervals();
  const std::size_t parts = points.size() + intervals.size();
  std::size_t pick = 0;
  switch (mode) {
    case SamplerMode::low: pick = 0; break;
    case SamplerMode::high: pick = parts - 1; break;
    case SamplerMode::mid: pick = parts / 2; break;
    default: pick = static_cast<std::size_t>(rng.below(parts)); break;
  }
  if (pick < points.size()) return *std::next(points.begin(), static_cast<std::ptrdiff_t>(pick));
  const OpenInterval& iv = intervals[pick - points.size()];
  const Rational width = iv.hi ? *iv.hi - iv.lo : Rational(2048);
  switch (mode) {
    case SamplerMode::low: return iv.lo + width * kEdge;
    case SamplerMode::high: return iv.lo + width * (Rational(1) - kEdge);
    case SamplerMode::mid: return iv.lo + width * Rational(1, 2);
    default: {
      // Simplest rational in a random cell of a 1024-cell grid keeps the
      // denominators small.
      const auto k = static_cast<std::int64_t>(rng.below(1024));
      return simplest_between(iv.lo + width * Rational(k, 1024), iv.lo + width * Rational(k + 1, 1024));
    }
  }
}

class LeastPlayer2 final : public PlayerIIStrategy {
 public:
  Rational answer(const GameView&, const Doubleton&, const ChoiceSet& offered) override { return offered.least(); }
};

class SamplerPlayer2 final : public PlayerIIStrategy {
 public:
  SamplerPlayer2(SamplerMode mode, std::uint64_t seed) : mode_(mode), rng_(seed) {}
  Rational answer(const GameView&, const Doubleton&, const ChoiceSet& offered) override {
    return sample(offered, mode_, rng_);
  }

 private:
  SamplerMode mode_;
  Rng rng_;
};

class AdversaryPlayer2 final : public PlayerIIStrategy {
 public:
  Rational answer(const GameView& view, const Doubleton& pair, const ChoiceSet& offered) override {
    const DistanceTables& t = view.base_tables();
    const PartialMetric& m = view.base();
    auto [x, y] = m.index_of(pair);
    for (const Move& earlier : view.history()) {
      if (earlier.pair == pair) continue;
      auto [u, v] = m.index_of(earlier.pair);
      if (auto far = offered.far_from(earlier.answer, t.ddot(x, y, u, v))) return *far;
    }
    return offered.least();
  }
};

}  // namespace detail

inline std::unique_ptr<PlayerIIStrategy> least_player2() { return std::make_unique<detail::LeastPlayer2>(); }

inline std::unique_ptr<PlayerIIStrategy> sampler_player2(SamplerMode mode, std::uint64_t seed = 0) {
  return std::make_unique<detail::SamplerPlayer2>(mode, seed);
}

inline std::unique_ptr<PlayerIIStrategy> random_player2(std::uint64_t seed) {
  return sampler_player2(SamplerMode::random, seed);
}

/// Answers the least element until some offered value lies farther than
/// ddot(current pair, p') from the answer given at an earlier pair p', then
/// answers that value. Distances are taken in the base metric, which bounds
/// those of every extension from above.
inline std::unique_ptr<PlayerIIStrategy> adversary_player2() {
  return std::make_unique<detail::AdversaryPlayer2>();
}

// ---------------------------------------------------------------------------
// Sabotage.

/// Values for two missing pairs p, q whose difference exceeds ddot(p, q), so
/// no metric extension can take both.
struct SabotagePlan {
  Doubleton p;
  Doubleton q;
  Rational r_q;
  Rational r_p;
};

/// First (p, q) in lexicographic order with 3*ddot(p,q) < diam(F_p).
inline std::optional<SabotagePlan> sabotage_witness(const PartialMetric& base,
                                                    const std::map<Doubleton, ChoiceSet>& family) {
  const DistanceTables t = graph_metric_tables(base);
  const auto missing = base.non_edges();
  for (auto [i, j] : missing) {
    if (!family.contains(base.pair(i, j))) {
      throw Error(ErrorCode::missing_choice_set, "no choice set for " + base.pair(i, j).str());
    }
  }
  for (auto [pi, pj] : missing) {
    const Doubleton p = base.pair(pi, pj);
    const ChoiceSet& fp = family.at(p);
    const Extended diam = fp.diameter();
    for (auto [qi, qj] : missing) {
      if (qi == pi && qj == pj) continue;
      const Rational dd = t.ddot(pi, pj, qi, qj);
      if (!diam.exceeds(dd * 3)) continue;
      const Doubleton q = base.pair(qi, qj);
      Rational r_q = family.at(q).least();
      auto r_p = fp.far_from(r_q, dd);
      if (!r_p) throw Error(ErrorCode::invariant_violated, "no far value in F(" + p.str() + ")");
      return SabotagePlan{p, q, std::move(r_q), std::move(*r_p)};
    }
  }
  return std::nullopt;
}

namespace detail {

class PlanPlayer2 final : public PlayerIIStrategy {
 public:
  explicit PlanPlayer2(SabotagePlan plan) : plan_(std::move(plan)) {}
  Rational answer(const GameView&, const Doubleton& pair, const ChoiceSet& offered) override {
    if (pair == plan_.p && offered.contains(plan_.r_p)) return plan_.r_p;
    if (pair == plan_.q && offered.contains(plan_.r_q)) return plan_.r_q;
    return offered.least();
  }

 private:
  SabotagePlan plan_;
};

}  // namespace detail

/// Answers r_p at p and r_q at q, the least element elsewhere.
inline std::unique_ptr<PlayerIIStrategy> plan_player2(SabotagePlan plan) {
  return std::make_unique<detail::PlanPlayer2>(std::move(plan));
}

}  // namespace metricext
