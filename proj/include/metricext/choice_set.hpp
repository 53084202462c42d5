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
#include <optional>
#include <set>
#include <vector>

#include "metricext/error.hpp"
#include "metricext/rational.hpp"

namespace metricext {

/// Open interval (lo, hi); `hi` absent means unbounded above.
struct OpenInterval {
  Rational lo;
  std::optional<Rational> hi;

  bool contains(const Rational& x) const { return lo < x && (!hi || x < *hi); }
  bool bounded() const { return hi.has_value(); }

  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// A nonnegative rational or +infinity.
class Extended {
 public:
  Extended(Rational value) : value_(std::move(value)) {}  // NOLINT
  static Extended infinity() {
    Extended e{Rational()};
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const {
    if (infinite_) throw Error(ErrorCode::invalid_argument, "infinite value has no rational form");
    return value_;
  }
  bool exceeds(const Rational& x) const { return infinite_ || x < value_; }
  std::string str() const { return infinite_ ? "inf" : value_.str(); }

 private:
  Rational value_;
  bool infinite_ = false;
};

/// Finite union of positive points and open intervals inside [0, inf).
class ChoiceSet {
 public:
  ChoiceSet() = default;

  static ChoiceSet of_points(std::initializer_list<Rational> points) {
    ChoiceSet s;
    for (const auto& p : points) s.add_point(p);
    return s;
  }
  static ChoiceSet of_interval(Rational lo, std::optional<Rational> hi) {
    ChoiceSet s;
    s.add_interval(std::move(lo), std::move(hi));
    return s;
  }

  ChoiceSet& add_point(Rational p) {
    if (p.sign() <= 0) throw Error(ErrorCode::invalid_argument, "choice point " + p.str() + " is not positive");
    points_.insert(std::move(p));
    return *this;
  }

  ChoiceSet& add_interval(Rational lo, std::optional<Rational> hi) {
    if (lo.sign() < 0) throw Error(ErrorCode::invalid_argument, "interval starts below zero");
    if (hi && !(lo < *hi)) {
      throw Error(ErrorCode::invalid_argument, "interval (" + lo.str() + ", " + hi->str() + ") is empty");
    }
    OpenInterval iv{std::move(lo), std::move(hi)};
    auto pos = std::upper_bound(intervals_.begin(), intervals_.end(), iv,
                                [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
    intervals_.insert(pos, std::move(iv));
    return *this;
  }

  const std::set<Rational>& points() const noexcept { return points_; }
  /// Sorted by lower endpoint.
  const std::vector<OpenInterval>& intervals() const noexcept { return intervals_; }

  bool empty() const noexcept { return points_.empty() && intervals_.empty(); }
  bool nondegenerate() const noexcept { return !intervals_.empty() || points_.size() >= 2; }

  bool contains(const Rational& x) const {
    if (points_.contains(x)) return true;
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [&](const OpenInterval& iv) { return iv.contains(x); });
  }

  /// sup |x - y| over the set, i.e. sup - inf.
  Extended diameter() const {
    if (empty()) return Rational();
    std::optional<Rational> lo, hi;
    auto widen = [&](const Rational& a, const Rational& b) {
      if (!lo || a < *lo) lo = a;
      if (!hi || *hi < b) hi = b;
    };
    for (const auto& p : points_) widen(p, p);
    for (const auto& iv : intervals_) {
      if (!iv.hi) return Extended::infinity();
      widen(iv.lo, *iv.hi);
    }
    return *hi - *lo;
  }

  /// First element in canonical order: the smallest point, otherwise
  /// lo + (hi - lo)/4 of the first interval (lo + 1 when unbounded).
  Rational least() const {
    if (!points_.empty()) return *points_.begin();
    if (intervals_.empty()) throw Error(ErrorCode::invalid_argument, "empty choice set");
    return interior(intervals_.front());
  }

  /// Some element x with |x - s| > delta, in canonical order; none if the set
  /// lies inside [s - delta, s + delta].
  std::optional<Rational> far_from(const Rational& s, const Rational& delta) const {
    for (const auto& p : points_) {
      if (delta < (p - s).abs()) return p;
    }
    const Rational above = s + delta;
    const Rational below = s - delta;
    for (const auto& iv : intervals_) {
      if (!iv.hi || above < *iv.hi) {
        Rational from = std::max(iv.lo, above);
        return iv.hi ? midpoint(from, *iv.hi) : from + 1;
      }
      if (iv.lo < below) return midpoint(iv.lo, std::min(*iv.hi, below));
    }
    return std::nullopt;
  }

  friend bool operator==(const ChoiceSet&, const ChoiceSet&) = default;

 private:
  static Rational interior(const OpenInterval& iv) {
    if (!iv.hi) return iv.lo + 1;
    return iv.lo + (*iv.hi - iv.lo) * Rational(1, 4);
  }

  std::set<Rational> points_;
  std::vector<OpenInterval> intervals_;
};

}  // namespace metricext
