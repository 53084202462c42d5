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

// Exact rational scalar.
//
// Values whose reduced numerator and denominator fit in 63 bits are stored
// inline and handled with 128-bit intermediates; anything larger spills into
// a shared, immutable GMP rational. The representation is canonical: a value
// is stored inline if and only if it fits, so equality never has to compare
// across representations.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "metricext/error.hpp"

namespace metricext {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u128 abs_u128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

inline constexpr std::int64_t kInlineMax = std::numeric_limits<std::int64_t>::max();

inline bool fits_inline(i128 v) { return v <= kInlineMax && v >= -kInlineMax; }

inline mpz_class mpz_from_i128(i128 v) {
  u128 mag = abs_u128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return v < 0 ? mpz_class(-out) : out;
}

}  // namespace detail

class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_unsigned_v<T> && sizeof(T) >= sizeof(std::int64_t)) {
      if (value > static_cast<T>(detail::kInlineMax)) {
        *this = from_i128(static_cast<detail::i128>(value), 1);
        return;
      }
    } else if constexpr (std::is_signed_v<T> && sizeof(T) >= sizeof(std::int64_t)) {
      if (value == std::numeric_limits<T>::min()) {
        *this = from_i128(static_cast<detail::i128>(value), 1);
        return;
      }
    }
    num_ = static_cast<std::int64_t>(value);
  }

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
    *this = from_i128(num, den);
  }

  /// Parses "n", "-n", "p/q" or "-p/q" with decimal digits of any length.
  static Rational parse(std::string_view text) {
    auto digits_only = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s) {
        if (c < '0' || c > '9') return false;
      }
      return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
      negative = true;
      body.remove_prefix(1);
    }
    std::string_view num_text = body;
    std::string_view den_text = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
      num_text = body.substr(0, slash);
      den_text = body.substr(slash + 1);
    }
    if (!digits_only(num_text) || !digits_only(den_text)) {
      throw Error(ErrorCode::reject_malformed,
                  "not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class num(std::string(num_text), 10);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) {
      throw Error(ErrorCode::reject_malformed,
                  "zero denominator in '" + std::string(text) + "'");
    }
    if (negative) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return from_mpq(q);
  }

  std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept {
    return big_ ? big_->get_den() == 1 : den_ == 1;
  }
  bool is_inline() const noexcept { return !big_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational floor() const {
    if (!big_) {
      std::int64_t q = num_ / den_;
      if (num_ % den_ != 0 && num_ < 0) --q;
      return Rational(q);
    }
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return from_mpq(mpq_class(q));
  }

  Rational ceil() const { return -((-*this).floor()); }

  Rational reciprocal() const {
    if (sign() == 0) throw Error(ErrorCode::invalid_argument, "division by zero");
    if (!big_) return num_ < 0 ? Rational::raw(-den_, -num_) : Rational::raw(den_, num_);
    mpq_class q = 1 / *big_;
    return from_mpq(q);
  }

  friend Rational operator-(const Rational& a) {
    if (!a.big_) return raw(-a.num_, a.den_);
    return from_mpq(mpq_class(-*a.big_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (b.num_ == 0) return a;
      if (a.num_ == 0) return b;
      if (a.den_ == b.den_) {
        return from_i128(static_cast<detail::i128>(a.num_) + b.num_, a.den_);
      }
      return from_i128(
          static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_,
          static_cast<detail::i128>(a.den_) * b.den_);
    }
    return from_mpq(mpq_class(a.as_mpq() + b.as_mpq()));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      // Cross-cancel first; the product of two reduced fractions is then reduced.
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      detail::i128 n = static_cast<detail::i128>(a.num_ / g1) * (b.num_ / g2);
      detail::i128 d = static_cast<detail::i128>(a.den_ / g2) * (b.den_ / g1);
      if (detail::fits_inline(n) && detail::fits_inline(d)) {
        return raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
      }
      return from_mpq(mpq_class(detail::mpz_from_i128(n), detail::mpz_from_i128(d)));
    }
    return from_mpq(mpq_class(a.as_mpq() * b.as_mpq()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return a.num_ <=> b.num_;
      detail::i128 lhs = static_cast<detail::i128>(a.num_) * b.den_;
      detail::i128 rhs = static_cast<detail::i128>(b.num_) * a.den_;
      return lhs < rhs ? std::strong_ordering::less
                       : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    int c = cmp(a.as_mpq(), b.as_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const noexcept {
    if (!big_) {
      std::size_t h = std::hash<std::int64_t>{}(num_);
      return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
    return std::hash<std::string>{}(big_->get_str());
  }

 private:
  static Rational raw(std::int64_t num, std::int64_t den) {
    Rational r;
    r.num_ = num;
    r.den_ = den;
    return r;
  }

  static Rational from_i128(detail::i128 n, detail::i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      detail::u128 g = detail::gcd_u128(detail::abs_u128(n), static_cast<detail::u128>(d));
      if (g > 1) {
        n /= static_cast<detail::i128>(g);
        d /= static_cast<detail::i128>(g);
      }
    }
    if (detail::fits_inline(n) && detail::fits_inline(d)) {
      return raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(detail::mpz_from_i128(n), detail::mpz_from_i128(d));
    return r;
  }

  // `q` must be canonical.
  static Rational from_mpq(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
      long nl = n.get_si();
      long dl = d.get_si();
      if (nl != std::numeric_limits<long>::min()) return raw(nl, dl);
    }
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(q);
    return r;
  }

  mpq_class as_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) * Rational(1, 2); }

/// The rational with the smallest denominator (then smallest magnitude)
/// lying strictly inside (lo, hi). Requires lo < hi.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::invalid_argument, "empty open interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
  if (hi.sign() <= 0) return -simplest_between(-hi, -lo);
  Rational base = lo.floor();
  Rational next = base + 1;
  if (next < hi) return next;
  // base <= lo < hi <= base + 1: recurse on the reciprocal of the fractional part.
  Rational upper_recip = (hi - base).reciprocal();
  if (lo == base) return base + (upper_recip.floor() + 1).reciprocal();
  return base + simplest_between(upper_recip, (lo - base).reciprocal()).reciprocal();
}

}  // namespace metricext

template <>
struct std::hash<metricext::Rational> {
  std::size_t operator()(const metricext::Rational& r) const noexcept { return r.hash(); }
};
