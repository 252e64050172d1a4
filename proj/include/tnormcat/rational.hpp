#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tnormcat {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored reduced with a positive denominator, so equality is
/// member-wise. Intermediate products use 128-bit integers; a result that
/// does not fit back into 64 bits throws std::overflow_error rather than
/// wrapping.
class Rational {
 public:
  constexpr Rational() = default;

  constexpr Rational(std::int64_t numerator)  // NOLINT(google-explicit-constructor)
      : num_(numerator) {}

  Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
      throw std::domain_error("rational with zero denominator");
    }
    *this = reduce(static_cast<__int128>(numerator),
                   static_cast<__int128>(denominator));
  }

  /// Parses "n/d" or a bare integer "n".
  static Rational parse(std::string_view text) {
    auto const slash = text.find('/');
    auto const head = text.substr(0, slash);
    std::int64_t n = parse_int(head, text);
    if (slash == std::string_view::npos) {
      return Rational(n);
    }
    std::int64_t d = parse_int(text.substr(slash + 1), text);
    if (d == 0) {
      throw std::invalid_argument("zero denominator in rational '" +
                                  std::string(text) + "'");
    }
    return Rational(n, d);
  }

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

  [[nodiscard]] std::string str() const {
    if (den_ == 1) {
      return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// True for values in the closed unit interval.
  [[nodiscard]] constexpr bool is_truth_value() const noexcept {
    return num_ >= 0 && num_ <= den_;
  }

  friend Rational operator+(Rational a, Rational b) {
    using W = __int128;
    return reduce(W{a.num_} * b.den_ + W{b.num_} * a.den_, W{a.den_} * b.den_);
  }

  friend Rational operator-(Rational a, Rational b) {
    using W = __int128;
    return reduce(W{a.num_} * b.den_ - W{b.num_} * a.den_, W{a.den_} * b.den_);
  }

  friend Rational operator*(Rational a, Rational b) {
    using W = __int128;
    return reduce(W{a.num_} * b.num_, W{a.den_} * b.den_);
  }

  friend Rational operator/(Rational a, Rational b) {
    using W = __int128;
    if (b.num_ == 0) {
      throw std::domain_error("rational division by zero");
    }
    return reduce(W{a.num_} * b.den_, W{a.den_} * b.num_);
  }

  friend constexpr bool operator==(Rational, Rational) = default;

  friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) {
    using W = __int128;
    W const lhs = W{a.num_} * b.den_;
    W const rhs = W{b.num_} * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, Rational const& r) {
    return os << r.str();
  }

 private:
  static Rational reduce(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lo = INT64_MIN;
    constexpr __int128 hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) {
      throw std::overflow_error("rational overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static std::int64_t parse_int(std::string_view part, std::string_view whole) {
    std::int64_t v = 0;
    auto const* first = part.data();
    auto const* last = part.data() + part.size();
    if (!part.empty() && *first == '+') {
      ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (part.empty() || ec != std::errc{} || ptr != last) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) +
                                  "'");
    }
    return v;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational min(Rational a, Rational b) { return b < a ? b : a; }
inline Rational max(Rational a, Rational b) { return a < b ? b : a; }

/// Parses a rational and requires it to lie in [0,1].
inline Rational parse_truth_value(std::string_view text) {
  Rational r = Rational::parse(text);
  if (!r.is_truth_value()) {
    throw std::invalid_argument("truth value '" + std::string(text) +
                                "' outside [0,1]");
  }
  return r;
}

}  // namespace tnormcat
