#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tnormcat/rational.hpp"

namespace tnormcat {

enum class Family {
  Minimum,
  Product,
  Lukasiewicz,
  NilpotentMinimum,
  IntervalCollapse,
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Minimum: return "minimum";
    case Family::Product: return "product";
    case Family::Lukasiewicz: return "lukasiewicz";
    case Family::NilpotentMinimum: return "nilpotent-minimum";
    case Family::IntervalCollapse: return "interval-collapse";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::Minimum, Family::Product, Family::Lukasiewicz,
                   Family::NilpotentMinimum, Family::IntervalCollapse}) {
    if (family_name(f) == name) {
      return f;
    }
  }
  throw std::invalid_argument("unknown t-norm family '" + std::string(name) +
                              "'");
}

/// Closed interval [lo, hi] of truth values.
struct Interval {
  Rational lo;
  Rational hi;

  [[nodiscard]] bool contains(Rational p) const { return lo <= p && p <= hi; }
  [[nodiscard]] bool degenerate() const { return lo == hi; }

  friend bool operator==(Interval const&, Interval const&) = default;
};

/// A left-continuous triangular norm from one of five closed-form families.
///
/// Interval-collapse t-norms are the minimum everywhere except that two
/// arguments inside the same designated interval [a, b] meet at a. Their
/// intervals are kept sorted, pairwise disjoint and inside [0,1).
class TNorm {
 public:
  static TNorm minimum() { return TNorm(Family::Minimum, {}); }
  static TNorm product() { return TNorm(Family::Product, {}); }
  static TNorm lukasiewicz() { return TNorm(Family::Lukasiewicz, {}); }
  static TNorm nilpotent_minimum() { return TNorm(Family::NilpotentMinimum, {}); }

  /// Throws std::invalid_argument unless every interval satisfies
  /// 0 <= a <= b < 1 and no two intervals intersect.
  static TNorm interval_collapse(std::vector<Interval> intervals) {
    for (auto const& iv : intervals) {
      if (iv.lo < Rational(0) || iv.hi < iv.lo || !(iv.hi < Rational(1))) {
        throw std::invalid_argument("interval [" + iv.lo.str() + ", " +
                                    iv.hi.str() +
                                    "] must satisfy 0 <= a <= b < 1");
      }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](Interval const& a, Interval const& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (!(intervals[i - 1].hi < intervals[i].lo)) {
        throw std::invalid_argument(
            "intervals [" + intervals[i - 1].lo.str() + ", " +
            intervals[i - 1].hi.str() + "] and [" + intervals[i].lo.str() +
            ", " + intervals[i].hi.str() + "] are not disjoint");
      }
    }
    return TNorm(Family::IntervalCollapse, std::move(intervals));
  }

  static TNorm of(Family f) {
    if (f == Family::IntervalCollapse) {
      throw std::invalid_argument("interval-collapse requires intervals");
    }
    return TNorm(f, {});
  }

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] std::vector<Interval> const& intervals() const noexcept {
    return intervals_;
  }

  /// The designated interval containing p, if any.
  [[nodiscard]] Interval const* interval_of(Rational p) const {
    for (auto const& iv : intervals_) {
      if (iv.contains(p)) return &iv;
      if (p < iv.lo) break;
    }
    return nullptr;
  }

  /// p & q.
  [[nodiscard]] Rational operator()(Rational p, Rational q) const {
    switch (family_) {
      case Family::Minimum:
        return min(p, q);
      case Family::Product:
        return p * q;
      case Family::Lukasiewicz:
        return max(p + q - Rational(1), Rational(0));
      case Family::NilpotentMinimum:
        return p + q > Rational(1) ? min(p, q) : Rational(0);
      case Family::IntervalCollapse: {
        Interval const* iv = interval_of(p);
        if (iv != nullptr && iv->contains(q)) return iv->lo;
        return min(p, q);
      }
    }
    return min(p, q);
  }

  /// Largest z with p & z <= q.
  [[nodiscard]] Rational residuum(Rational p, Rational q) const {
    if (p <= q) return Rational(1);
    switch (family_) {
      case Family::Minimum:
        return q;
      case Family::Product:
        return q / p;
      case Family::Lukasiewicz:
        return Rational(1) - p + q;
      case Family::NilpotentMinimum:
        return max(Rational(1) - p, q);
      case Family::IntervalCollapse: {
        // p & z collapses to a for z in [a, b]; that stays below q iff a <= q.
        Interval const* iv = interval_of(p);
        if (iv != nullptr && iv->lo <= q) return iv->hi;
        return q;
      }
    }
    return q;
  }

  /// Points where the closed form switches branch, always including 0 and 1.
  [[nodiscard]] std::vector<Rational> breakpoints() const {
    std::set<Rational> b{Rational(0), Rational(1)};
    if (family_ == Family::NilpotentMinimum) b.insert(Rational(1, 2));
    for (auto const& iv : intervals_) {
      b.insert(iv.lo);
      b.insert(iv.hi);
    }
    return {b.begin(), b.end()};
  }

  friend bool operator==(TNorm const&, TNorm const&) = default;

 private:
  TNorm(Family f, std::vector<Interval> iv)
      : family_(f), intervals_(std::move(iv)) {}

  Family family_;
  std::vector<Interval> intervals_;
};

/// Breakpoints, their pairwise midpoints and the uniform grid k/n, sorted.
inline std::vector<Rational> canonical_grid(TNorm const& t, int n = 40) {
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  auto const b = t.breakpoints();
  std::set<Rational> g(b.begin(), b.end());
  for (std::size_t i = 1; i < b.size(); ++i) {
    g.insert((b[i - 1] + b[i]) / Rational(2));
  }
  for (int k = 0; k <= n; ++k) g.insert(Rational(k, n));
  return {g.begin(), g.end()};
}

/// A finite union of intervals with per-end openness.
struct PointSet {
  struct Piece {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = true;
  };
  std::vector<Piece> pieces;

  [[nodiscard]] bool contains(Rational p) const {
    return std::any_of(pieces.begin(), pieces.end(), [p](Piece const& s) {
      bool const above = s.lo_closed ? s.lo <= p : s.lo < p;
      bool const below = s.hi_closed ? p <= s.hi : p < s.hi;
      return above && below;
    });
  }

  [[nodiscard]] std::string str() const {
    if (pieces.empty()) return "{}";
    std::string out;
    for (auto const& s : pieces) {
      if (!out.empty()) out += " u ";
      if (s.lo == s.hi && s.lo_closed && s.hi_closed) {
        out += "{" + s.lo.str() + "}";
      } else {
        out += (s.lo_closed ? "[" : "(") + s.lo.str() + ", " + s.hi.str() +
               (s.hi_closed ? "]" : ")");
      }
    }
    return out;
  }
};

/// The exact set {p : p & p = p}.
inline PointSet idempotents(TNorm const& t) {
  using Piece = PointSet::Piece;
  Rational const zero(0), one(1);
  switch (t.family()) {
    case Family::Minimum:
      return {{Piece{zero, one}}};
    case Family::Product:
    case Family::Lukasiewicz:
      return {{Piece{zero, zero}, Piece{one, one}}};
    case Family::NilpotentMinimum:
      return {{Piece{zero, zero}, Piece{Rational(1, 2), one, false, true}}};
    case Family::IntervalCollapse: {
      // Remove (a, b] for every non-degenerate interval.
      PointSet out;
      Rational cursor = zero;
      bool cursor_closed = true;
      for (auto const& iv : t.intervals()) {
        if (iv.degenerate()) continue;
        out.pieces.push_back(Piece{cursor, iv.lo, cursor_closed, true});
        cursor = iv.hi;
        cursor_closed = false;
      }
      out.pieces.push_back(Piece{cursor, one, cursor_closed, true});
      return out;
    }
  }
  return {};
}

}  // namespace tnormcat
