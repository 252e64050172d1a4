#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"

namespace tnormcat {

/// Thrown when an enumeration would exceed its configured size.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string const& what, std::uint64_t required,
                 std::uint64_t budget)
      : std::runtime_error(what + ": requires " + std::to_string(required) +
                           " candidates, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  [[nodiscard]] std::uint64_t required() const noexcept { return required_; }
  [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Thrown when an operation's input does not satisfy its precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

namespace detail {

/// base^exponent, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace detail

/// A finite [0,1]-valued relation on labelled elements. Whether it is a
/// category depends on the t-norm, see validate().
class RCat {
 public:
  RCat() = default;

  /// Throws std::invalid_argument for duplicate labels, a non-square matrix
  /// or entries outside [0,1].
  RCat(std::vector<std::string> elements, std::vector<std::vector<Rational>> hom)
      : elements_(std::move(elements)) {
    std::size_t const n = elements_.size();
    std::set<std::string> seen;
    for (auto const& e : elements_) {
      if (!seen.insert(e).second) {
        throw std::invalid_argument("duplicate element label '" + e + "'");
      }
    }
    if (hom.size() != n) {
      throw std::invalid_argument("hom has " + std::to_string(hom.size()) +
                                  " rows for " + std::to_string(n) + " elements");
    }
    hom_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (hom[i].size() != n) {
        throw std::invalid_argument("hom row " + std::to_string(i) + " has " +
                                    std::to_string(hom[i].size()) + " entries");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!hom[i][j].is_truth_value()) {
          throw std::invalid_argument("hom[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] = " +
                                      hom[i][j].str() + " outside [0,1]");
        }
        hom_.push_back(hom[i][j]);
      }
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] std::vector<std::string> const& elements() const noexcept {
    return elements_;
  }
  [[nodiscard]] std::string const& label(std::size_t i) const {
    return elements_.at(i);
  }

  [[nodiscard]] std::optional<std::size_t> index_of(std::string const& label) const {
    auto it = std::find(elements_.begin(), elements_.end(), label);
    if (it == elements_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  [[nodiscard]] Rational hom(std::size_t from, std::size_t to) const {
    return hom_[from * size() + to];
  }

  [[nodiscard]] std::vector<std::vector<Rational>> matrix() const {
    std::vector<std::vector<Rational>> m(size());
    for (std::size_t i = 0; i < size(); ++i) {
      m[i].assign(hom_.begin() + static_cast<std::ptrdiff_t>(i * size()),
                  hom_.begin() + static_cast<std::ptrdiff_t>((i + 1) * size()));
    }
    return m;
  }

  /// Mutual hom 1.
  [[nodiscard]] bool isomorphic(std::size_t a, std::size_t b) const {
    return hom(a, b) == Rational(1) && hom(b, a) == Rational(1);
  }

  friend bool operator==(RCat const&, RCat const&) = default;

 private:
  std::vector<std::string> elements_;
  std::vector<Rational> hom_;
};

/// Element-to-element assignment by index; entry i is the image of element i.
using Assignment = std::vector<std::size_t>;

/// A failed axiom with the offending elements and both sides.
struct Violation {
  std::string kind;
  std::vector<std::string> at;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
  std::string detail;
};

/// Pass, or the first violation found.
struct Outcome {
  std::optional<Violation> violation;

  [[nodiscard]] bool passed() const noexcept { return !violation.has_value(); }
  explicit operator bool() const noexcept { return passed(); }

  static Outcome pass() { return {}; }
  static Outcome fail(Violation v) { return {std::move(v)}; }
};

/// Reflexivity, then transitivity hom(y,z) & hom(x,y) <= hom(x,z) over
/// triples in element order.
inline Outcome validate(RCat const& cat, TNorm const& t) {
  std::size_t const n = cat.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (cat.hom(x, x) != Rational(1)) {
      return Outcome::fail({"reflexivity", {cat.label(x)}, cat.hom(x, x),
                            Rational(1), "hom(x,x) must be 1"});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Rational const xy = cat.hom(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        Rational const lhs = t(cat.hom(y, z), xy);
        if (lhs > cat.hom(x, z)) {
          return Outcome::fail({"transitivity",
                                {cat.label(x), cat.label(y), cat.label(z)},
                                lhs,
                                cat.hom(x, z),
                                "hom(y,z) & hom(x,y) <= hom(x,z)"});
        }
      }
    }
  }
  return Outcome::pass();
}

/// Hom-nonexpansion src.hom(x,y) <= dst.hom(f x, f y).
inline Outcome is_functor(std::span<std::size_t const> map, RCat const& src,
                          RCat const& dst) {
  if (map.size() != src.size()) {
    throw PreconditionError("map has " + std::to_string(map.size()) +
                            " entries for " + std::to_string(src.size()) +
                            " source elements");
  }
  for (std::size_t image : map) {
    if (image >= dst.size()) {
      throw PreconditionError("map target index out of range");
    }
  }
  for (std::size_t x = 0; x < src.size(); ++x) {
    for (std::size_t y = 0; y < src.size(); ++y) {
      Rational const before = src.hom(x, y);
      Rational const after = dst.hom(map[x], map[y]);
      if (before > after) {
        return Outcome::fail({"nonexpansion",
                              {src.label(x), src.label(y)},
                              before,
                              after,
                              "hom(x,y) <= hom(f x, f y)"});
      }
    }
  }
  return Outcome::pass();
}

inline RCat terminal() { return RCat({"*"}, {{Rational(1)}}); }

inline std::string pair_label(std::string const& a, std::string const& b) {
  return "(" + a + "," + b + ")";
}

/// Carrier a x b in row-major order, hom the pointwise minimum.
inline RCat product(RCat const& a, RCat const& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (auto const& x : a.elements()) {
    for (auto const& y : b.elements()) labels.push_back(pair_label(x, y));
  }
  std::size_t const n = labels.size();
  std::vector<std::vector<Rational>> hom(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      hom[i][j] = min(a.hom(i / b.size(), j / b.size()),
                      b.hom(i % b.size(), j % b.size()));
    }
  }
  return RCat(std::move(labels), std::move(hom));
}

/// Index of (i, j) in product(a, b) where b has `right_size` elements.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t right_size) {
  return i * right_size + j;
}

inline Assignment first_projection(RCat const& a, RCat const& b) {
  Assignment m(a.size() * b.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = k / b.size();
  return m;
}

inline Assignment second_projection(RCat const& a, RCat const& b) {
  Assignment m(a.size() * b.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = k % b.size();
  return m;
}

/// <f, g> : c -> a x b.
inline Assignment pairing(std::span<std::size_t const> f,
                          std::span<std::size_t const> g, std::size_t b_size) {
  Assignment m(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) m[k] = pair_index(f[k], g[k], b_size);
  return m;
}

/// A finite subset of ([0,1], residuum) as a category.
struct UnitIntervalCat {
  std::vector<Rational> points;
  RCat category;

  [[nodiscard]] std::size_t index_of(Rational p) const {
    auto it = std::find(points.begin(), points.end(), p);
    if (it == points.end()) {
      throw std::out_of_range("point " + p.str() + " not in carrier");
    }
    return static_cast<std::size_t>(it - points.begin());
  }
};

/// Points are deduplicated and sorted ascending.
inline UnitIntervalCat unit_interval_category(TNorm const& t,
                                              std::vector<Rational> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> hom(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_truth_value()) {
      throw std::invalid_argument("point " + points[i].str() + " outside [0,1]");
    }
    labels.push_back(points[i].str());
    for (Rational q : points) hom[i].push_back(t.residuum(points[i], q));
  }
  return {points, RCat(std::move(labels), std::move(hom))};
}

/// Calls visit(map) for every map from an n-element set into an m-element
/// set, in lexicographic order with element 0 most significant.
template <typename Visit>
void for_each_map(std::size_t n, std::size_t m, Visit&& visit) {
  if (m == 0 && n > 0) return;
  Assignment map(n, 0);
  while (true) {
    visit(static_cast<Assignment const&>(map));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++map[k] < m) break;
      map[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

/// All functors src -> dst, in lexicographic order.
inline std::vector<Assignment> all_functors(RCat const& src, RCat const& dst,
                                            std::uint64_t budget = kDefaultBudget) {
  std::uint64_t const count = detail::saturating_pow(dst.size(), src.size());
  if (count > budget) throw BudgetExceeded("functor enumeration", count, budget);
  std::vector<Assignment> out;
  for_each_map(src.size(), dst.size(), [&](Assignment const& f) {
    if (is_functor(f, src, dst)) out.push_back(f);
  });
  return out;
}

/// Every valid category with 1..max_size elements labelled x0, x1, ... and
/// off-diagonal hom values from `values`. Isomorphic copies are kept.
inline std::vector<RCat> enumerate_categories(TNorm const& t,
                                              std::span<Rational const> values,
                                              std::size_t max_size,
                                              std::uint64_t budget = kDefaultBudget) {
  std::vector<RCat> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::size_t const slots = n * (n - 1);
    std::uint64_t const count = detail::saturating_pow(values.size(), slots);
    if (count > budget) throw BudgetExceeded("category enumeration", count, budget);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    for_each_map(slots, values.size(), [&](Assignment const& pick) {
      std::vector<std::vector<Rational>> hom(n, std::vector<Rational>(n, Rational(1)));
      std::size_t s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) hom[i][j] = values[pick[s++]];
        }
      }
      RCat cat(labels, std::move(hom));
      if (validate(cat, t)) out.push_back(std::move(cat));
    });
  }
  return out;
}

}  // namespace tnormcat
