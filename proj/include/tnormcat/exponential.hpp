#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnormcat/category.hpp"
#include "tnormcat/conditions.hpp"
#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"

namespace tnormcat {

/// d(f,g) = sup{q : q ^ r(x,y) <= s(f x, g y) for all x, y}.
///
/// A pair with r(x,y) <= s(f x, g y) constrains nothing; otherwise
/// q ^ r(x,y) <= s(f x, g y) holds iff q <= s(f x, g y). The supremum is
/// therefore the least such s over violating pairs, or 1 without any.
inline Rational power_hom(RCat const& base, RCat const& fiber,
                          std::span<std::size_t const> f,
                          std::span<std::size_t const> g) {
  Rational d(1);
  for (std::size_t x = 0; x < base.size(); ++x) {
    for (std::size_t y = 0; y < base.size(); ++y) {
      Rational const s = fiber.hom(f[x], g[y]);
      if (base.hom(x, y) > s) d = min(d, s);
    }
  }
  return d;
}

/// Target labels in source order, e.g. "[a,b]".
inline std::string functor_label(RCat const& fiber, std::span<std::size_t const> f) {
  std::string out = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0) out += ",";
    out += fiber.label(f[i]);
  }
  return out + "]";
}

/// The function space fiber^base: all functors base -> fiber with hom d.
struct PowerObject {
  RCat base;
  RCat fiber;
  std::vector<Assignment> functors;
  RCat category;

  [[nodiscard]] std::optional<std::size_t> index_of(Assignment const& f) const {
    auto it = std::find(functors.begin(), functors.end(), f);
    if (it == functors.end()) return std::nullopt;
    return static_cast<std::size_t>(it - functors.begin());
  }
};

inline PowerObject exponential(RCat const& base, RCat const& fiber,
                               std::uint64_t budget = kDefaultBudget) {
  PowerObject p{base, fiber, all_functors(base, fiber, budget), {}};
  std::size_t const n = p.functors.size();
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> hom(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(functor_label(fiber, p.functors[i]));
    for (std::size_t j = 0; j < n; ++j) {
      hom[i][j] = power_hom(base, fiber, p.functors[i], p.functors[j]);
    }
  }
  p.category = RCat(std::move(labels), std::move(hom));
  return p;
}

/// The t-norm does not enter the hom formula; it is accepted so call sites
/// read like the other t-norm-relative operations.
inline PowerObject exponential(TNorm const& /*t*/, RCat const& base,
                               RCat const& fiber,
                               std::uint64_t budget = kDefaultBudget) {
  return exponential(base, fiber, budget);
}

/// Checks (p&q) ^ r(x,z) = max_y (p ^ r(y,z)) & (q ^ r(x,y)) for p, q in the
/// grid and all x, z. The frame condition on [0,1] holds analytically and is
/// only recorded.
inline ConditionReport check_exponentiable(TNorm const& t, RCat const& cat,
                                           std::span<Rational const> grid) {
  ConditionReport r{Condition::Exponentiable};
  r.notes.push_back("frame condition holds on [0,1] (binary meet preserves joins)");
  std::size_t const n = cat.size();
  for (Rational p : grid) {
    for (Rational q : grid) {
      Rational const pq = t(p, q);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t z = 0; z < n; ++z) {
          Rational const lhs = min(pq, cat.hom(x, z));
          Rational rhs(0);
          for (std::size_t y = 0; y < n; ++y) {
            rhs = max(rhs, t(min(p, cat.hom(y, z)), min(q, cat.hom(x, y))));
          }
          if (lhs != rhs) {
            r.passed = false;
            r.certified = true;
            r.witness = Witness{{{"p", p}, {"q", q}},
                                {{"x", cat.label(x)}, {"z", cat.label(z)}},
                                lhs,
                                rhs,
                                {}};
            return r;
          }
        }
      }
    }
  }
  r.certified = detail::closed_form_certifies(t);
  return r;
}

/// ev : base x power -> fiber, ev(x, f) = f(x).
inline Assignment evaluation_map(PowerObject const& power) {
  std::size_t const m = power.functors.size();
  Assignment ev(power.base.size() * m);
  for (std::size_t x = 0; x < power.base.size(); ++x) {
    for (std::size_t k = 0; k < m; ++k) ev[pair_index(x, k, m)] = power.functors[k][x];
  }
  return ev;
}

/// For h : z x base -> fiber, the map z -> maps base -> fiber.
inline std::vector<Assignment> curry(std::span<std::size_t const> h,
                                     std::size_t z_size, std::size_t base_size) {
  std::vector<Assignment> out(z_size, Assignment(base_size));
  for (std::size_t z = 0; z < z_size; ++z) {
    for (std::size_t x = 0; x < base_size; ++x) out[z][x] = h[pair_index(z, x, base_size)];
  }
  return out;
}

/// Transpose of h : z x base -> fiber as a map z -> power, or nullopt if some
/// h(z, -) is not a functor.
inline std::optional<Assignment> transpose(PowerObject const& power,
                                           std::span<std::size_t const> h,
                                           std::size_t z_size) {
  Assignment out(z_size);
  auto const rows = curry(h, z_size, power.base.size());
  for (std::size_t z = 0; z < z_size; ++z) {
    auto idx = power.index_of(rows[z]);
    if (!idx) return std::nullopt;
    out[z] = *idx;
  }
  return out;
}

/// Verifies that transposition is a bijection between functors z x base ->
/// fiber and functors z -> power, that transposes are functors, that
/// ev . (id x h^) = h, and that the candidate power is itself a category
/// with a functorial evaluation map.
inline Outcome check_currying(TNorm const& t, PowerObject const& power,
                              RCat const& z, std::uint64_t budget = kDefaultBudget) {
  RCat const& base = power.base;
  RCat const& fiber = power.fiber;
  std::string const tag = "x=" + std::to_string(base.size()) +
                          " y=" + std::to_string(fiber.size()) +
                          " z=" + std::to_string(z.size());

  if (auto v = validate(power.category, t); !v) {
    auto viol = *v.violation;
    viol.detail = "power is not a category (" + tag + "): " + viol.detail;
    viol.kind = "power-" + viol.kind;
    return Outcome::fail(std::move(viol));
  }
  RCat const ev_domain = product(base, power.category);
  Assignment const ev = evaluation_map(power);
  if (auto v = is_functor(ev, ev_domain, fiber); !v) {
    auto viol = *v.violation;
    viol.kind = "evaluation";
    return Outcome::fail(std::move(viol));
  }

  RCat const zx = product(z, base);
  std::uint64_t const m = power.functors.size();
  std::uint64_t const uncurried =
      detail::saturating_pow(fiber.size(), zx.size());
  std::uint64_t const curried = detail::saturating_pow(m, z.size());
  if (uncurried > budget) throw BudgetExceeded("currying (z x x -> y)", uncurried, budget);
  if (curried > budget) throw BudgetExceeded("currying (z -> y^x)", curried, budget);

  std::size_t forward = 0;
  std::optional<Violation> failure;
  for_each_map(zx.size(), fiber.size(), [&](Assignment const& h) {
    if (failure || !is_functor(h, zx, fiber)) return;
    ++forward;
    auto hat = transpose(power, h, z.size());
    if (!hat) {
      failure = Violation{"transpose-not-into-power", {functor_label(fiber, h)},
                          {}, {}, "some h(z,-) is not a functor (" + tag + ")"};
      return;
    }
    if (auto v = is_functor(*hat, z, power.category); !v) {
      failure = Violation{"transpose-not-functor",
                          {functor_label(fiber, h)},
                          v.violation->lhs,
                          v.violation->rhs,
                          "transpose fails nonexpansion at (" +
                              v.violation->at[0] + "," + v.violation->at[1] +
                              ") (" + tag + ")"};
      return;
    }
    for (std::size_t zi = 0; zi < z.size(); ++zi) {
      for (std::size_t x = 0; x < base.size(); ++x) {
        std::size_t const recovered = ev[pair_index(x, (*hat)[zi], power.functors.size())];
        if (recovered != h[pair_index(zi, x, base.size())]) {
          failure = Violation{"counit", {functor_label(fiber, h), z.label(zi), base.label(x)},
                              {}, {}, "ev(x, h^(z)) != h(z, x)"};
          return;
        }
      }
    }
  });
  if (failure) return Outcome::fail(std::move(*failure));

  std::size_t backward = 0;
  for_each_map(z.size(), power.functors.size(), [&](Assignment const& k) {
    if (failure || !is_functor(k, z, power.category)) return;
    ++backward;
    Assignment h(zx.size());
    for (std::size_t zi = 0; zi < z.size(); ++zi) {
      for (std::size_t x = 0; x < base.size(); ++x) {
        h[pair_index(zi, x, base.size())] = power.functors[k[zi]][x];
      }
    }
    if (auto v = is_functor(h, zx, fiber); !v) {
      failure = Violation{"uncurry-not-functor", {functor_label(power.category, k)},
                          v.violation->lhs, v.violation->rhs,
                          "uncurried map fails nonexpansion (" + tag + ")"};
    }
  });
  if (failure) return Outcome::fail(std::move(*failure));
  if (forward != backward) {
    return Outcome::fail({"bijection", {}, Rational(static_cast<std::int64_t>(forward)),
                          Rational(static_cast<std::int64_t>(backward)),
                          "functor counts differ (" + tag + ")"});
  }
  return Outcome::pass();
}

inline Outcome check_currying(TNorm const& t, RCat const& x, RCat const& y,
                              RCat const& z, std::uint64_t budget = kDefaultBudget) {
  return check_currying(t, exponential(x, y, budget), z, budget);
}

}  // namespace tnormcat
