#pragma once

// Brute-force reference computations for the tests. Each one evaluates a
// definition directly instead of the closed forms used by the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tnormcat/tnormcat.hpp"

namespace tnormcat::oracle {

/// k/n for k = 0..n.
inline std::vector<Rational> uniform_grid(int n) {
  std::vector<Rational> g;
  for (int k = 0; k <= n; ++k) g.emplace_back(k, n);
  return g;
}

/// Largest grid z with p & z <= q.
inline Rational grid_residuum(TNorm const& t, Rational p, Rational q,
                              std::span<Rational const> grid) {
  Rational best(0);
  for (Rational z : grid) {
    if (t(p, z) <= q) best = max(best, z);
  }
  return best;
}

/// p & q straight from the collapse definition: some interval holding both.
inline Rational collapse_by_definition(std::vector<Interval> const& intervals, Rational p,
                                       Rational q) {
  for (auto const& iv : intervals) {
    bool const p_in = !(p < iv.lo) && !(iv.hi < p);
    bool const q_in = !(q < iv.lo) && !(iv.hi < q);
    if (p_in && q_in) return iv.lo;
  }
  return p < q ? p : q;
}

/// sup of the q in `candidates` with q ^ r(x,y) <= s(f x, g y) for all x, y.
inline Rational power_hom_by_scan(RCat const& base, RCat const& fiber,
                                  Assignment const& f, Assignment const& g,
                                  std::vector<Rational> candidates) {
  for (std::size_t x = 0; x < base.size(); ++x) {
    for (std::size_t y = 0; y < base.size(); ++y) {
      candidates.push_back(base.hom(x, y));
    }
  }
  for (std::size_t a = 0; a < fiber.size(); ++a) {
    for (std::size_t b = 0; b < fiber.size(); ++b) candidates.push_back(fiber.hom(a, b));
  }
  Rational best(0);
  for (Rational q : candidates) {
    bool ok = true;
    for (std::size_t x = 0; x < base.size() && ok; ++x) {
      for (std::size_t y = 0; y < base.size() && ok; ++y) {
        ok = min(q, base.hom(x, y)) <= fiber.hom(f[x], g[y]);
      }
    }
    if (ok) best = max(best, q);
  }
  return best;
}

/// sup over l of inf over l <= m < horizon of the hom value, with l ranging
/// over starting points that still leave a full cycle before the horizon.
inline Rational truncated_tail_value(TailSeq const& seq, std::size_t x, Direction dir,
                                     std::size_t cycles) {
  std::size_t const horizon = seq.prefix().size() + cycles * seq.cycle().size();
  std::size_t const last_start = horizon - seq.cycle().size();
  RCat const& c = seq.carrier();
  Rational best(0);
  for (std::size_t l = 0; l <= last_start; ++l) {
    Rational inf(1);
    for (std::size_t m = l; m < horizon; ++m) {
      std::size_t const e = seq.at(m);
      inf = min(inf, dir == Direction::FromSeq ? c.hom(e, x) : c.hom(x, e));
    }
    best = max(best, inf);
  }
  return best;
}

/// Closes a reflexive matrix under hom(x,z) >= hom(y,z) & hom(x,y).
inline std::vector<std::vector<Rational>> transitive_closure(
    TNorm const& t, std::vector<std::vector<Rational>> m) {
  std::size_t const n = m.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          Rational const via = t(m[y][z], m[x][y]);
          if (via > m[x][z]) {
            m[x][z] = via;
            changed = true;
          }
        }
      }
    }
  }
  return m;
}

/// Random valid category: random entries from `values`, then closed. The
/// closure stays in `values` whenever values are closed under &.
inline RCat random_category(TNorm const& t, std::span<Rational const> values,
                            std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m[i][j] = values[pick(rng)];
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return RCat(std::move(labels), transitive_closure(t, std::move(m)));
}

inline std::vector<Rational> eighths() {
  std::vector<Rational> g;
  for (int k = 0; k <= 7; ++k) g.emplace_back(k == 7 ? 8 : k, 8);
  return g;  // {0, 1/8, ..., 6/8, 1}: 8 points
}

}  // namespace tnormcat::oracle
