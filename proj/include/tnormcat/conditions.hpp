#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"

namespace tnormcat {

enum class Condition {
  C1,              // (p&q) ^ u = ((p^u)&q) v (p&(q^u))
  C2,              // u <= p&p  =>  u&p = u
  IntervalForm,    // & collapses on disjoint intervals, min elsewhere
  TNormAxioms,
  IdempotentSquares,
  Exponentiable,
  CartesianClosed,
};

inline std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::IntervalForm: return "C3-form";
    case Condition::TNormAxioms: return "tnorm-axioms";
    case Condition::IdempotentSquares: return "idempotent-squares";
    case Condition::Exponentiable: return "exponentiable";
    case Condition::CartesianClosed: return "cartesian-closed";
  }
  return "?";
}

/// A concrete point where an identity fails, with both sides evaluated.
struct Witness {
  std::vector<std::pair<std::string, Rational>> values;
  std::vector<std::pair<std::string, std::string>> elements;
  Rational lhs;
  Rational rhs;
  std::string detail;

  [[nodiscard]] Rational value(std::string_view name) const {
    for (auto const& [k, v] : values) {
      if (k == name) return v;
    }
    throw std::out_of_range("witness has no value '" + std::string(name) + "'");
  }
};

struct ConditionReport {
  Condition condition;
  bool passed = true;
  /// Certified verdicts are exact: a concrete counterexample, or a pass backed
  /// by the closed-form argument for the family. Otherwise grid evidence only.
  bool certified = false;
  std::optional<Witness> witness;
  std::vector<std::string> notes;
};

namespace detail {

inline bool closed_form_certifies(TNorm const& t) {
  return t.family() == Family::Minimum ||
         t.family() == Family::IntervalCollapse;
}

inline ConditionReport make_report(Condition c, TNorm const& t,
                                   std::optional<Witness> w) {
  ConditionReport r{c};
  r.passed = !w.has_value();
  r.certified = !r.passed || closed_form_certifies(t);
  r.witness = std::move(w);
  return r;
}

}  // namespace detail

/// Left side of C1.
inline Rational c1_lhs(TNorm const& t, Rational p, Rational q, Rational u) {
  return min(t(p, q), u);
}

/// Right side of C1.
inline Rational c1_rhs(TNorm const& t, Rational p, Rational q, Rational u) {
  return max(t(min(p, u), q), t(p, min(q, u)));
}

inline ConditionReport check_c1(TNorm const& t, std::span<Rational const> grid) {
  for (Rational p : grid) {
    for (Rational q : grid) {
      for (Rational u : grid) {
        Rational const lhs = c1_lhs(t, p, q, u);
        Rational const rhs = c1_rhs(t, p, q, u);
        if (lhs != rhs) {
          return detail::make_report(
              Condition::C1, t,
              Witness{{{"p", p}, {"q", q}, {"u", u}}, {}, lhs, rhs, {}});
        }
      }
    }
  }
  return detail::make_report(Condition::C1, t, std::nullopt);
}

inline ConditionReport check_c2(TNorm const& t, std::span<Rational const> grid) {
  for (Rational p : grid) {
    Rational const square = t(p, p);
    for (Rational u : grid) {
      if (u > square) continue;
      Rational const lhs = t(u, p);
      if (lhs != u) {
        return detail::make_report(
            Condition::C2, t,
            Witness{{{"p", p}, {"u", u}}, {}, lhs, u, "u <= p&p = " + square.str()});
      }
    }
  }
  return detail::make_report(Condition::C2, t, std::nullopt);
}

/// A C2 failure at (p, u) is a C1 failure at (p, p, u).
inline std::optional<Witness> lift_c2_witness(TNorm const& t, Witness const& c2) {
  Rational const p = c2.value("p");
  Rational const u = c2.value("u");
  Rational const lhs = c1_lhs(t, p, p, u);
  Rational const rhs = c1_rhs(t, p, p, u);
  if (lhs == rhs) return std::nullopt;
  return Witness{{{"p", p}, {"q", p}, {"u", u}}, {}, lhs, rhs, "lifted from C2"};
}

struct IntervalExtraction {
  std::vector<Interval> intervals;
  /// Set when & violates C2; the family then has no interval form.
  std::optional<Witness> failure;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const { return !failure.has_value(); }
};

/// sup{x : x & x = a} for an idempotent a of a C2-satisfying family.
inline Rational square_preimage_sup(TNorm const& t, Rational a) {
  if (t.family() == Family::IntervalCollapse) {
    // x & x is x off the intervals and a_i on [a_i, b_i].
    Rational best = a;
    for (auto const& iv : t.intervals()) {
      if (iv.lo == a) best = max(best, iv.hi);
    }
    return best;
  }
  return a;
}

/// Recovers the collapse intervals {[a, a^] : a idempotent, a < a^} where
/// a^ = sup{x : x & x = a}. A C2 violation on the canonical grid is returned
/// instead when the family has no such form.
inline IntervalExtraction extract_intervals(TNorm const& t, int grid_size = 40) {
  IntervalExtraction out;
  auto const grid = canonical_grid(t, grid_size);
  auto c2 = check_c2(t, grid);
  if (!c2.passed) {
    out.failure = std::move(c2.witness);
    return out;
  }
  // Only interval left endpoints can have a^ > a; every other idempotent
  // is its own square root.
  std::vector<Rational> candidates;
  for (auto const& iv : t.intervals()) candidates.push_back(iv.lo);
  std::size_t degenerate = 0;
  for (Rational a : candidates) {
    Rational const hat = square_preimage_sup(t, a);
    if (a < hat) {
      out.intervals.push_back({a, hat});
    } else {
      ++degenerate;
    }
  }
  if (degenerate > 0) {
    out.notes.push_back("dropped " + std::to_string(degenerate) +
                        " degenerate interval(s)");
  }
  return out;
}

/// & as given by the interval form for a family of intervals.
inline Rational collapse_formula(std::span<Interval const> family, Rational p,
                                 Rational q) {
  for (auto const& iv : family) {
    if (iv.contains(p) && iv.contains(q)) return iv.lo;
  }
  return min(p, q);
}

/// Extracts the interval family and checks it reproduces & on the grid.
inline ConditionReport check_interval_form(TNorm const& t,
                                           std::span<Rational const> grid,
                                           int grid_size = 40) {
  auto ex = extract_intervals(t, grid_size);
  if (!ex.ok()) {
    auto r = detail::make_report(Condition::IntervalForm, t, std::move(ex.failure));
    r.notes.push_back("C2 fails, no interval form");
    return r;
  }
  for (Rational p : grid) {
    for (Rational q : grid) {
      Rational const lhs = t(p, q);
      Rational const rhs = collapse_formula(ex.intervals, p, q);
      if (lhs != rhs) {
        return detail::make_report(
            Condition::IntervalForm, t,
            Witness{{{"p", p}, {"q", q}}, {}, lhs, rhs, "interval form mismatch"});
      }
    }
  }
  auto r = detail::make_report(Condition::IntervalForm, t, std::nullopt);
  std::string fam;
  for (auto const& iv : ex.intervals) {
    fam += "[" + iv.lo.str() + ", " + iv.hi.str() + "]";
  }
  r.notes.push_back("intervals: " + (fam.empty() ? std::string("none") : fam));
  for (auto& n : ex.notes) r.notes.push_back(std::move(n));
  return r;
}

/// (p&p) & (p&p) = p&p for every grid point.
inline ConditionReport check_idempotent_squares(TNorm const& t,
                                                std::span<Rational const> grid) {
  for (Rational p : grid) {
    Rational const s = t(p, p);
    Rational const ss = t(s, s);
    if (ss != s) {
      return detail::make_report(
          Condition::IdempotentSquares, t,
          Witness{{{"p", p}}, {}, ss, s, "(p&p)&(p&p) vs p&p"});
    }
  }
  return detail::make_report(Condition::IdempotentSquares, t, std::nullopt);
}

namespace detail {

/// Axiom checks for an arbitrary binary operation on grid points. Left
/// continuity is probed along b - 1/n, n <= depth, at every breakpoint b > 0:
/// on the continuous pieces of every supported family the operation is
/// 1-Lipschitz, so a left-continuous operation keeps the gap to the value at
/// b within 1/depth, and a jump from the left shows up as a larger gap.
template <typename Op>
std::optional<Witness> find_axiom_violation(Op const& op,
                                            std::span<Rational const> grid,
                                            std::span<Rational const> breakpoints,
                                            int depth) {
  Rational const one(1);
  auto fail = [](std::string what, std::vector<std::pair<std::string, Rational>> at,
                 Rational lhs, Rational rhs) {
    return Witness{std::move(at), {}, lhs, rhs, std::move(what)};
  };
  for (Rational p : grid) {
    if (op(one, p) != p) return fail("unit", {{"p", p}}, op(one, p), p);
    for (Rational q : grid) {
      Rational const pq = op(p, q);
      if (pq != op(q, p)) {
        return fail("commutativity", {{"p", p}, {"q", q}}, pq, op(q, p));
      }
      for (Rational u : grid) {
        Rational const l = op(pq, u);
        Rational const r = op(p, op(q, u));
        if (l != r) {
          return fail("associativity", {{"p", p}, {"q", q}, {"u", u}}, l, r);
        }
        if (p <= u && pq > op(u, q)) {
          return fail("monotonicity", {{"p", p}, {"p'", u}, {"q", q}}, pq,
                      op(u, q));
        }
      }
    }
  }
  Rational const tol(1, depth);
  for (Rational b : breakpoints) {
    if (b <= Rational(0)) continue;
    for (Rational q : grid) {
      Rational const at = op(b, q);
      Rational sup(0);
      Rational prev(-1);
      for (int n = 1; n <= depth; ++n) {
        Rational const x = b - Rational(1, n);
        if (x < Rational(0)) continue;
        Rational const v = op(x, q);
        if (v < prev) {
          return fail("left-continuity: non-monotone approach",
                      {{"b", b}, {"q", q}, {"x", x}}, v, prev);
        }
        prev = v;
        sup = max(sup, v);
      }
      if (at - sup > tol) {
        return fail("left-continuity", {{"b", b}, {"q", q}}, sup, at);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Unit, commutativity, associativity, monotonicity and left continuity on
/// the grid. Always grid evidence.
inline ConditionReport verify_tnorm_axioms(TNorm const& t,
                                           std::span<Rational const> grid,
                                           int depth = 64) {
  auto const bp = t.breakpoints();
  auto w = detail::find_axiom_violation(t, grid, bp, depth);
  ConditionReport r{Condition::TNormAxioms};
  r.passed = !w.has_value();
  r.certified = !r.passed;
  r.witness = std::move(w);
  for (auto const& iv : t.intervals()) {
    if (iv.degenerate()) {
      r.notes.push_back("degenerate interval [" + iv.lo.str() + ", " +
                        iv.hi.str() + "] acts as a no-op");
    }
  }
  return r;
}

}  // namespace tnormcat
