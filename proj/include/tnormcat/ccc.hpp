#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnormcat/category.hpp"
#include "tnormcat/conditions.hpp"
#include "tnormcat/exponential.hpp"
#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"

namespace tnormcat {

/// Three functors f, g, h : X -> Y whose function-space homs break
/// transitivity, built from a C1 violation (p, q, u).
///
/// X = {x, y} with r(x,y) = u and r(y,x) = 0; Y is the finite piece of
/// ([0,1], residuum) on the images of
///   f(z) = r(x,z),   g(z) = p ^ r(x,z),
///   h(z) = (p & (q ^ r(x,z))) v ((p ^ u) & (q ^ r(y,z))).
struct CounterexampleBundle {
  Rational p, q, u;
  RCat domain;
  UnitIntervalCat values;
  Assignment f, g, h;
  Rational d_fg, d_gh, d_fh;
  /// (p&q) ^ u, which exceeds h(y) exactly when C1 fails.
  Rational c1_lhs;
  Rational h_y;
  /// (d(f,g) & d(g,h)) ^ u against d(f,h) ^ u.
  Rational chain_lhs;
  Rational chain_rhs;
  /// Raw transitivity sides d(g,h) & d(f,g) and d(f,h).
  Rational transitivity_lhs;
  Rational transitivity_rhs;

  /// d(f,g) >= p, d(g,h) >= q and the chain inequality fails strictly.
  [[nodiscard]] bool certifies() const {
    return d_fg >= p && d_gh >= q && chain_lhs > chain_rhs &&
           transitivity_lhs > transitivity_rhs && c1_lhs > h_y;
  }
};

/// Throws PreconditionError unless (p, q, u) violates C1 for t.
inline CounterexampleBundle counterexample(TNorm const& t, Rational p, Rational q,
                                           Rational u) {
  for (Rational v : {p, q, u}) {
    if (!v.is_truth_value()) throw PreconditionError(v.str() + " outside [0,1]");
  }
  if (c1_lhs(t, p, q, u) == c1_rhs(t, p, q, u)) {
    throw PreconditionError("(" + p.str() + ", " + q.str() + ", " + u.str() +
                            ") satisfies C1; no counterexample exists there");
  }
  Rational const zero(0), one(1);
  CounterexampleBundle b{p, q, u};
  b.domain = RCat({"x", "y"}, {{one, u}, {zero, one}});
  auto r = [&](std::size_t a, std::size_t c) { return b.domain.hom(a, c); };

  std::vector<Rational> f_vals, g_vals, h_vals;
  for (std::size_t z = 0; z < 2; ++z) {
    f_vals.push_back(r(0, z));
    g_vals.push_back(min(p, r(0, z)));
    h_vals.push_back(max(t(p, min(q, r(0, z))), t(min(p, u), min(q, r(1, z)))));
  }
  std::vector<Rational> pts = f_vals;
  pts.insert(pts.end(), g_vals.begin(), g_vals.end());
  pts.insert(pts.end(), h_vals.begin(), h_vals.end());
  b.values = unit_interval_category(t, pts);
  for (std::size_t z = 0; z < 2; ++z) {
    b.f.push_back(b.values.index_of(f_vals[z]));
    b.g.push_back(b.values.index_of(g_vals[z]));
    b.h.push_back(b.values.index_of(h_vals[z]));
  }
  RCat const& y = b.values.category;
  for (auto const* m : {&b.f, &b.g, &b.h}) {
    if (auto v = is_functor(*m, b.domain, y); !v) {
      throw std::logic_error("counterexample map is not a functor: " + v.violation->detail);
    }
  }
  b.d_fg = power_hom(b.domain, y, b.f, b.g);
  b.d_gh = power_hom(b.domain, y, b.g, b.h);
  b.d_fh = power_hom(b.domain, y, b.f, b.h);
  b.c1_lhs = min(t(p, q), u);
  b.h_y = h_vals[1];
  b.chain_lhs = min(t(b.d_fg, b.d_gh), u);
  b.chain_rhs = min(b.d_fh, u);
  b.transitivity_lhs = t(b.d_gh, b.d_fg);
  b.transitivity_rhs = b.d_fh;
  return b;
}

struct CccReport {
  ConditionReport verdict{Condition::CartesianClosed};
  ConditionReport c1{Condition::C1};
  std::optional<CounterexampleBundle> counterexample;
  std::size_t categories = 0;
  std::size_t triples = 0;
};

/// C1 on the grid decides the t-norm side. On pass, currying is checked for
/// every triple of enumerated categories with at most max_size elements and
/// hom values from the grid; on failure the C1 witness is turned into a
/// counterexample bundle.
inline CccReport check_ccc(TNorm const& t, std::span<Rational const> grid,
                           std::size_t max_size,
                           std::uint64_t budget = kDefaultBudget) {
  CccReport rep;
  rep.c1 = check_c1(t, grid);
  if (!rep.c1.passed) {
    Witness const& w = *rep.c1.witness;
    rep.counterexample = counterexample(t, w.value("p"), w.value("q"), w.value("u"));
    rep.verdict.passed = false;
    rep.verdict.certified = true;
    rep.verdict.witness = Witness{w.values, {},
                                  rep.counterexample->transitivity_lhs,
                                  rep.counterexample->transitivity_rhs,
                                  "d(g,h) & d(f,g) vs d(f,h) in the function space"};
    return rep;
  }

  auto const cats = enumerate_categories(t, grid, max_size, budget);
  rep.categories = cats.size();
  std::uint64_t const triples = detail::saturating_pow(cats.size(), 3);
  if (triples > budget) throw BudgetExceeded("currying triples", triples, budget);

  for (std::size_t i = 0; i < cats.size(); ++i) {
    for (std::size_t j = 0; j < cats.size(); ++j) {
      PowerObject const power = exponential(cats[i], cats[j], budget);
      for (std::size_t k = 0; k < cats.size(); ++k) {
        ++rep.triples;
        if (auto o = check_currying(t, power, cats[k], budget); !o) {
          rep.verdict.passed = false;
          rep.verdict.certified = true;
          auto const& v = *o.violation;
          rep.verdict.witness = Witness{
              {},
              {{"x", "#" + std::to_string(i)}, {"y", "#" + std::to_string(j)},
               {"z", "#" + std::to_string(k)}},
              v.lhs.value_or(Rational(0)),
              v.rhs.value_or(Rational(0)),
              v.kind + ": " + v.detail};
          return rep;
        }
      }
    }
  }
  rep.verdict.passed = true;
  rep.verdict.certified = detail::closed_form_certifies(t);
  rep.verdict.notes.push_back("currying verified on " + std::to_string(rep.triples) +
                              " triples over " + std::to_string(rep.categories) +
                              " categories");
  return rep;
}

}  // namespace tnormcat
