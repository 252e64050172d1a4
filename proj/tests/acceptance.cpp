// Acceptance gate: one PASS/FAIL line per criterion, each with its own
// runtime limit. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tnormcat/tnormcat.hpp"

using namespace tnormcat;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

/// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  std::vector<std::string> notes;

  void require(bool ok, std::string const& msg) {
    if (!ok && failure.empty()) failure = msg;
  }
  [[nodiscard]] bool ok() const { return failure.empty(); }
};

TNorm quarter_collapse() { return TNorm::interval_collapse({{R(1, 4), R(1, 2)}}); }

std::vector<Rational> six_point_grid() {
  return {R(0), R(1, 4), R(3, 8), R(1, 2), R(3, 4), R(1)};
}

std::vector<TNorm> collapse_families() {
  return {quarter_collapse(),
          TNorm::interval_collapse({{R(1, 5), R(1, 2)}}),
          TNorm::interval_collapse({{R(0), R(1, 3)}, {R(1, 2), R(9, 10)}}),
          TNorm::interval_collapse({{R(1, 8), R(1, 4)}, {R(3, 8), R(1, 2)}, {R(5, 8), R(7, 8)}}),
          TNorm::interval_collapse({{R(1, 10), R(1, 10)}, {R(1, 3), R(2, 3)}})};
}

RCat half_chain() { return RCat({"x", "y"}, {{R(1), R(1, 2)}, {R(0), R(1)}}); }

std::string str(Rational r) { return r.str(); }

// 1. C1, C2 and interval extraction agree per family; failures replay.
void criterion1(Check& c) {
  std::vector<std::pair<TNorm, bool>> cases{{TNorm::minimum(), true},
                                            {TNorm::product(), false},
                                            {TNorm::lukasiewicz(), false},
                                            {TNorm::nilpotent_minimum(), false}};
  for (auto const& t : collapse_families()) cases.emplace_back(t, true);
  for (auto const& [t, expected] : cases) {
    std::string const name(family_name(t.family()));
    auto const grid = canonical_grid(t, 40);
    auto c1 = check_c1(t, grid);
    auto c2 = check_c2(t, grid);
    auto ex = extract_intervals(t, 40);
    c.require(c1.passed == expected && c2.passed == expected && ex.ok() == expected,
              name + ": verdicts disagree or unexpected");
    if (expected) {
      std::vector<Interval> want;
      for (auto const& iv : t.intervals()) {
        if (!iv.degenerate()) want.push_back(iv);
      }
      c.require(ex.intervals == want, name + ": extracted intervals differ");
      continue;
    }
    // Replay: the witness values alone reproduce each failure.
    auto const& w1 = *c1.witness;
    std::vector<Rational> g1{w1.value("p"), w1.value("q"), w1.value("u")};
    c.require(!check_c1(t, g1).passed, name + ": C1 witness does not replay");
    auto const& w2 = *c2.witness;
    std::vector<Rational> g2{w2.value("p"), w2.value("u")};
    c.require(!check_c2(t, g2).passed, name + ": C2 witness does not replay");
    c.require(lift_c2_witness(t, w2).has_value(), name + ": C2 witness does not lift");
    c.require(!check_interval_form(t, g2, 40).passed, name + ": interval form replay");
  }
}

// 2. Currying passes for every triple; every power is a category.
void criterion2(Check& c) {
  for (auto const& t : {TNorm::minimum(), quarter_collapse()}) {
    std::string const name(family_name(t.family()));
    auto const cats = enumerate_categories(t, six_point_grid(), 2);
    std::size_t triples = 0;
    for (auto const& x : cats) {
      for (auto const& y : cats) {
        PowerObject const power = exponential(x, y);
        c.require(static_cast<bool>(validate(power.category, t)),
                  name + ": power is not a category");
        for (auto const& z : cats) {
          ++triples;
          auto o = check_currying(t, power, z);
          c.require(static_cast<bool>(o), name + ": currying fails: " +
                                              (o.violation ? o.violation->kind : ""));
        }
      }
    }
    c.notes.push_back(name + " " + std::to_string(cats.size()) + " categories, " +
                      std::to_string(triples) + " triples");
  }
}

// 3. Counterexample bundles for the three non-C1 families.
void criterion3(Check& c) {
  for (auto const& t : {TNorm::product(), TNorm::lukasiewicz(), TNorm::nilpotent_minimum()}) {
    std::string const name(family_name(t.family()));
    auto const start = std::chrono::steady_clock::now();
    auto w = check_c1(t, canonical_grid(t, 40));
    c.require(!w.passed, name + ": no C1 witness");
    if (w.passed) continue;
    Rational const p = w.witness->value("p"), q = w.witness->value("q"),
                   u = w.witness->value("u");
    auto b = counterexample(t, p, q, u);
    auto const& y = b.values.category;
    c.require(b.d_fg >= p && b.d_gh >= q, name + ": d(f,g) or d(g,h) too small");
    c.require(b.transitivity_lhs > b.transitivity_rhs, name + ": transitivity holds");
    c.require(b.chain_lhs > b.chain_rhs, name + ": chain inequality holds");
    c.require(b.d_fg == oracle::power_hom_by_scan(b.domain, y, b.f, b.g, b.values.points) &&
                  b.d_gh == oracle::power_hom_by_scan(b.domain, y, b.g, b.h, b.values.points) &&
                  b.d_fh == oracle::power_hom_by_scan(b.domain, y, b.f, b.h, b.values.points),
              name + ": homs differ from scan oracle");
    auto const ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    c.require(ms < 1000.0, name + ": bundle took over 1 s");
    c.notes.push_back(name + " (" + str(p) + "," + str(q) + "," + str(u) + "): " +
                      str(b.chain_lhs) + " vs " + str(b.chain_rhs));
  }
  auto b = counterexample(TNorm::lukasiewicz(), R(9, 10), R(9, 10), R(1, 2));
  c.require(b.chain_lhs == R(1, 2) && b.chain_rhs == R(2, 5),
            "lukasiewicz (9/10,9/10,1/2): expected 1/2 vs 2/5, got " + str(b.chain_lhs) +
                " vs " + str(b.chain_rhs));
}

// 4. The half chain is exponentiable under Minimum, not under Lukasiewicz.
void criterion4(Check& c) {
  auto l = TNorm::lukasiewicz();
  auto m = TNorm::minimum();
  c.require(!check_exponentiable(l, half_chain(), canonical_grid(l, 40)).passed,
            "lukasiewicz passes");
  c.require(check_exponentiable(m, half_chain(), canonical_grid(m, 40)).passed,
            "minimum fails");
}

// 5. Idempotent squares under C2; Product fails at 9/10.
void criterion5(Check& c) {
  std::vector<TNorm> families = collapse_families();
  families.push_back(TNorm::minimum());
  for (auto const& t : families) {
    auto const grid = canonical_grid(t, 40);
    if (!check_c2(t, grid).passed) continue;
    c.require(check_idempotent_squares(t, grid).passed,
              std::string(family_name(t.family())) + ": idempotent squares fail");
  }
  auto r = check_idempotent_squares(TNorm::product(), std::vector<Rational>{R(9, 10)});
  c.require(!r.passed, "product at 9/10 passes");
}

TNorm generator_tnorm(int k) {
  switch (k % 3) {
    case 0: return TNorm::minimum();
    case 1: return quarter_collapse();
    default: return TNorm::lukasiewicz();
  }
}

/// Random cycle of a random Cauchy class: picks an element and cycles
/// through elements isomorphic to it.
TailSeq random_cauchy_sequence(std::shared_ptr<RCat const> const& cat, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, cat->size() - 1);
  std::size_t const a = pick(rng);
  std::vector<std::size_t> iso;
  for (std::size_t e = 0; e < cat->size(); ++e) {
    if (cat->isomorphic(a, e)) iso.push_back(e);
  }
  std::uniform_int_distribution<std::size_t> len(1, 3), from(0, iso.size() - 1), pre(0, 2);
  std::vector<std::size_t> prefix(pre(rng)), cycle(len(rng));
  for (auto& e : prefix) e = pick(rng);
  for (auto& e : cycle) e = iso[from(rng)];
  return TailSeq(cat, prefix, cycle);
}

// 6. Cauchy completeness, product bilimits, bilimit uniqueness.
void criterion6(Check& c) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  auto const vals = oracle::eighths();
  std::size_t multi = 0;
  for (int i = 0; i < 50; ++i) {
    auto const t = generator_tnorm(i);
    auto const cat = std::make_shared<RCat const>(oracle::random_category(t, vals, size(rng), rng));
    c.require(static_cast<bool>(validate(*cat, t)), "generated category invalid");
    c.require(static_cast<bool>(is_cauchy_complete(*cat, 3)),
              "category " + std::to_string(i) + " not Cauchy complete");
    for (auto const& s : enumerate_cycles(cat, 3)) {
      auto const all = all_bilimits(s);
      if (all.size() > 1) ++multi;
      for (std::size_t a : all) {
        for (std::size_t b : all) {
          c.require(cat->hom(a, b) == R(1), "two bilimits not isomorphic");
        }
      }
    }
  }
  for (int i = 0; i < 20; ++i) {
    auto const t = generator_tnorm(i);
    auto const a = std::make_shared<RCat const>(oracle::random_category(t, vals, size(rng), rng));
    auto const b = std::make_shared<RCat const>(oracle::random_category(t, vals, size(rng), rng));
    auto o = check_product_bilimit(random_cauchy_sequence(a, rng), random_cauchy_sequence(b, rng));
    c.require(static_cast<bool>(o), "product bilimit " + std::to_string(i) + " fails");
  }
  c.notes.push_back(std::to_string(multi) + " multi-witness sequences");
}

/// Cycles up to length 2 plus every one-element prefix in front of them.
std::vector<TailSeq> sequences_over(std::shared_ptr<RCat const> const& cat) {
  std::vector<TailSeq> out;
  for (auto const& s : enumerate_cycles(cat, 2)) {
    out.push_back(s);
    for (std::size_t e = 0; e < cat->size(); ++e) out.emplace_back(cat, std::vector{e}, s.cycle());
  }
  return out;
}

// 7. Forward Cauchy sequences, Yoneda limits, continuity of functors and ev.
void criterion7(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(1, 3);
  auto const vals = oracle::eighths();
  std::vector<std::shared_ptr<RCat const>> cats;
  for (int i = 0; i < 12; ++i) {
    cats.push_back(std::make_shared<RCat const>(
        oracle::random_category(generator_tnorm(i), vals, size(rng), rng)));
  }
  // Isomorphic elements make the limit questions nontrivial.
  cats.push_back(std::make_shared<RCat const>(
      RCat({"a", "b", "c"},
           {{R(1), R(1), R(1, 4)}, {R(1), R(1), R(1, 4)}, {R(1, 2), R(1, 2), R(1)}})));

  std::size_t sequences = 0, functors = 0, checked = 0;
  for (auto const& cat : cats) {
    for (auto const& s : sequences_over(cat)) {
      ++sequences;
      if (!is_forward_cauchy(s)) continue;
      c.require(static_cast<bool>(is_cauchy(s)), "forward Cauchy but not Cauchy");
      auto const y = find_yoneda_limit(s);
      auto const b = find_bilimit(s);
      c.require(y.witness && b.witness && cat->isomorphic(*y.witness, *b.witness),
                "Yoneda limit and bilimit differ");
    }
  }
  for (auto const& src : cats) {
    auto const seqs = sequences_over(src);
    for (auto const& dst : cats) {
      for (auto const& f : all_functors(*src, *dst)) {
        ++functors;
        auto rep = check_yoneda_continuity(f, *src, dst, seqs);
        checked += rep.count(SequenceCheck::Status::Ok);
        c.require(rep.passed(), "functor not Yoneda continuous");
      }
    }
  }
  auto const t = quarter_collapse();
  auto const ui = unit_interval_category(t, {R(0), R(1, 4), R(1, 2), R(1)});
  for (auto const& base : enumerate_categories(t, six_point_grid(), 2)) {
    PowerObject const p = exponential(base, ui.category);
    auto const src = std::make_shared<RCat const>(product(p.base, p.category));
    auto const dst = std::make_shared<RCat const>(p.fiber);
    auto const rep = check_yoneda_continuity(evaluation_map(p), *src, dst,
                                             enumerate_cycles(src, 2));
    checked += rep.count(SequenceCheck::Status::Ok);
    c.require(rep.passed(), "evaluation map not Yoneda continuous");
  }
  c.notes.push_back(std::to_string(sequences) + " sequences, " + std::to_string(functors) +
                    " functors, " + std::to_string(checked) + " continuity checks");
}

// 8. Function spaces are complete and limits are pointwise.
void criterion8(Check& c) {
  auto const t = quarter_collapse();
  auto const cats = enumerate_categories(t, six_point_grid(), 2);
  std::size_t pairs = 0;
  for (auto const& base : cats) {
    for (auto const& fiber : cats) {
      ++pairs;
      auto o = check_power_completeness(t, base, fiber, {.max_cycle = 3});
      c.require(static_cast<bool>(o), "power completeness fails: " +
                                          (o.violation ? o.violation->detail : ""));
    }
  }
  c.notes.push_back(std::to_string(pairs) + " base/fiber pairs");
}

// 9. Closed forms against brute force.
void criterion9(Check& c) {
  std::mt19937_64 rng(99);
  auto const vals = oracle::eighths();
  std::uniform_int_distribution<std::size_t> size(1, 3);
  std::size_t pairs = 0;
  int round = 0;
  while (pairs < 1000) {
    auto const t = generator_tnorm(round++);
    RCat const base = oracle::random_category(t, vals, size(rng), rng);
    RCat const fiber = oracle::random_category(t, vals, size(rng), rng);
    auto const fs = all_functors(base, fiber);
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    for (int k = 0; k < 10; ++k) {
      auto const& f = fs[pick(rng)];
      auto const& g = fs[pick(rng)];
      ++pairs;
      c.require(power_hom(base, fiber, f, g) ==
                    oracle::power_hom_by_scan(base, fiber, f, g, vals),
                "power hom differs from scan oracle");
    }
  }
  std::size_t seqs = 0;
  while (seqs < 1000) {
    auto const t = generator_tnorm(round++);
    auto const cat =
        std::make_shared<RCat const>(oracle::random_category(t, vals, size(rng) + 1, rng));
    std::uniform_int_distribution<std::size_t> pick(0, cat->size() - 1), len(1, 4), pre(0, 3);
    for (int k = 0; k < 10; ++k) {
      std::vector<std::size_t> prefix(pre(rng)), cycle(len(rng));
      for (auto& e : prefix) e = pick(rng);
      for (auto& e : cycle) e = pick(rng);
      TailSeq const s(cat, prefix, cycle);
      ++seqs;
      for (std::size_t x = 0; x < cat->size(); ++x) {
        for (auto dir : {Direction::FromSeq, Direction::ToSeq}) {
          Rational const three = oracle::truncated_tail_value(s, x, dir, 3);
          Rational const six = oracle::truncated_tail_value(s, x, dir, 6);
          c.require(three == six, "truncation horizons disagree");
          c.require(tail_value(s, x, dir) == three, "tail value differs from truncation");
        }
      }
    }
  }
  c.notes.push_back(std::to_string(pairs) + " functor pairs, " + std::to_string(seqs) +
                    " sequences");
}

struct Criterion {
  int id;
  double limit_ms;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> const criteria{
      {1, 10'000, criterion1}, {2, 60'000, criterion2}, {3, 3'000, criterion3},
      {4, 1'000, criterion4},  {5, 1'000, criterion5},  {6, 30'000, criterion6},
      {7, 60'000, criterion7}, {8, 60'000, criterion8}, {9, 30'000, criterion9},
  };
  int failed = 0;
  for (auto const& cr : criteria) {
    Check check;
    auto const start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (std::exception const& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    double const ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    check.require(ms < cr.limit_ms, "runtime over limit");
    std::ostringstream line;
    line << "criterion " << cr.id << ": " << (check.ok() ? "PASS" : "FAIL") << "  ("
         << static_cast<long>(ms) << " ms, limit " << static_cast<long>(cr.limit_ms) << " ms)";
    if (!check.ok()) line << "  " << check.failure;
    for (auto const& n : check.notes) line << "  [" << n << "]";
    std::puts(line.str().c_str());
    failed += check.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
