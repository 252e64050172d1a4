#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tnormcat/category.hpp"
#include "tnormcat/conditions.hpp"
#include "tnormcat/exponential.hpp"
#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"

namespace tnormcat {

/// An eventually periodic sequence: the prefix, then the cycle forever.
/// Indexed by the naturals, so every tail is "for all later indices".
class TailSeq {
 public:
  TailSeq(std::shared_ptr<RCat const> carrier, std::vector<std::size_t> prefix,
          std::vector<std::size_t> cycle)
      : carrier_(std::move(carrier)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (!carrier_) throw std::invalid_argument("sequence without carrier");
    if (cycle_.empty()) throw std::invalid_argument("sequence cycle must be nonempty");
    for (std::size_t i : prefix_) check_index(i);
    for (std::size_t i : cycle_) check_index(i);
  }

  static TailSeq from_labels(std::shared_ptr<RCat const> carrier,
                             std::vector<std::string> const& prefix,
                             std::vector<std::string> const& cycle) {
    auto resolve = [&](std::vector<std::string> const& labels) {
      std::vector<std::size_t> out;
      for (auto const& l : labels) {
        auto i = carrier->index_of(l);
        if (!i) throw std::invalid_argument("sequence element '" + l + "' not in carrier");
        out.push_back(*i);
      }
      return out;
    };
    auto p = resolve(prefix);
    auto c = resolve(cycle);
    return TailSeq(std::move(carrier), std::move(p), std::move(c));
  }

  [[nodiscard]] RCat const& carrier() const noexcept { return *carrier_; }
  [[nodiscard]] std::shared_ptr<RCat const> const& carrier_ptr() const noexcept {
    return carrier_;
  }
  [[nodiscard]] std::vector<std::size_t> const& prefix() const noexcept { return prefix_; }
  [[nodiscard]] std::vector<std::size_t> const& cycle() const noexcept { return cycle_; }

  /// Element at index n.
  [[nodiscard]] std::size_t at(std::size_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    return cycle_[(n - prefix_.size()) % cycle_.size()];
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= carrier_->size()) throw std::invalid_argument("sequence index out of range");
  }

  std::shared_ptr<RCat const> carrier_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> cycle_;
};

enum class Direction {
  FromSeq,  // sup_l inf_{m >= l} hom(x_m, x)
  ToSeq,    // sup_l inf_{m >= l} hom(x, x_m)
};

/// Exact sup-over-tails of the inf: every tail of an eventually periodic
/// sequence contains the whole cycle, so this is the minimum over the cycle.
inline Rational tail_value(TailSeq const& seq, std::size_t x, Direction dir) {
  RCat const& c = seq.carrier();
  Rational v(1);
  for (std::size_t e : seq.cycle()) {
    v = min(v, dir == Direction::FromSeq ? c.hom(e, x) : c.hom(x, e));
  }
  return v;
}

/// Pass, or the first cycle pair (by position) with hom below 1.
inline Outcome is_cauchy(TailSeq const& seq) {
  RCat const& c = seq.carrier();
  auto const& cy = seq.cycle();
  for (std::size_t i = 0; i < cy.size(); ++i) {
    for (std::size_t j = 0; j < cy.size(); ++j) {
      Rational const h = c.hom(cy[i], cy[j]);
      if (h != Rational(1)) {
        return Outcome::fail({"cauchy", {c.label(cy[i]), c.label(cy[j])}, h,
                              Rational(1), "tail hom below 1"});
      }
    }
  }
  return Outcome::pass();
}

/// Forward Cauchy: hom(x_m, x_g) -> 1 over m <= g. Position j reaches every
/// cycle position i within the next period, so on eventually periodic
/// sequences this coincides with is_cauchy; the coincidence is asserted.
inline Outcome is_forward_cauchy(TailSeq const& seq) {
  RCat const& c = seq.carrier();
  auto const& cy = seq.cycle();
  std::size_t const len = cy.size();
  std::optional<Violation> first;
  for (std::size_t i = 0; i < len && !first; ++i) {
    for (std::size_t j = i; j < i + len; ++j) {
      Rational const h = c.hom(cy[i], cy[j % len]);
      if (h != Rational(1)) {
        first = Violation{"forward-cauchy", {c.label(cy[i]), c.label(cy[j % len])},
                          h, Rational(1), "tail hom below 1 along m <= g"};
        break;
      }
    }
  }
  if (first.has_value() == is_cauchy(seq).passed()) {
    throw std::logic_error("forward Cauchy and Cauchy disagree on a periodic tail");
  }
  return first ? Outcome::fail(std::move(*first)) : Outcome::pass();
}

struct CertificateRow {
  std::string element;
  Rational from_seq;  // sup inf hom(x_m, x)
  Rational to_seq;    // sup inf hom(x, x_m)
  Rational hom_from_limit;
  Rational hom_to_limit;
};

enum class LimitKind { Bilimit, YonedaLimit, None };

struct LimitVerdict {
  LimitKind kind = LimitKind::None;
  std::optional<std::size_t> witness;
  std::vector<CertificateRow> certificate;
};

namespace detail {

inline std::vector<CertificateRow> certificate(TailSeq const& seq,
                                               std::optional<std::size_t> a) {
  RCat const& c = seq.carrier();
  std::vector<CertificateRow> rows;
  for (std::size_t x = 0; x < c.size(); ++x) {
    rows.push_back({c.label(x), tail_value(seq, x, Direction::FromSeq),
                    tail_value(seq, x, Direction::ToSeq),
                    a ? c.hom(*a, x) : Rational(0), a ? c.hom(x, *a) : Rational(0)});
  }
  return rows;
}

/// Both tail distances between a and the sequence equal 1.
inline bool bilimit_condition(TailSeq const& seq, std::size_t a) {
  return tail_value(seq, a, Direction::ToSeq) == Rational(1) &&
         tail_value(seq, a, Direction::FromSeq) == Rational(1);
}

}  // namespace detail

/// Every element satisfying the bilimit condition, in element order.
inline std::vector<std::size_t> all_bilimits(TailSeq const& seq) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < seq.carrier().size(); ++a) {
    if (detail::bilimit_condition(seq, a)) out.push_back(a);
  }
  return out;
}

/// First element whose tail distances to and from the sequence are both 1.
/// The defining equalities hom(a,x) = from-tail(x), hom(x,a) = to-tail(x) are
/// re-checked on the result for every x.
inline LimitVerdict find_bilimit(TailSeq const& seq) {
  LimitVerdict v;
  RCat const& c = seq.carrier();
  for (std::size_t a = 0; a < c.size(); ++a) {
    if (!detail::bilimit_condition(seq, a)) continue;
    v.kind = LimitKind::Bilimit;
    v.witness = a;
    v.certificate = detail::certificate(seq, a);
    for (auto const& row : v.certificate) {
      if (row.hom_from_limit != row.from_seq || row.hom_to_limit != row.to_seq) {
        throw std::logic_error("bilimit " + c.label(a) +
                               " fails the defining equality at " + row.element);
      }
    }
    return v;
  }
  v.certificate = detail::certificate(seq, std::nullopt);
  return v;
}

/// First a with hom(a, x) = from-tail(x) for every x. Throws
/// PreconditionError unless the sequence is forward Cauchy.
inline LimitVerdict find_yoneda_limit(TailSeq const& seq) {
  if (auto fc = is_forward_cauchy(seq); !fc) {
    throw PreconditionError("sequence is not forward Cauchy: hom(" +
                            fc.violation->at[0] + ", " + fc.violation->at[1] +
                            ") = " + fc.violation->lhs->str());
  }
  RCat const& c = seq.carrier();
  std::vector<Rational> from(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) from[x] = tail_value(seq, x, Direction::FromSeq);
  LimitVerdict v;
  for (std::size_t a = 0; a < c.size(); ++a) {
    bool match = true;
    for (std::size_t x = 0; x < c.size() && match; ++x) match = c.hom(a, x) == from[x];
    if (match) {
      v.kind = LimitKind::YonedaLimit;
      v.witness = a;
      v.certificate = detail::certificate(seq, a);
      return v;
    }
  }
  v.certificate = detail::certificate(seq, std::nullopt);
  return v;
}

/// All cycles of length 1..max_length over the carrier, empty prefix.
inline std::vector<TailSeq> enumerate_cycles(std::shared_ptr<RCat const> const& carrier,
                                             std::size_t max_length,
                                             std::uint64_t budget = kDefaultBudget) {
  std::vector<TailSeq> out;
  std::uint64_t total = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    total += detail::saturating_pow(carrier->size(), len);
    if (total > budget) throw BudgetExceeded("cycle enumeration", total, budget);
  }
  for (std::size_t len = 1; len <= max_length; ++len) {
    for_each_map(len, carrier->size(), [&](Assignment const& cyc) {
      out.emplace_back(carrier, std::vector<std::size_t>{}, cyc);
    });
  }
  return out;
}

/// Every Cauchy cycle of length <= max_cycle has a bilimit.
inline Outcome is_cauchy_complete(RCat const& cat, std::size_t max_cycle,
                                  std::uint64_t budget = kDefaultBudget) {
  auto const carrier = std::make_shared<RCat const>(cat);
  for (auto const& seq : enumerate_cycles(carrier, max_cycle, budget)) {
    if (!is_cauchy(seq)) continue;
    if (find_bilimit(seq).kind == LimitKind::None) {
      std::vector<std::string> labels;
      for (std::size_t e : seq.cycle()) labels.push_back(cat.label(e));
      return Outcome::fail({"no-bilimit", labels, {}, {}, "Cauchy cycle without bilimit"});
    }
  }
  return Outcome::pass();
}

/// The sequence n -> (a_n, b_n) in the product of the two carriers.
inline TailSeq pair_sequences(TailSeq const& a, TailSeq const& b,
                              std::shared_ptr<RCat const> product_carrier) {
  std::size_t const start = std::max(a.prefix().size(), b.prefix().size());
  std::size_t const period = std::lcm(a.cycle().size(), b.cycle().size());
  std::size_t const right = b.carrier().size();
  std::vector<std::size_t> prefix, cycle;
  for (std::size_t n = 0; n < start; ++n) prefix.push_back(pair_index(a.at(n), b.at(n), right));
  for (std::size_t n = start; n < start + period; ++n) {
    cycle.push_back(pair_index(a.at(n), b.at(n), right));
  }
  return TailSeq(std::move(product_carrier), std::move(prefix), std::move(cycle));
}

/// Pairs two Cauchy sequences with bilimits a, b and checks that (a, b) is a
/// bilimit of the paired sequence in the product. Throws PreconditionError if
/// either input is not Cauchy or lacks a bilimit.
inline Outcome check_product_bilimit(TailSeq const& a_seq, TailSeq const& b_seq) {
  auto const limit_of = [](TailSeq const& s, char const* name) {
    if (!is_cauchy(s)) throw PreconditionError(std::string(name) + " sequence is not Cauchy");
    auto v = find_bilimit(s);
    if (!v.witness) throw PreconditionError(std::string(name) + " sequence has no bilimit");
    return *v.witness;
  };
  std::size_t const a = limit_of(a_seq, "first");
  std::size_t const b = limit_of(b_seq, "second");
  auto const prod = std::make_shared<RCat const>(product(a_seq.carrier(), b_seq.carrier()));
  TailSeq const paired = pair_sequences(a_seq, b_seq, prod);
  std::size_t const ab = pair_index(a, b, b_seq.carrier().size());
  if (!detail::bilimit_condition(paired, ab)) {
    return Outcome::fail({"product-bilimit", {prod->label(ab)},
                          tail_value(paired, ab, Direction::ToSeq),
                          tail_value(paired, ab, Direction::FromSeq),
                          "paired limit is not a bilimit"});
  }
  for (std::size_t x = 0; x < prod->size(); ++x) {
    if (prod->hom(ab, x) != tail_value(paired, x, Direction::FromSeq) ||
        prod->hom(x, ab) != tail_value(paired, x, Direction::ToSeq)) {
      return Outcome::fail({"product-bilimit", {prod->label(ab), prod->label(x)},
                            prod->hom(ab, x), tail_value(paired, x, Direction::FromSeq),
                            "defining equality fails"});
    }
  }
  return Outcome::pass();
}

struct PowerCompletenessOptions {
  std::size_t max_cycle = 3;
  std::uint64_t budget = kDefaultBudget;
  int grid_size = 40;
};

/// Builds the function space and checks that it is Cauchy complete over
/// cycles of functors, and that for every forward-Cauchy cycle the pointwise
/// limit x -> lim f_n(x) is a functor isomorphic to the bilimit found in the
/// function space. Requires C1 on the canonical grid.
inline Outcome check_power_completeness(TNorm const& t, RCat const& base,
                                        RCat const& fiber,
                                        PowerCompletenessOptions const& opt = {}) {
  if (auto c1 = check_c1(t, canonical_grid(t, opt.grid_size)); !c1.passed) {
    throw PreconditionError("t-norm fails C1; function spaces need not be categories");
  }
  PowerObject const power = exponential(base, fiber, opt.budget);
  auto const pcat = std::make_shared<RCat const>(power.category);
  auto const fib = std::make_shared<RCat const>(fiber);

  if (auto o = is_cauchy_complete(*pcat, opt.max_cycle, opt.budget); !o) return o;

  for (auto const& seq : enumerate_cycles(pcat, opt.max_cycle, opt.budget)) {
    if (!is_forward_cauchy(seq)) continue;
    Assignment pointwise(base.size());
    for (std::size_t x = 0; x < base.size(); ++x) {
      std::vector<std::size_t> column;
      for (std::size_t k : seq.cycle()) column.push_back(power.functors[k][x]);
      TailSeq const at_x(fib, {}, column);
      auto lim = find_bilimit(at_x);
      if (!is_cauchy(at_x) || !lim.witness) {
        return Outcome::fail({"pointwise-limit", {functor_label(*pcat, seq.cycle()), base.label(x)},
                              {}, {}, "pointwise sequence has no bilimit"});
      }
      pointwise[x] = *lim.witness;
    }
    auto idx = power.index_of(pointwise);
    if (!idx) {
      return Outcome::fail({"pointwise-limit", {functor_label(*pcat, seq.cycle()),
                                                functor_label(fiber, pointwise)},
                            {}, {}, "pointwise limit is not a functor"});
    }
    auto found = find_bilimit(seq);
    if (!found.witness || !pcat->isomorphic(*found.witness, *idx)) {
      return Outcome::fail({"pointwise-limit", {functor_label(*pcat, seq.cycle()),
                                                pcat->label(*idx)},
                            {}, {}, "pointwise limit differs from the bilimit"});
    }
  }
  return Outcome::pass();
}

/// Per-sequence outcome of a continuity check.
struct SequenceCheck {
  enum class Status { Ok, PreconditionFailed, Violated };
  Status status = Status::Ok;
  std::string detail;
};

struct ContinuityReport {
  std::vector<SequenceCheck> sequences;

  [[nodiscard]] bool passed() const {
    for (auto const& s : sequences) {
      if (s.status == SequenceCheck::Status::Violated) return false;
    }
    return true;
  }
  [[nodiscard]] std::size_t count(SequenceCheck::Status st) const {
    std::size_t n = 0;
    for (auto const& s : sequences) n += s.status == st ? 1 : 0;
    return n;
  }
};

/// For each forward-Cauchy sequence with a Yoneda limit a in the source,
/// checks that the image sequence has a Yoneda limit isomorphic to f(a).
/// Sequences failing the precondition are reported, not counted as
/// violations.
inline ContinuityReport check_yoneda_continuity(std::span<std::size_t const> f,
                                                RCat const& src,
                                                std::shared_ptr<RCat const> const& dst,
                                                std::span<TailSeq const> seqs) {
  using Status = SequenceCheck::Status;
  if (auto o = is_functor(f, src, *dst); !o) {
    throw PreconditionError("map is not a functor: " + o.violation->detail);
  }
  ContinuityReport rep;
  for (auto const& seq : seqs) {
    if (seq.carrier() != src) {
      rep.sequences.push_back({Status::PreconditionFailed, "sequence not in source"});
      continue;
    }
    if (!is_forward_cauchy(seq)) {
      rep.sequences.push_back({Status::PreconditionFailed, "not forward Cauchy"});
      continue;
    }
    auto const lim = find_yoneda_limit(seq);
    if (!lim.witness) {
      rep.sequences.push_back({Status::PreconditionFailed, "no Yoneda limit in source"});
      continue;
    }
    std::vector<std::size_t> prefix, cycle;
    for (std::size_t e : seq.prefix()) prefix.push_back(f[e]);
    for (std::size_t e : seq.cycle()) cycle.push_back(f[e]);
    TailSeq const image(dst, std::move(prefix), std::move(cycle));
    std::size_t const fa = f[*lim.witness];
    if (!is_forward_cauchy(image)) {
      rep.sequences.push_back({Status::Violated, "image not forward Cauchy"});
      continue;
    }
    auto const image_lim = find_yoneda_limit(image);
    if (!image_lim.witness) {
      rep.sequences.push_back({Status::Violated, "image has no Yoneda limit"});
    } else if (!dst->isomorphic(*image_lim.witness, fa)) {
      rep.sequences.push_back({Status::Violated, "lim f(x_n) = " + dst->label(*image_lim.witness) +
                                                     " but f(lim x_n) = " + dst->label(fa)});
    } else {
      rep.sequences.push_back({Status::Ok, {}});
    }
  }
  return rep;
}

}  // namespace tnormcat
