#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tnormcat/json_io.hpp"
#include "tnormcat/tnormcat.hpp"

namespace tnormcat::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kViolation = 2, kBudget = 3 };

struct Options {
  int grid = 40;
  std::optional<int> grid_override;
  std::size_t max_size = 2;
  std::size_t cycles = 3;
  std::string values;
  std::optional<std::uint64_t> budget;
  bool fail_on_violation = false;
  std::string format = "json";
  std::string output;
  std::vector<std::string> files;
};

inline std::vector<Rational> parse_values(std::string const& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  std::size_t pos = 0;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_truth_value(item));
    } catch (std::exception const& e) {
      throw io::InputError("--values item " + std::to_string(pos) + ": " + e.what());
    }
    ++pos;
  }
  if (out.empty()) throw io::InputError("--values: empty list");
  return out;
}

inline std::uint64_t effective_budget(Options const& o) {
  if (o.budget) return *o.budget;
  if (char const* env = std::getenv("TNORMCAT_BUDGET")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (std::exception const&) {
    }
    throw io::InputError(std::string("TNORMCAT_BUDGET: not a number: ") + env);
  }
  return kDefaultBudget;
}

/// Collects verdicts for one command and renders the report.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {
    doc_["command"] = command_;
    doc_["inputs"] = json::object();
    doc_["verdicts"] = json::array();
  }

  json& inputs() { return doc_["inputs"]; }

  void add(json verdict) {
    if (verdict.value("verdict", "pass") == "fail") any_failed_ = true;
    doc_["verdicts"].push_back(std::move(verdict));
  }

  void set(std::string const& key, json value) { doc_[key] = std::move(value); }
  void certified(bool c) { certified_ = c; }
  [[nodiscard]] bool any_failed() const { return any_failed_; }

  [[nodiscard]] std::string render(std::string const& format, std::int64_t millis) {
    doc_["certified"] = certified_;
    doc_["timing_ms"] = millis;
    if (format == "text") return render_text();
    return doc_.dump(2) + "\n";
  }

 private:
  [[nodiscard]] std::string render_text() const {
    std::ostringstream os;
    os << command_ << (certified_ ? " (certified)" : " (grid evidence)") << "\n";
    for (auto const& v : doc_["verdicts"]) {
      std::string name = v.contains("condition") ? v["condition"].get<std::string>()
                         : v.contains("check")   ? v["check"].get<std::string>()
                                                 : std::string("result");
      os << "  " << name << ": " << v.value("verdict", "-");
      if (v.contains("witness") && !v["witness"].is_null()) os << "  witness " << v["witness"].dump();
      os << "\n";
    }
    for (auto const& [k, val] : doc_.items()) {
      if (k == "command" || k == "inputs" || k == "verdicts" || k == "certified" ||
          k == "timing_ms") {
        continue;
      }
      os << "  " << k << ": " << val.dump() << "\n";
    }
    os << "  timing_ms: " << doc_["timing_ms"].dump() << "\n";
    return os.str();
  }

  std::string command_;
  json doc_;
  bool certified_ = true;
  bool any_failed_ = false;
};

inline RCat load_valid_category(std::string const& path, TNorm const& t) {
  RCat c = io::category_from_json(io::load_file(path), path);
  if (auto v = validate(c, t); !v) {
    std::string at;
    for (auto const& e : v.violation->at) at += (at.empty() ? "" : ",") + e;
    throw io::InputError(path + ": not a category under this t-norm: " + v.violation->kind +
                         " fails at (" + at + ")");
  }
  return c;
}

inline std::vector<Rational> grid_for(Options const& o, TNorm const& t) {
  if (!o.values.empty()) return parse_values(o.values);
  return canonical_grid(t, o.grid);
}

inline json grid_json(std::vector<Rational> const& g) {
  json a = json::array();
  for (Rational r : g) a.push_back(r.str());
  return a;
}

inline void cmd_check_tnorm(Options const& o, TNorm const& t, Report& rep) {
  auto const grid = grid_for(o, t);
  rep.inputs()["grid"] = grid_json(grid);
  auto c1 = check_c1(t, grid);
  auto c2 = check_c2(t, grid);
  auto c3 = check_interval_form(t, grid, o.grid);
  auto ax = verify_tnorm_axioms(t, grid);
  auto sq = check_idempotent_squares(t, grid);
  bool const agree = c1.passed == c2.passed && c2.passed == c3.passed;
  for (auto const* r : {&c1, &c2, &c3, &ax, &sq}) rep.add(io::to_json(*r));
  rep.add(json{{"check", "equivalence"}, {"verdict", agree ? "pass" : "fail"},
               {"detail", "C1, C2 and interval form must agree"}});
  json id;
  id["idempotents"] = idempotents(t).str();
  rep.set("properties", id);
  rep.certified(c1.certified && c2.certified && c3.certified);
}

inline void cmd_exp(Options const& o, TNorm const& t, Report& rep) {
  if (o.files.size() != 3) throw io::InputError("exp: expected <tnorm> <base> <fiber>");
  RCat const base = load_valid_category(o.files[1], t);
  RCat const fiber = load_valid_category(o.files[2], t);
  auto const power = exponential(base, fiber, effective_budget(o));
  rep.add(io::to_json(validate(power.category, t), "power-is-category"));
  rep.set("power", io::to_json(power));
}

inline void cmd_product(Options const& o, TNorm const& t, Report& rep) {
  if (o.files.size() != 3) throw io::InputError("product: expected <tnorm> <a> <b>");
  RCat const a = load_valid_category(o.files[1], t);
  RCat const b = load_valid_category(o.files[2], t);
  RCat const p = product(a, b);
  rep.add(io::to_json(validate(p, t), "product-is-category"));
  rep.add(io::to_json(is_functor(first_projection(a, b), p, a), "first-projection"));
  rep.add(io::to_json(is_functor(second_projection(a, b), p, b), "second-projection"));
  rep.set("product", io::to_json(p));
}

inline void cmd_ccc_suite(Options const& o, TNorm const& t, Report& rep) {
  auto const canonical = canonical_grid(t, o.grid);
  auto const values = o.values.empty() ? canonical_grid(t, o.grid_override.value_or(4))
                                       : parse_values(o.values);
  rep.inputs()["grid"] = o.grid;
  rep.inputs()["values"] = grid_json(values);
  rep.inputs()["max_size"] = o.max_size;
  auto c1 = check_c1(t, canonical);
  rep.add(io::to_json(c1));
  auto ccc = check_ccc(t, values, o.max_size, effective_budget(o));
  rep.add(io::to_json(ccc.verdict));
  if (ccc.counterexample) rep.set("counterexample", io::to_json(*ccc.counterexample));
  rep.set("enumerated", json{{"categories", ccc.categories}, {"triples", ccc.triples}});
  rep.certified(c1.certified && ccc.verdict.certified);
}

inline void cmd_counterexample(Options const& o, TNorm const& t, Report& rep) {
  auto const v = parse_values(o.values);
  if (v.size() != 3) throw io::InputError("counterexample: --values needs p,q,u");
  rep.inputs()["values"] = grid_json(v);
  auto const b = counterexample(t, v[0], v[1], v[2]);
  rep.add(json{{"check", "function-space-transitivity"},
               {"verdict", b.certifies() ? "fail" : "pass"},
               {"witness", {{"lhs", b.chain_lhs.str()}, {"rhs", b.chain_rhs.str()}}}});
  rep.set("bundle", io::to_json(b));
}

inline void cmd_limits(Options const& o, TNorm const& t, Report& rep) {
  if (o.files.size() != 2) throw io::InputError("limits: expected <tnorm> <sequence>");
  std::filesystem::path const path = o.files[1];
  TailSeq const seq = io::sequence_from_json(io::load_file(path), path.parent_path(),
                                             path.string());
  if (auto v = validate(seq.carrier(), t); !v) {
    throw io::InputError(path.string() + ": carrier is not a category: " + v.violation->kind);
  }
  RCat const& c = seq.carrier();
  rep.inputs()["sequence"] = io::to_json(seq);
  auto cauchy = is_cauchy(seq);
  auto forward = is_forward_cauchy(seq);
  rep.add(io::to_json(cauchy, "cauchy"));
  rep.add(io::to_json(forward, "forward-cauchy"));
  auto bil = find_bilimit(seq);
  json b = io::to_json(bil, c);
  b["check"] = "bilimit";
  b["verdict"] = bil.witness ? "pass" : "fail";
  rep.add(b);
  if (forward) {
    auto yl = find_yoneda_limit(seq);
    json y = io::to_json(yl, c);
    y["check"] = "yoneda-limit";
    y["verdict"] = yl.witness ? "pass" : "fail";
    rep.add(y);
  } else {
    rep.add(json{{"check", "yoneda-limit"}, {"verdict", "skipped"},
                 {"detail", "sequence is not forward Cauchy"}});
  }
}

inline void cmd_power_completeness(Options const& o, TNorm const& t, Report& rep) {
  if (o.files.size() != 3) {
    throw io::InputError("power-completeness: expected <tnorm> <base> <fiber>");
  }
  RCat const base = load_valid_category(o.files[1], t);
  RCat const fiber = load_valid_category(o.files[2], t);
  rep.inputs()["cycles"] = o.cycles;
  PowerCompletenessOptions opt{o.cycles, effective_budget(o), o.grid};
  rep.add(io::to_json(check_power_completeness(t, base, fiber, opt), "power-completeness"));
}

/// Runs one command; returns the process exit code.
inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real-enriched categories over left-continuous t-norms"};
  app.require_subcommand(1);
  Options o;
  std::string const commands[] = {"check-tnorm", "exp", "product", "ccc-suite",
                                  "counterexample", "limits", "power-completeness"};
  for (auto const& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("files", o.files, "t-norm file, then command inputs")->required();
    sub->add_option("--grid", o.grid, "uniform grid denominator N")->check(CLI::PositiveNumber);
    sub->add_option("--max-size", o.max_size, "largest enumerated category");
    sub->add_option("--cycles", o.cycles, "longest enumerated cycle");
    sub->add_option("--values", o.values, "comma separated rationals");
    sub->add_option("--budget", o.budget, "enumeration budget");
    sub->add_flag("--fail-on-violation", o.fail_on_violation);
    sub->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o", o.output, "report path");
  }
  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  std::string const command = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--grid") > 0) o.grid_override = o.grid;

  auto const start = std::chrono::steady_clock::now();
  Report rep(command);
  try {
    TNorm const t = io::tnorm_from_json(io::load_file(o.files[0]), o.files[0]);
    rep.inputs()["tnorm"] = io::to_json(t);
    if (command == "check-tnorm") cmd_check_tnorm(o, t, rep);
    else if (command == "exp") cmd_exp(o, t, rep);
    else if (command == "product") cmd_product(o, t, rep);
    else if (command == "ccc-suite") cmd_ccc_suite(o, t, rep);
    else if (command == "counterexample") cmd_counterexample(o, t, rep);
    else if (command == "limits") cmd_limits(o, t, rep);
    else cmd_power_completeness(o, t, rep);
  } catch (BudgetExceeded const& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (io::InputError const& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (std::invalid_argument const& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  auto const millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  std::string const text = rep.render(o.format, millis);
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "cannot write " << o.output << "\n";
      return kInputError;
    }
    f << text;
  }
  return (o.fail_on_violation && rep.any_failed()) ? kViolation : kOk;
}

}  // namespace tnormcat::cli
