#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tnormcat/category.hpp"
#include "tnormcat/ccc.hpp"
#include "tnormcat/completeness.hpp"
#include "tnormcat/conditions.hpp"
#include "tnormcat/exponential.hpp"
#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"

namespace tnormcat::io {

using json = nlohmann::ordered_json;

/// Malformed input, with the location in the document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(Rational r) { return r.str(); }

inline Rational rational_at(json const& j, std::string const& where) {
  if (!j.is_string()) {
    throw InputError(where + ": expected a \"num/den\" string, got " + j.dump());
  }
  try {
    return parse_truth_value(j.get<std::string>());
  } catch (std::exception const& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline json const& member(json const& j, char const* key, std::string const& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

inline json parse_document(std::string const& text, std::string const& name) {
  try {
    return json::parse(text);
  } catch (json::parse_error const& e) {
    throw InputError(name + ": " + e.what());
  }
}

inline json load_file(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.string());
}

// --- t-norms -----------------------------------------------------------------

inline json to_json(TNorm const& t) {
  json j;
  j["family"] = std::string(family_name(t.family()));
  if (t.family() == Family::IntervalCollapse) {
    json iv = json::array();
    for (auto const& i : t.intervals()) iv.push_back({i.lo.str(), i.hi.str()});
    j["intervals"] = iv;
  }
  return j;
}

inline TNorm tnorm_from_json(json const& j, std::string const& where = "tnorm") {
  auto const& fam = member(j, "family", where);
  if (!fam.is_string()) throw InputError(where + ".family: expected a string");
  Family f;
  try {
    f = parse_family(fam.get<std::string>());
  } catch (std::exception const& e) {
    throw InputError(where + ".family: " + e.what());
  }
  bool const has_intervals = j.contains("intervals");
  if (f != Family::IntervalCollapse) {
    if (has_intervals) {
      throw InputError(where + ": \"intervals\" only allowed for interval-collapse");
    }
    return TNorm::of(f);
  }
  auto const& arr = member(j, "intervals", where);
  if (!arr.is_array()) throw InputError(where + ".intervals: expected an array");
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string const at = where + ".intervals[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) {
      throw InputError(at + ": expected [\"a\", \"b\"]");
    }
    ivs.push_back({rational_at(arr[i][0], at + "[0]"), rational_at(arr[i][1], at + "[1]")});
  }
  try {
    return TNorm::interval_collapse(std::move(ivs));
  } catch (std::invalid_argument const& e) {
    throw InputError(where + ".intervals: " + e.what());
  }
}

// --- categories --------------------------------------------------------------

inline json to_json(RCat const& c) {
  json j;
  j["elements"] = c.elements();
  json hom = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < c.size(); ++k) row.push_back(c.hom(i, k).str());
    hom.push_back(row);
  }
  j["hom"] = hom;
  return j;
}

inline RCat category_from_json(json const& j, std::string const& where = "category") {
  auto const& el = member(j, "elements", where);
  auto const& hom = member(j, "hom", where);
  if (!el.is_array()) throw InputError(where + ".elements: expected an array");
  if (!hom.is_array()) throw InputError(where + ".hom: expected an array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (!el[i].is_string()) {
      throw InputError(where + ".elements[" + std::to_string(i) + "]: expected a string");
    }
    labels.push_back(el[i].get<std::string>());
  }
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 0; i < hom.size(); ++i) {
    std::string const row_at = where + ".hom[" + std::to_string(i) + "]";
    if (!hom[i].is_array()) throw InputError(row_at + ": expected an array");
    m.emplace_back();
    for (std::size_t k = 0; k < hom[i].size(); ++k) {
      m.back().push_back(rational_at(hom[i][k], row_at + "[" + std::to_string(k) + "]"));
    }
  }
  try {
    return RCat(std::move(labels), std::move(m));
  } catch (std::invalid_argument const& e) {
    throw InputError(where + ": " + e.what());
  }
}

// --- sequences ---------------------------------------------------------------

/// "carrier" is either an inline category or a path relative to base_dir.
inline TailSeq sequence_from_json(json const& j, std::filesystem::path const& base_dir,
                                  std::string const& where = "sequence") {
  auto const& car = member(j, "carrier", where);
  RCat carrier;
  if (car.is_string()) {
    std::filesystem::path p = car.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    carrier = category_from_json(load_file(p), p.string());
  } else {
    carrier = category_from_json(car, where + ".carrier");
  }
  auto labels = [&](char const* key, bool required) {
    std::vector<std::string> out;
    if (!required && !j.contains(key)) return out;
    auto const& arr = member(j, key, where);
    if (!arr.is_array()) throw InputError(where + "." + key + ": expected an array");
    for (auto const& e : arr) {
      if (!e.is_string()) throw InputError(where + "." + key + ": expected strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  };
  auto prefix = labels("prefix", false);
  auto cycle = labels("cycle", true);
  try {
    return TailSeq::from_labels(std::make_shared<RCat const>(std::move(carrier)), prefix, cycle);
  } catch (std::invalid_argument const& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline json to_json(TailSeq const& s) {
  json j;
  j["carrier"] = to_json(s.carrier());
  json prefix = json::array(), cycle = json::array();
  for (std::size_t e : s.prefix()) prefix.push_back(s.carrier().label(e));
  for (std::size_t e : s.cycle()) cycle.push_back(s.carrier().label(e));
  j["prefix"] = prefix;
  j["cycle"] = cycle;
  return j;
}

// --- results -----------------------------------------------------------------

inline json to_json(Witness const& w) {
  json j;
  for (auto const& [k, v] : w.values) j[k] = v.str();
  for (auto const& [k, v] : w.elements) j[k] = v;
  j["lhs"] = w.lhs.str();
  j["rhs"] = w.rhs.str();
  if (!w.detail.empty()) j["detail"] = w.detail;
  return j;
}

inline json to_json(ConditionReport const& r) {
  json j;
  j["condition"] = std::string(condition_name(r.condition));
  j["verdict"] = r.passed ? "pass" : "fail";
  j["certified"] = r.certified;
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline json to_json(Outcome const& o, std::string const& name) {
  json j;
  j["check"] = name;
  j["verdict"] = o.passed() ? "pass" : "fail";
  if (o.violation) {
    json w;
    w["kind"] = o.violation->kind;
    w["at"] = o.violation->at;
    if (o.violation->lhs) w["lhs"] = o.violation->lhs->str();
    if (o.violation->rhs) w["rhs"] = o.violation->rhs->str();
    if (!o.violation->detail.empty()) w["detail"] = o.violation->detail;
    j["witness"] = w;
  }
  return j;
}

inline json to_json(PowerObject const& p) {
  json j;
  j["base"] = to_json(p.base);
  j["fiber"] = to_json(p.fiber);
  json fs = json::array();
  for (auto const& f : p.functors) {
    json row = json::array();
    for (std::size_t e : f) row.push_back(p.fiber.label(e));
    fs.push_back(row);
  }
  j["functors"] = fs;
  j["d"] = to_json(p.category)["hom"];
  return j;
}

inline json to_json(CounterexampleBundle const& b) {
  auto labels = [&](Assignment const& m) {
    json row = json::array();
    for (std::size_t e : m) row.push_back(b.values.category.label(e));
    return row;
  };
  json j;
  j["p"] = b.p.str();
  j["q"] = b.q.str();
  j["u"] = b.u.str();
  j["domain"] = to_json(b.domain);
  j["codomain"] = to_json(b.values.category);
  j["f"] = labels(b.f);
  j["g"] = labels(b.g);
  j["h"] = labels(b.h);
  j["d"] = {{"f,g", b.d_fg.str()}, {"g,h", b.d_gh.str()}, {"f,h", b.d_fh.str()}};
  j["c1"] = {{"(p&q)^u", b.c1_lhs.str()}, {"h(y)", b.h_y.str()}};
  j["violated"] = {
      {"inequality", "(d(f,g) & d(g,h)) ^ u <= d(f,h) ^ u"},
      {"lhs", b.chain_lhs.str()},
      {"rhs", b.chain_rhs.str()},
      {"transitivity", {{"d(g,h) & d(f,g)", b.transitivity_lhs.str()},
                        {"d(f,h)", b.transitivity_rhs.str()}}}};
  j["certifies"] = b.certifies();
  return j;
}

inline std::string_view limit_kind_name(LimitKind k) {
  switch (k) {
    case LimitKind::Bilimit: return "bilimit";
    case LimitKind::YonedaLimit: return "yoneda-limit";
    case LimitKind::None: return "none";
  }
  return "?";
}

inline json to_json(LimitVerdict const& v, RCat const& carrier) {
  json j;
  j["kind"] = std::string(limit_kind_name(v.kind));
  j["witness"] = v.witness ? json(carrier.label(*v.witness)) : json(nullptr);
  json rows = json::array();
  for (auto const& r : v.certificate) {
    json row;
    row["element"] = r.element;
    row["from_seq"] = r.from_seq.str();
    row["to_seq"] = r.to_seq.str();
    if (v.witness) {
      row["hom(limit,x)"] = r.hom_from_limit.str();
      row["hom(x,limit)"] = r.hom_to_limit.str();
    }
    rows.push_back(row);
  }
  j["certificate"] = rows;
  return j;
}

}  // namespace tnormcat::io
