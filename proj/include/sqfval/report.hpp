#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sqfval/harness.hpp"

namespace sqfval {

using Json = nlohmann::ordered_json;

inline Json field_json(const FieldDescriptor* fd) {
  Json j;
  j["p"] = fd->p();
  j["n"] = fd->n();
  j["q"] = fd->q();
  j["modulus"] = fd->modulus();
  return j;
}

inline Json rational_json(const Rational& r) {
  Json j;
  j["num"] = r.num();
  j["den"] = r.den();
  j["decimal"] = r.decimal();
  return j;
}

inline Json bounds_json(const BoundSet& b) {
  Json j;
  j["n"] = b.cap;
  j["char_bound"] = b.char_bound;
  j["deg_bound"] = b.deg_bound;
  return j;
}

inline Json conditions_json(const ConditionReport& c) {
  Json j;
  j["p"] = c.p;
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    Json one;
    one["gcd_ok"] = e.gcd_ok;
    one["branch1_ok"] = e.branch1_ok;
    one["branch2_ok"] = e.branch2_ok;
    entries.push_back(one);
  }
  j["entries"] = entries;
  j["overall"] = c.overall;
  return j;
}

inline Json spec_json(const SparseSpec& spec) {
  Json j;
  j["d"] = spec.d;
  Json a = Json::array(), b = Json::array(), c = Json::array();
  for (std::uint32_t i = 0; i < spec.d; ++i) {
    a.push_back(to_string(spec.a[i]));
    b.push_back(to_string(spec.b[i]));
    c.push_back(to_string(spec.c[i]));
  }
  j["a"] = a;
  j["b"] = b;
  j["c"] = c;
  return j;
}

inline Json count_report_json(const FieldDescriptor* fd, const XPoly& f,
                              const SparseSpec& spec, const CountReport& rep) {
  Json j;
  j["field"] = field_json(fd);
  j["f"] = to_string(f);
  j["spec"] = spec_json(spec);
  j["total"] = rep.total;
  j["sqf_count"] = rep.sqf_count;
  j["frequency"] = rational_json(rep.frequency);
  j["p_zero_count"] = rep.p_zero_count;
  j["bounds"] = bounds_json(rep.vp.bounds);
  j["error"] = rational_json(rep.error);
  j["bound_check"] = rep.bound_check;
  j["superset_check"] = rep.superset_check;
  j["runtime_ms"] = rep.runtime_ms;
  return j;
}

inline Json box_report_json(const FieldDescriptor* fd, const XPoly& f,
                            const BoxReport& rep) {
  Json j;
  j["field"] = field_json(fd);
  j["f"] = to_string(f);
  j["m"] = rep.m;
  j["total"] = rep.total;
  j["sqf_count"] = rep.sqf_count;
  j["frequency"] = rational_json(rep.frequency);
  j["decomposed_sum"] = rep.decomposed_sum;
  j["decomposition_check"] = rep.decomposition_check;
  j["runtime_ms"] = rep.runtime_ms;
  return j;
}

/// Exact key set per the interface contract, plus the invocation echo that
/// every report carries.
inline Json build_p_json(const FieldDescriptor* fd, const XPoly& f,
                         const SparseSpec& spec, const VanishingPoly& vp) {
  Json j;
  j["field"] = field_json(fd);
  j["f"] = to_string(f);
  j["spec"] = spec_json(spec);
  j["conditions"] = conditions_json(vp.conditions);
  j["k"] = vp.k;
  j["P"] = to_string(vp.P);
  j["degP"] = vp.P.is_zero() ? Json(nullptr) : Json(vp.P.total_degree());
  j["charBound"] = vp.bounds.char_bound;
  j["degBound"] = vp.bounds.deg_bound;
  return j;
}

inline Json sweep_json(const std::string& f_src,
                       const std::vector<std::string>& a_src,
                       const std::vector<std::string>& b_src,
                       const std::vector<std::string>& c_src,
                       const SweepTable& table) {
  Json j;
  j["f"] = f_src;
  j["a"] = a_src;
  j["b"] = b_src;
  j["c"] = c_src;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["q"] = row.field->q();
    r["guaranteed"] = row.guaranteed;
    r["bound_ok"] = row.bound_ok;
    Json count;
    count["field"] = field_json(row.field.get());
    count["total"] = row.report.total;
    count["sqf_count"] = row.report.sqf_count;
    count["frequency"] = rational_json(row.report.frequency);
    count["p_zero_count"] = row.report.p_zero_count;
    count["bounds"] = bounds_json(row.report.vp.bounds);
    count["error"] = rational_json(row.report.error);
    count["bound_check"] = row.report.bound_check;
    count["superset_check"] = row.report.superset_check;
    count["runtime_ms"] = row.report.runtime_ms;
    r["count"] = count;
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["all_ok"] = table.all_ok();
  return j;
}

inline std::string grid_csv(const CountReport& rep, std::uint32_t width) {
  std::string out = "index";
  for (std::uint32_t i = 1; i <= width; ++i)
    out += ",beta_" + std::to_string(i);
  out += ",value,sqf,p_zero\n";
  for (const auto& row : rep.grid) {
    out += std::to_string(row.index);
    for (auto b : row.beta) out += "," + std::to_string(b);
    out += ",\"" + row.value + "\"," + (row.sqf ? "1" : "0") + "," +
           (row.p_zero ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace sqfval
