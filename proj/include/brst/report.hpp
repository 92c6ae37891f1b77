#pragma once

// RunReport and JSON serialization. Output is deterministic: keys keep
// insertion order, polynomials print in the deglex term order, and timings
// are left out of JSON unless asked for.

#include <json.hpp>

#include <string>
#include <vector>

#include "scenario.hpp"
#include "suites.hpp"

namespace brst {

using Json = nlohmann::ordered_json;

inline Json to_json(const Scalar &s) { return s.to_string(); }
inline Json to_json(const Poly &p) { return p.to_string(); }
inline Json to_json(const RingElement &f) { return f.to_string(); }

/// exterior monomial -> coefficient, e.g. {"dz1^dzb1": "1i"}
inline Json to_json(const PolyForm &alpha) {
  Json out = Json::object();
  const int m = alpha.dim();
  for (const auto &[mask, f] : alpha.terms()) {
    std::string key;
    for (int v = 0; v < 2 * m; ++v)
      if (mask & (ExteriorMask(1) << v)) {
        if (!key.empty()) key += "^";
        key += (v % 2 == 0 ? "dz" : "dzb") + std::to_string(v / 2 + 1);
      }
    out[key.empty() ? "1" : key] = f.to_string();
  }
  return out;
}

template <class T> Json nu_series_json(const NuSeries<T> &s, const T &zero, const char *field) {
  Json orders = Json::array();
  for (int k = -1; k <= s.truncation(); ++k) {
    if (!s.has(k)) continue;
    Json o = Json::object();
    o["k"] = k;
    o[field] = to_json(s.at(k, zero));
    orders.push_back(o);
  }
  return orders;
}

inline Json scenario_json(const Scenario &sc) {
  Json out = Json::object();
  out["n"] = sc.n;
  out["ambient"] = "C^" + std::to_string(sc.dim());
  out["bounds"] = {{"degree", sc.bounds.degree}, {"nu_order", sc.bounds.nu_order}};
  Json conv = Json::object();
  for (const auto &[k, v] : sc.conventions()) conv[k] = v;
  out["conventions"] = conv;
  return out;
}

struct RunReport {
  std::string command;
  Json scenario = Json::object();
  std::vector<CheckResult> results;
  /// verb-specific payload (product series, representatives, verdicts)
  Json output = Json::object();

  bool all_pass() const {
    for (const auto &r : results)
      if (!r.pass) return false;
    return true;
  }

  Json to_json(bool timing) const {
    Json out = Json::object();
    out["command"] = command;
    out["scenario"] = scenario;
    if (!output.empty()) out["output"] = output;
    Json rs = Json::array();
    for (const auto &r : results) {
      Json j = Json::object();
      j["name"] = r.name;
      j["status"] = r.pass ? "PASS" : "FAIL";
      j["cases"] = r.cases;
      if (!r.pass) j["witness"] = r.witness;
      if (!r.details.empty()) {
        Json d = Json::object();
        for (const auto &[k, v] : r.details) d[k] = v;
        j["details"] = d;
      }
      if (timing) j["seconds"] = r.seconds;
      rs.push_back(j);
    }
    out["results"] = rs;
    out["status"] = all_pass() ? "PASS" : "FAIL";
    return out;
  }

  std::string to_text() const {
    std::string out = command + " (n = " + (scenario.contains("n") ? std::to_string(scenario["n"].get<int>()) : "?") + ")\n";
    if (!output.empty()) out += output.dump(2) + "\n";
    char buf[64];
    for (const auto &r : results) {
      std::snprintf(buf, sizeof buf, " [%zu cases, %.2fs]", r.cases, r.seconds);
      out += std::string(r.pass ? "PASS " : "FAIL ") + r.name + buf + "\n";
      for (const auto &[k, v] : r.details) out += "    " + k + ": " + v + "\n";
      if (!r.pass) out += "    witness: " + r.witness + "\n";
    }
    out += all_pass() ? "status: PASS\n" : "status: FAIL\n";
    return out;
  }
};

} // namespace brst
