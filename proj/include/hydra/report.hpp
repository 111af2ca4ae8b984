#pragma once

// Flat row-oriented check reports for the command-line pipelines: one row per
// verified identity, diffable by CI.  Floats print with 17 significant
// digits; exact rationals print exactly.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace hydra::report {

inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt17(std::complex<double> z) {
  return fmt17(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt17(std::abs(z.imag())) + "i";
}

struct CheckRow {
  std::string id;
  std::string ref;  // which identity or data source the row verifies
  std::string expected;
  std::string got;
  double tol = 0.0;  // 0 marks an exact check
  bool pass = false;
};

struct Report {
  std::string command;
  std::string gamma;
  double tol = 0.0;
  std::string version = "1.0.0";
  std::vector<CheckRow> rows;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  void add(std::string id, std::string ref, std::string expected, std::string got, double tol_,
           bool pass_) {
    rows.push_back({std::move(id), std::move(ref), std::move(expected), std::move(got), tol_,
                    pass_});
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["meta"] = {{"command", command}, {"gamma", gamma}, {"tol", tol}, {"version", version}};
    j["checks"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["checks"].push_back({{"id", r.id},
                             {"ref", r.ref},
                             {"expected", r.expected},
                             {"got", r.got},
                             {"tol", r.tol},
                             {"pass", r.pass}});
    return j;
  }

  std::string to_csv() const {
    std::string out = "id,ref,expected,got,tol,pass\n";
    auto esc = [](const std::string& s) {
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += "\"\"";
        q += c;
      }
      q += "\"";
      return q;
    };
    for (const auto& r : rows)
      out += esc(r.id) + "," + esc(r.ref) + "," + esc(r.expected) + "," + esc(r.got) + "," +
             fmt17(r.tol) + "," + (r.pass ? "true" : "false") + "\n";
    return out;
  }
};

}  // namespace hydra::report
