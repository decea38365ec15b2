#include "qbasis/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace qbasis {

namespace {

nlohmann::json number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

std::string scientific(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class Map, class Render>
std::string flatten(const Map& m, Render render) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ';';
    out += k + "=" + render(v);
  }
  return out;
}

}  // namespace

std::string to_json(const std::vector<VerificationReport>& reports, const std::map<std::string, std::string>& config,
                    const std::string& timestamp) {
  nlohmann::json root;
  root["meta"]["version"] = kVersion;
  root["meta"]["config"] = config;
  if (!timestamp.empty()) root["meta"]["timestamp"] = timestamp;
  root["reports"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["check_id"] = r.check_id;
    j["inputs"] = r.inputs;
    j["findings"] = r.findings;
    nlohmann::json measured = nlohmann::json::object();
    for (const auto& [k, v] : r.measured) measured[k] = number(v);
    j["measured"] = measured;
    j["residual"] = number(r.residual);
    j["tolerance"] = number(r.tolerance);
    j["verdict"] = to_string(r.verdict);
    j["notes"] = r.notes;
    root["reports"].push_back(std::move(j));
  }
  root["meta"]["summary"] = {{"reports", reports.size()},
                             {"failed", std::count_if(reports.begin(), reports.end(),
                                                      [](const VerificationReport& r) { return !r.passed(); })}};
  return root.dump(2) + "\n";
}

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "check_id,verdict,residual,tolerance,inputs,measured,findings,notes\n";
  for (const auto& r : reports) {
    os << csv_field(r.check_id) << ',' << to_string(r.verdict) << ',' << scientific(r.residual) << ','
       << scientific(r.tolerance) << ',' << csv_field(flatten(r.inputs, [](const std::string& s) { return s; }))
       << ',' << csv_field(flatten(r.measured, scientific)) << ','
       << csv_field(flatten(r.findings, [](const std::string& s) { return s; })) << ',' << csv_field(r.notes)
       << '\n';
  }
  return os.str();
}

std::string to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.passed()) ++failed;
    char line[256];
    std::snprintf(line, sizeof line, "%-11s %-48s residual %.3e  tol %.3e", to_string(r.verdict), r.check_id.c_str(),
                  r.residual, r.tolerance);
    os << line;
    for (const auto& [k, v] : r.findings) os << "  " << k << "=" << v;
    os << '\n';
  }
  os << reports.size() << " reports, " << failed << " failed\n";
  return os.str();
}

}  // namespace qbasis
