#include "eqfg/report.hpp"

#include <sstream>

namespace eqfg {

namespace {

void text(std::ostringstream& out, const Section& s, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (depth == 0) out << "== " << s.title << " ==\n";
  else out << pad.substr(2) << "-- " << s.title << "\n";
  for (const auto& [k, v] : s.fields) out << pad << k << ": " << v << "\n";
  for (const auto& c : s.checks) {
    out << pad << (c.counted ? "" : "(info) ") << c.subject << ": " << to_string(c.verdict) << "\n";
  }
  for (const auto& l : s.lines) out << pad << l << "\n";
  for (const auto& c : s.children) text(out, c, depth + 1);
}

void collect(const Section& s, std::vector<Check>& out) {
  out.insert(out.end(), s.checks.begin(), s.checks.end());
  for (const auto& c : s.children) collect(c, out);
}

}  // namespace

std::string render_text(const Section& report) {
  std::ostringstream out;
  text(out, report, 0);
  return out.str();
}

nlohmann::ordered_json render_json(const Section& s) {
  nlohmann::ordered_json j;
  j["title"] = s.title;
  if (!s.fields.empty()) {
    j["fields"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.fields) j["fields"][k] = v;
  }
  if (!s.checks.empty()) {
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : s.checks)
      j["checks"].push_back({{"subject", c.subject},
                             {"outcome", to_string(c.verdict.outcome)},
                             {"evidence", to_string(c.verdict.evidence)},
                             {"detail", c.verdict.detail},
                             {"counted", c.counted}});
  }
  if (!s.lines.empty()) j["lines"] = s.lines;
  if (!s.children.empty()) {
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& c : s.children) j["sections"].push_back(render_json(c));
  }
  return j;
}

std::vector<Check> collect_checks(const Section& report) {
  std::vector<Check> out;
  collect(report, out);
  return out;
}

int exit_code(const Section& report, bool strict) {
  const Verdict v = overall(collect_checks(report));
  if (v.is_refuted()) return 1;
  if (v.is_undecided()) return strict ? 1 : 2;
  return 0;
}

}  // namespace eqfg
