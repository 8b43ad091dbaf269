#include "eqfg/verdict.hpp"

namespace eqfg {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "Verified";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Undecided: return "Undecided";
  }
  return "?";
}

const char* to_string(Evidence e) {
  switch (e) {
    case Evidence::Syntactic: return "syntactic";
    case Evidence::Abelianized: return "abelianized";
    case Evidence::Undecided: return "undecided";
  }
  return "?";
}

std::string to_string(const Verdict& v) {
  std::string s = std::string(to_string(v.outcome)) + " [" + to_string(v.evidence) + "]";
  if (!v.detail.empty()) s += ": " + v.detail;
  return s;
}

namespace {

int severity(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::Refuted: return 2;
    case Outcome::Undecided: return 1;
    case Outcome::Verified: return 0;
  }
  return 0;
}

}  // namespace

Verdict worst(const Verdict& a, const Verdict& b) {
  if (severity(a) != severity(b)) return severity(a) > severity(b) ? a : b;
  if (a.is_verified() && b.evidence > a.evidence) return b;
  return a;
}

Verdict overall(const std::vector<Check>& checks) {
  Verdict v = Verdict::verified();
  for (const auto& c : checks)
    if (c.counted) v = worst(v, c.verdict);
  return v;
}

}  // namespace eqfg
