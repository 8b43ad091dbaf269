#pragma once

#include <string>
#include <vector>

namespace eqfg {

enum class Outcome { Verified, Refuted, Undecided };

// How a verdict was reached. Syntactic covers exact combinatorial checks
// (reduced words, counts, matrices); Abelianized means the decision went
// through the integer abelianization.
enum class Evidence { Syntactic, Abelianized, Undecided };

struct Verdict {
  Outcome outcome = Outcome::Verified;
  Evidence evidence = Evidence::Syntactic;
  std::string detail;

  static Verdict verified(Evidence e = Evidence::Syntactic, std::string d = {}) {
    return {Outcome::Verified, e, std::move(d)};
  }
  static Verdict refuted(std::string witness, Evidence e = Evidence::Syntactic) {
    return {Outcome::Refuted, e, std::move(witness)};
  }
  static Verdict undecided(std::string reason) {
    return {Outcome::Undecided, Evidence::Undecided, std::move(reason)};
  }

  bool is_verified() const { return outcome == Outcome::Verified; }
  bool is_refuted() const { return outcome == Outcome::Refuted; }
  bool is_undecided() const { return outcome == Outcome::Undecided; }

  bool operator==(const Verdict&) const = default;
};

const char* to_string(Outcome o);
const char* to_string(Evidence e);

// "Verified [syntactic]" / "Refuted [abelianized]: witness"
std::string to_string(const Verdict& v);

// Refuted dominates Undecided, which dominates Verified. Among Verified
// verdicts the weaker evidence level wins.
Verdict worst(const Verdict& a, const Verdict& b);

// A named verdict. `counted` is false for informational checks that are
// reported but do not influence exit codes.
struct Check {
  std::string subject;
  Verdict verdict;
  bool counted = true;
};

Verdict overall(const std::vector<Check>& checks);

}  // namespace eqfg
