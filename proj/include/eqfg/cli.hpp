#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eqfg {

// eqfg <command> <document> [argument...] [--format text|machine]
//      [--emit-dot path] [--max-dim 2|3] [--strict]
// Returns the exit code: 0 all Verified, 1 any Refuted, 2 only Undecided,
// 3 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqfg
