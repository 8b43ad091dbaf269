#pragma once

// Command output as a tree of titled sections. Rendering is deterministic:
// fields and children keep insertion order.

#include <list>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqfg/verdict.hpp"

namespace eqfg {

struct Section {
  std::string title;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<Check> checks;
  std::vector<std::string> lines;  // preformatted text
  std::list<Section> children;  // stable references across child()

  Section& field(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Section& child(std::string t) {
    children.push_back({});
    children.back().title = std::move(t);
    return children.back();
  }
  void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
};

std::string render_text(const Section& report);
nlohmann::ordered_json render_json(const Section& report);

// Every check in the tree, depth first.
std::vector<Check> collect_checks(const Section& report);

// 0 when every counted check is Verified, 1 on any Refuted, 2 when the
// worst is Undecided (1 under `strict`).
int exit_code(const Section& report, bool strict);

}  // namespace eqfg
