#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqfg/cli.hpp"
#include "eqfg/document.hpp"
#include "eqfg/realization.hpp"
#include "eqfg/report.hpp"
#include "support.hpp"

using namespace eqfg;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Run eqfg_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "eqfg_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("realize the compressed torus") {
  const auto r = eqfg_cli({"realize", support::data("torus_z2.yaml")});
  CHECK(r.code == 0);
  CHECK(r.has("H_3 = Z^3"));
  CHECK(r.has("H^3 = Z^3"));
  CHECK(r.has("H1: ProperQuotient (v1, v2)"));
  CHECK(r.has("(info) equivalence at H1"));
  CHECK(r.err.empty());
}

TEST_CASE("realize the honest torus") {
  const auto r = eqfg_cli({"realize", support::data("torus_z2_honest.yaml")});
  CHECK(r.code == 0);
  CHECK(r.has("H_2 = Z^14"));
  CHECK_FALSE(r.has("Refuted"));
}

TEST_CASE("validate") {
  const auto broken = eqfg_cli({"validate", support::data("s3_broken_family.yaml")});
  CHECK(broken.code == 1);
  CHECK(broken.has("NotConjugationClosed"));
  for (const auto& entry : std::filesystem::directory_iterator(EQFG_DATA_DIR)) {
    if (entry.path().filename() == "s3_broken_family.yaml") continue;
    INFO(entry.path().filename().string());
    CHECK(eqfg_cli({"validate", entry.path().string()}).code == 0);
  }
}

TEST_CASE("broken group tables are refuted") {
  const auto path = scratch("bad_table.yaml");
  std::ofstream(path) << "group:\n  table: [[0, 1], [1, 1]]\n";
  const auto r = eqfg_cli({"validate", path.string()});
  CHECK(r.code == 1);
  CHECK(r.has("group axioms: Refuted"));
}

TEST_CASE("orbit category") {
  const auto r = eqfg_cli({"orbit-cat", support::data("torus_z2.yaml")});
  CHECK(r.code == 0);
  CHECK(r.has("morphisms: 4"));
  CHECK(r.has("Hom(G/H0, G/H0) = 2"));
}

TEST_CASE("input errors exit with 3") {
  CHECK(eqfg_cli({"realize", "/nonexistent/file.yaml"}).code == 3);
  CHECK(eqfg_cli({"realize", support::data("torus_z2.yaml"), "--bogus"}).code == 3);
  CHECK(eqfg_cli({"frobnicate", support::data("torus_z2.yaml")}).code == 3);
  CHECK(eqfg_cli({"realize", support::data("torus_z2.yaml"), "--max-dim", "5"}).code == 3);
  CHECK(eqfg_cli({"realize", support::data("torus_z2.yaml"), "--format", "xml"}).code == 3);
  CHECK(eqfg_cli({"homology", support::data("torus_z2.yaml"), "sphere"}).code == 3);
  CHECK(eqfg_cli({"homology", support::data("torus_z2.yaml")}).code == 3);
  CHECK(eqfg_cli({"realize", support::data("free_s0.yaml")}).code == 3);
  CHECK(eqfg_cli({}).code == 3);
  const auto bad = scratch("dangling.yaml");
  std::ofstream(bad) << "group:\n  table: [[0]]\nfunctor:\n  values: {0: Nope}\n";
  const auto r = eqfg_cli({"realize", bad.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("DanglingReference") != std::string::npos);
  CHECK(r.err.find("line 4") != std::string::npos);
}

TEST_CASE("help") { CHECK(eqfg_cli({"--help"}).code == 0); }

TEST_CASE("output is deterministic") {
  for (const auto* cmd : {"realize", "orbit-cat", "validate"}) {
    const auto a = eqfg_cli({cmd, support::data("torus_z2.yaml")});
    const auto b = eqfg_cli({cmd, support::data("torus_z2.yaml")});
    CHECK(a.out == b.out);
  }
}

TEST_CASE("machine output") {
  const auto r = eqfg_cli({"realize", support::data("torus_z2.yaml"), "--format", "machine"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["title"] == "realize");
  bool found = false;
  std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& s) {
    if (s.contains("lines"))
      for (const auto& line : s.at("lines"))
        if (line == "H_3 = Z^3") found = true;
    if (s.contains("sections"))
      for (const auto& c : s.at("sections")) walk(c);
  };
  walk(j);
  CHECK(found);
  const auto e = nlohmann::json::parse(eqfg_cli({"export", support::data("torus_z2.yaml")}).out);
  CHECK(e["complexes"]["torus"]["vertices"].size() == 2);
}

TEST_CASE("strict mode and exit codes") {
  CHECK(eqfg_cli({"realize", support::data("torus_z2.yaml"), "--strict"}).code == 0);
  Section s;
  s.title = "t";
  s.add({{"a", Verdict::verified()}});
  CHECK(exit_code(s, false) == 0);
  s.child("c").add({{"b", Verdict::undecided("unknown")}});
  CHECK(exit_code(s, false) == 2);
  CHECK(exit_code(s, true) == 1);
  s.add({{"x", Verdict::refuted("w"), false}});
  CHECK(exit_code(s, false) == 2);
  s.add({{"y", Verdict::refuted("w")}});
  CHECK(exit_code(s, false) == 1);
}

TEST_CASE("two dimensional realization") {
  const auto r = eqfg_cli({"realize", support::data("torus_z2.yaml"), "--max-dim", "2"});
  CHECK(r.code == 0);
  CHECK(r.has("3-cells omitted"));
  CHECK(r.has("H_3 = 0"));
}

TEST_CASE("dot output") {
  const auto path = scratch("x.dot");
  std::filesystem::remove(path);
  const auto r = eqfg_cli({"realize", support::data("torus_z2.yaml"), "--emit-dot", path.string()});
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str().starts_with("graph"));
  const auto g = eqfg_cli({"export-dot", support::data("torus_z2.yaml"), "ZxV"});
  CHECK(g.out.find("l1") != std::string::npos);
}

TEST_CASE("complex commands") {
  const auto h = eqfg_cli({"homology", support::data("torus_z2.yaml"), "torus"});
  CHECK(h.code == 0);
  CHECK(h.has("H_1 = Z^2"));
  const auto f = eqfg_cli({"fixed", support::data("torus_z2.yaml"), "torus", "1"});
  CHECK(f.code == 0);
  CHECK(f.has("2 objects, 2 components"));
  const auto p = eqfg_cli({"pi1", support::data("torus_z2.yaml"), "torus"});
  CHECK(p.code == 0);
  CHECK(p.has("abelianized Z^2"));
}

TEST_CASE("induced functor documents realize") {
  const auto r = eqfg_cli({"induced-functor", support::data("torus_z2.yaml"), "torus"});
  CHECK(r.code == 0);
  CHECK(r.has("abelianized H0 -> H0 via 1·H0: [-1 0; 0 1]"));
  const auto path = scratch("honest.yaml");
  std::ofstream(path) << r.out;
  const auto d = read_document(path.string());
  CHECK(d.find_complex("torus") != nullptr);
  const auto again = eqfg_cli({"realize", path.string()});
  CHECK(again.code == 0);
  CHECK(again.out.find("Refuted") == std::string::npos);
  const auto machine = eqfg_cli({"induced-functor", support::data("torus_z2.yaml"), "torus", "--format", "machine"});
  CHECK(nlohmann::json::parse(machine.out).contains("document"));
}
