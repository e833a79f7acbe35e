#include <cstdlib>
#include <filesystem>

#include "cli/cli.hpp"
#include "cli/io.hpp"
#include "constellation/affine.hpp"
#include "constellation/error.hpp"
#include "constellation/latin.hpp"
#include "constellation/mub.hpp"
#include "doctest.h"

using namespace constellation;
using constellation::cli::run_command;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "constellation_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("exit code matrix") {
  TempDir tmp;
  io::write_file(tmp.file("plane3.json"), io::constellation_to_json(make_plane(3)).dump());
  io::write_file(tmp.file("t1.json"), io::constellation_to_json(table1_constellation()).dump());
  auto three = sub_constellation(make_plane(3), {{0, 1}, {0, 1}, {0, 1}, {}});
  io::write_file(tmp.file("three.json"), io::constellation_to_json(three).dump());
  io::write_file(tmp.file("bad.json"), R"({"order": 2, "classes": [[[0, 1]], [[0, 1]]]})");
  io::write_file(tmp.file("junk.json"), "{ not json");
  io::write_file(tmp.file("z3.txt"), "1 2 3\n2 3 1\n3 1 2\n");
  io::write_file(tmp.file("z6.txt"), "1 2 3 4 5 6\n2 3 4 5 6 1\n3 4 5 6 1 2\n4 5 6 1 2 3\n5 6 1 2 3 4\n6 1 2 3 4 5\n");
  io::write_file(tmp.file("std.json"), io::basis_set_to_json(MUConstellation(4, {standard_basis(4)})).dump());
  io::write_file(tmp.file("pair.json"),
                 io::basis_set_to_json(MUConstellation(4, {standard_basis(4), fourier_basis(4)})).dump());
  io::write_file(tmp.file("same.json"),
                 io::basis_set_to_json(MUConstellation(4, {standard_basis(4), standard_basis(4)})).dump());

  struct Row {
    std::vector<std::string> args;
    int exit_code;
  };
  const std::vector<Row> matrix{
      {{"plane", "--order", "3"}, 0},
      {{"plane", "--order", "6"}, 2},
      {{"plane"}, 2},
      {{"plane", "--order", "x"}, 2},
      {{"nonsense"}, 2},
      {{"verify", "--in", tmp.file("plane3.json")}, 0},
      {{"verify", "--in", tmp.file("plane3.json"), "--plane-axioms"}, 0},
      {{"verify", "--in", tmp.file("t1.json")}, 0},
      {{"verify", "--in", tmp.file("t1.json"), "--plane-axioms"}, 1},
      {{"verify", "--in", tmp.file("bad.json")}, 1},
      {{"verify", "--in", tmp.file("junk.json")}, 2},
      {{"verify", "--in", tmp.file("missing.json")}, 2},
      {{"complete", "--in", tmp.file("three.json")}, 0},
      {{"complete", "--in", tmp.file("t1.json")}, 1},
      {{"complete", "--in", tmp.file("bad.json")}, 1},
      {{"mols", "--order", "4", "--method", "primepower"}, 0},
      {{"mols", "--order", "6", "--method", "macneish"}, 0},
      {{"mols", "--order", "6", "--method", "primepower"}, 2},
      {{"mols", "--order", "6", "--method", "magic"}, 2},
      {{"mate", "--in", tmp.file("z3.txt")}, 0},
      {{"mate", "--in", tmp.file("z6.txt")}, 1},
      {{"mate", "--in", tmp.file("junk.json")}, 2},
      {{"certify-no-mols6", "--order", "4"}, 1},
      {{"certify-no-mols6", "--order", "9"}, 2},
      {{"table1"}, 0},
      {{"table1", "--verify"}, 0},
      {{"mub", "make", "--kind", "fourier", "--dim", "5"}, 0},
      {{"mub", "make", "--kind", "wf", "--dim", "6"}, 2},
      {{"mub", "make", "--kind", "tao", "--dim", "5"}, 2},
      {{"mub", "make", "--kind", "fourier-family", "--dim", "6", "--a", "0.2", "--b", "0.3"}, 0},
      {{"mub", "defect", "--in", tmp.file("pair.json")}, 0},
      {{"mub", "defect", "--in", tmp.file("same.json")}, 1},
      {{"mub", "search", "--dim", "3", "--signature", "1,1", "--restarts", "2", "--seed", "1"}, 0},
      {{"mub", "search", "--dim", "3", "--signature", "1,1", "--restarts", "2"}, 2},
      {{"mub", "search", "--dim", "3", "--signature", "1,1", "--restarts", "0", "--seed", "1"}, 2},
      {{"mub", "search", "--dim", "3", "--signature", "3,1", "--restarts", "2", "--seed", "1"}, 2},
      {{"mub", "search", "--dim", "2", "--signature", "1,1,1,1", "--restarts", "2", "--seed", "1"}, 2},
      {{"mub", "search", "--dim", "2", "--signature", "1,1,1", "--restarts", "1", "--seed", "1",
        "--max-iterations", "1"}, 1},
      {{"mub", "extend", "--in", tmp.file("std.json"), "--vectors", "1", "--restarts", "2", "--seed", "3"}, 0},
      {{"mub", "extend", "--in", tmp.file("std.json"), "--vectors", "4", "--restarts", "2", "--seed", "3"}, 2},
  };
  for (const auto& row : matrix) {
    std::string joined;
    for (const auto& a : row.args) joined += a + " ";
    CAPTURE(joined);
    const auto out = run_command(row.args);
    CHECK(out.exit_code == row.exit_code);
    CHECK_FALSE(out.report.empty());
  }
}

TEST_CASE("usage errors name the flag") {
  const auto missing = run_command({"mub", "search", "--dim", "3", "--signature", "1,1", "--restarts", "2"});
  CHECK(missing.exit_code == 2);
  CHECK(missing.report.find("--seed") != std::string::npos);
  CHECK(missing.report.find('\n') == missing.report.size() - 1);
  CHECK(run_command({"--help"}).exit_code == 0);
}

TEST_CASE("reports use the signature notation") {
  const auto t1 = run_command({"table1", "--verify"});
  CHECK(t1.report.find("valid ⟨5,5,5,4⟩₆") != std::string::npos);
  const auto plane = run_command({"plane", "--order", "3", "--json"});
  REQUIRE(plane.payload);
  CHECK(plane.emit_json);
  CHECK((*plane.payload)["classes"].size() == 4);
  CHECK(io::constellation_from_json(*plane.payload) == make_plane(3));
  const auto search = run_command({"mub", "search", "--dim", "3", "--signature", "1,1", "--restarts", "2", "--seed", "1"});
  CHECK(search.report.find("{1,1}₃ ({1²}₃)") != std::string::npos);
}

TEST_CASE("not-found reports are labelled as evidence") {
  const auto out = run_command({"mub", "search", "--dim", "2", "--signature", "1,1,1", "--restarts", "2", "--seed", "1",
                                "--max-iterations", "1", "--json"});
  CHECK(out.exit_code == 1);
  CHECK(out.report.find("not a proof") != std::string::npos);
  REQUIRE(out.payload);
  CHECK((*out.payload)["status"] == "NotFound");
  CHECK((*out.payload)["found_at_restart"].is_null());
  CHECK((*out.payload)["budget"]["restarts"] == 2);
}

TEST_CASE("JSON round trips") {
  for (int q : {2, 3, 4, 5}) {
    const auto p = make_plane(q);
    CHECK(io::constellation_from_json(io::constellation_to_json(p)) == p);
  }
  const auto t1 = table1_constellation();
  CHECK(io::constellation_from_json(io::constellation_to_json(t1)) == t1);
  const auto text_round = io::constellation_from_json(nlohmann::json::parse(io::constellation_to_json(t1).dump()));
  CHECK(text_round == t1);

  for (const auto& set : {wf_complete_set(3), hw_triple(6), MUConstellation(6, {standard_basis(6), tao_basis()})}) {
    const auto j = io::basis_set_to_json(set);
    CHECK(io::basis_set_from_json(j) == set);
    CHECK(io::basis_set_from_json(nlohmann::json::parse(j.dump())) == set);
  }

  CHECK_THROWS_WITH_AS(io::constellation_from_json(nlohmann::json{{"order", 3}}), doctest::Contains("BadDocument"), Error);
  CHECK_THROWS_AS(io::basis_set_from_json(nlohmann::json{{"dim", 2}, {"bases", {{{1, 2, 3}}}}}), Error);

  TempDir tmp;
  const auto written = run_command({"mub", "make", "--kind", "hw-triple", "--dim", "6", "--out", tmp.file("hw.json")});
  CHECK(written.exit_code == 0);
  CHECK(io::basis_set_from_json(io::read_json_file(tmp.file("hw.json"))) == hw_triple(6));
  const auto plane_out = run_command({"plane", "--order", "4", "--out", tmp.file("p4.json")});
  CHECK(plane_out.exit_code == 0);
  CHECK(io::constellation_from_json(io::read_json_file(tmp.file("p4.json"))) == make_plane(4));

  const auto p4 = make_plane(4);
  io::write_file(tmp.file("p4_four.json"),
                 io::constellation_to_json(sub_constellation(p4, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {}})).dump());
  const auto completed = run_command({"complete", "--in", tmp.file("p4_four.json"), "--json"});
  REQUIRE(completed.payload);
  CHECK(io::constellation_from_json(*completed.payload) == make_plane(4));
}

TEST_CASE("seeded payloads are byte-identical") {
  TempDir tmp;
  io::write_file(tmp.file("hw3.json"), io::basis_set_to_json(hw_triple(3)).dump());
  const std::vector<std::vector<std::string>> commands{
      {"mub", "search", "--dim", "4", "--signature", "3,2,1", "--restarts", "4", "--seed", "11", "--max-iterations", "300",
       "--json"},
      {"mub", "search", "--dim", "3", "--signature", "2,2,2,2", "--restarts", "6", "--seed", "5", "--max-iterations", "50",
       "--json"},
      {"mub", "extend", "--in", tmp.file("hw3.json"), "--vectors", "2", "--restarts", "5", "--seed", "2",
       "--max-iterations", "100", "--json"},
      {"certify-no-mols6", "--order", "5", "--json"},
  };
  for (const auto& base : commands) {
    auto one = base, four = base;
    one.insert(one.end(), {"--workers", "1"});
    four.insert(four.end(), {"--workers", "4"});
    const auto a = run_command(one).payload_text();
    CHECK_FALSE(a.empty());
    CHECK(a == run_command(one).payload_text());
    CHECK(a == run_command(four).payload_text());
  }
}

TEST_CASE("worker count from the environment") {
  ::setenv("CONSTELLATION_KIT_WORKERS", "3", 1);
  const auto env = run_command({"certify-no-mols6", "--order", "4", "--json"});
  ::setenv("CONSTELLATION_KIT_WORKERS", "zero", 1);
  const auto bad = run_command({"certify-no-mols6", "--order", "4"});
  ::unsetenv("CONSTELLATION_KIT_WORKERS");
  CHECK(env.exit_code == 1);
  CHECK(env.payload_text() == run_command({"certify-no-mols6", "--order", "4", "--json"}).payload_text());
  // an unusable value is ignored and the default of one worker applies
  CHECK(bad.exit_code == 1);
}
