#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "vobs/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = vobs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve a builtin for the sequential solution") {
  const CliRun r = run_cli({"solve", "--builtin", "td_seq", "--concept", "gvo"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"concept\": \"gvo\"") != std::string::npos);
  CHECK(r.out.find("\"a1\": \"8\"") != std::string::npos);
  CHECK(r.out.find("\"a2\": \"7.5\"") != std::string::npos);
}

TEST_CASE("solve reports the refinement verdict") {
  const CliRun r = run_cli({"solve", "--builtin", "trust_tf", "--concept", "vo"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"timing_irrelevant\"") != std::string::npos);

  const CliRun text = run_cli({"solve", "--builtin", "trust_tf", "--concept", "vo",
                               "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("timing_irrelevant") != std::string::npos);
}

TEST_CASE("solve from a game file") {
  const CliRun r = run_cli({"solve", "--game", oracles::fixture_path("games/good/coordination.game"),
                            "--concept", "vo"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"verdict\": \"selected\"") != std::string::npos);
  CHECK(r.out.find("\"a1\": \"A\"") != std::string::npos);
}

TEST_CASE("solve failure paths exit with code 2") {
  SUBCASE("broken game file") {
    const CliRun r = run_cli({"solve", "--game",
                              oracles::fixture_path("games/bad/bad02_unknown_timing.game"),
                              "--concept", "nash"});
    CHECK(r.code == 2);
    CHECK(r.err.find("UnknownTiming") != std::string::npos);
  }
  SUBCASE("missing file") {
    const CliRun r = run_cli({"solve", "--game", "/nonexistent.game", "--concept", "nash"});
    CHECK(r.code == 2);
  }
  SUBCASE("unknown concept") {
    const CliRun r = run_cli({"solve", "--builtin", "td_sim", "--concept", "magic"});
    CHECK(r.code == 2);
  }
  SUBCASE("no game source") {
    const CliRun r = run_cli({"solve", "--concept", "nash"});
    CHECK(r.code == 2);
  }
  SUBCASE("refinement of a simultaneous game") {
    const CliRun r = run_cli({"solve", "--builtin", "td_sim", "--concept", "vo"});
    CHECK(r.code == 2);
  }
  SUBCASE("bad override") {
    const CliRun r = run_cli({"solve", "--builtin", "td_seq", "--concept", "nash",
                              "--set", "step=banana"});
    CHECK(r.code == 2);
  }
}

TEST_CASE("solve with parameter overrides") {
  const CliRun r = run_cli({"solve", "--builtin", "td_seq", "--concept", "gvo",
                            "--set", "max_claim=6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"a1\": \"6\"") != std::string::npos);
  CHECK(r.out.find("\"a2\": \"5.5\"") != std::string::npos);
}

TEST_CASE("predict renders the family tables") {
  const CliRun td = run_cli({"predict", "--builtin", "td"});
  CHECK(td.code == 0);
  CHECK(td.out.find("\"prediction\": \"(4, 4)\"") != std::string::npos);
  CHECK(td.out.find("\"prediction\": \"(8, 7.5)\"") != std::string::npos);
  CHECK(td.out.find("\"prediction\": \"timing_irrelevant\"") != std::string::npos);
  CHECK(td.out.find("\"hypothesis\": \"H1'\"") != std::string::npos);

  const CliRun trust = run_cli({"predict", "--builtin", "trust", "--format", "text"});
  CHECK(trust.code == 0);
  CHECK(trust.out.find("(0, 0)") != std::string::npos);
  CHECK(trust.out.find("(4, 4)") != std::string::npos);

  const CliRun pd = run_cli({"predict", "--builtin", "weak_pd"});
  CHECK(pd.code == 0);
  CHECK(pd.out.find("(C, C)") != std::string::npos);

  CHECK(run_cli({"predict", "--builtin", "poker"}).code == 2);
}

TEST_CASE("validate reports diagnostics and exit codes") {
  CHECK(run_cli({"validate", "--game", oracles::fixture_path("games/good/weak_pd.game")}).code == 0);
  const CliRun bad = run_cli({"validate", "--game",
                              oracles::fixture_path("games/bad/bad04_extra_cell.game")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("ArityMismatch") != std::string::npos);
  CHECK(bad.err.find("6:") != std::string::npos);  // line number in the diagnostic
}

TEST_CASE("analyze writes the artifact set") {
  const fs::path dir = fs::temp_directory_path() / "vobs_cli_analyze";
  fs::remove_all(dir);
  const CliRun r = run_cli({"analyze", "--data", oracles::fixture_path("data/paper_pattern.csv"),
                            "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "report.txt"));
  CHECK(fs::exists(dir / "deltas.csv"));
  CHECK(fs::exists(dir / "ecdf_claims_sim.csv"));
  CHECK(fs::exists(dir / "ecdf_delta_return.csv"));

  std::ifstream json(dir / "report.json");
  std::ostringstream body;
  body << json.rdbuf();
  CHECK(body.str().find("\"td_timing_effect\": true") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("analyze failure paths") {
  const fs::path dir = fs::temp_directory_path() / "vobs_cli_analyze_fail";
  SUBCASE("unreadable data") {
    const CliRun r = run_cli({"analyze", "--data", "/nonexistent.csv", "--out", dir.string()});
    CHECK(r.code == 2);
  }
  SUBCASE("row errors surface with row numbers") {
    const fs::path bad = fs::temp_directory_path() / "vobs_bad.csv";
    std::ofstream out(bad);
    out << "subject_id,session_id,sequence,game,role,choice\n";
    out << "a,s1,tdseq_first,td_seq,na,5\n";
    out.close();
    const CliRun r = run_cli({"analyze", "--data", bad.string(), "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("row 2") != std::string::npos);
    fs::remove(bad);
  }
  SUBCASE("incomplete design") {
    const fs::path partial = fs::temp_directory_path() / "vobs_partial.csv";
    std::ofstream out(partial);
    out << "subject_id,session_id,sequence,game,role,choice\n";
    out << "a,s1,tdseq_first,td_sim,na,6\n";
    out.close();
    const CliRun r = run_cli({"analyze", "--data", partial.string(), "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("IncompleteDesign") != std::string::npos);
    fs::remove(partial);
  }
  fs::remove_all(dir);
}

TEST_CASE("unknown commands exit with code 2") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({}).code == 2);
}
