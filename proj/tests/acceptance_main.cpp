// Acceptance suite: one criterion per line, PASS/FAIL, nonzero exit when
// anything fails. Each criterion pins its tolerance in code; the evidence is
// either exact equality or an explicitly stated bound.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "vobs/catalog.hpp"
#include "vobs/dataset.hpp"
#include "vobs/equilibrium.hpp"
#include "vobs/gamespec.hpp"
#include "vobs/report.hpp"
#include "vobs/stats.hpp"

namespace fs = std::filesystem;
using namespace vobs;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

void require_under(double seconds, double limit, const std::string& what) {
  require(seconds < limit,
          what + " took " + std::to_string(seconds) + "s, limit " + std::to_string(limit) + "s");
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TimedGame coordination_game() {
  TimedGame g;
  g.name = "coord";
  g.a1 = ActionSet::from_labels({"A", "B"});
  g.a2 = ActionSet::from_labels({"A", "B"});
  g.u1 = {{Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
  g.u2 = {{Rat(1), Rat(0)}, {Rat(0), Rat(2)}};
  g.timing = Timing::P1First;
  return g;
}

TimedGame random_game(std::mt19937& rng, Timing timing) {
  std::uniform_int_distribution<int> size_dist(1, 6);
  std::uniform_int_distribution<long long> payoff_dist(-9, 9);
  TimedGame g;
  g.name = "random";
  const int n1 = size_dist(rng);
  const int n2 = size_dist(rng);
  std::vector<Rat> v1, v2;
  for (int i = 0; i < n1; ++i) v1.emplace_back(i);
  for (int j = 0; j < n2; ++j) v2.emplace_back(j);
  g.a1 = ActionSet::from_values(v1);
  g.a2 = ActionSet::from_values(v2);
  g.u1.assign(n1, std::vector<Rat>(n2));
  g.u2.assign(n1, std::vector<Rat>(n2));
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      g.u1[i][j] = Rat(payoff_dist(rng));
      g.u2[i][j] = Rat(payoff_dist(rng));
    }
  }
  g.timing = timing;
  return g;
}

std::string profile_labels(const TimedGame& g, const Profile& p) {
  return "(" + g.a1.labels[p.a1] + ", " + g.a2.labels[p.a2] + ")";
}

// --- criteria -------------------------------------------------------------

void criterion_sequential_td_solution() {
  const TimedGame td = make_builtin("td_seq");
  const GvoResult g = gvo(td);
  require(g.outcomes.size() == 1, "expected a unique outcome");
  require(profile_labels(td, g.outcomes.front()) == "(8, 7.5)",
          "outcome is " + profile_labels(td, g.outcomes.front()) + ", expected (8, 7.5)");
}

void criterion_trust_solutions() {
  const TimedGame tif = make_builtin("trust_if");
  const GvoResult gif = gvo(tif);
  require(gif.outcomes.size() == 1 && profile_labels(tif, gif.outcomes.front()) == "(4, 4)",
          "investor-first outcome is not (4, 4)");
  const TimedGame ttf = make_builtin("trust_tf");
  const GvoResult gtf = gvo(ttf);
  require(gtf.outcomes.size() == 1 && profile_labels(ttf, gtf.outcomes.front()) == "(0, 0)",
          "trustee-first outcome is not (0, 0)");
}

void criterion_nash_benchmarks() {
  const struct {
    const char* name;
    Profile expected;
  } cases[] = {
      {"td_sim", {0, 0}},
      {"trust_if", {0, 0}},
      {"weak_pd", {1, 1}},
  };
  for (const auto& c : cases) {
    const TimedGame g = make_builtin(c.name);
    const auto nash = pure_nash(g);
    require(nash.size() == 1 && nash.front() == c.expected,
            std::string(c.name) + ": unexpected equilibrium set");
    require(nash == oracles::literal_pure_nash(g),
            std::string(c.name) + ": solver disagrees with the deviation scan");
  }
}

void criterion_refinement_verdicts() {
  for (const char* name : {"td_seq", "trust_if", "trust_tf"}) {
    const RefinementVerdict v = vo_refinement(make_builtin(name));
    require(v.timing_irrelevant(), std::string(name) + ": expected a timing-irrelevant verdict");
  }
  const TimedGame coord = coordination_game();
  const RefinementVerdict v = vo_refinement(coord);
  require(v.selected() && v.selection.size() == 1 &&
              profile_labels(coord, v.selection.front()) == "(A, A)",
          "coordination control: expected selection {(A, A)}");
}

void criterion_trust_table_fidelity() {
  const Rat expected_u1[5][5] = {
      {Rat(4), Rat(6), Rat(8), Rat(10), Rat(12)},
      {Rat(2), Rat(5), Rat(7), Rat(9), Rat(11)},
      {Rat(2), Rat(2), Rat(6), Rat(8), Rat(10)},
      {Rat(2), Rat(2), Rat(2), Rat(7), Rat(9)},
      {Rat(2), Rat(2), Rat(2), Rat(2), Rat(8)},
  };
  const Rat expected_u2[5][5] = {
      {Rat(4), Rat(2), Rat(0), Rat(-2), Rat(-4)},
      {Rat(2), Rat(5), Rat(3), Rat(1), Rat(-1)},
      {Rat(2), Rat(2), Rat(6), Rat(4), Rat(2)},
      {Rat(2), Rat(2), Rat(2), Rat(7), Rat(5)},
      {Rat(2), Rat(2), Rat(2), Rat(2), Rat(8)},
  };
  const TimedGame trust = make_builtin("trust_if");
  require(trust.n1() == 5 && trust.n2() == 5, "trust matrix is not 5x5");
  for (int i = 0; i < 5; ++i) {
    for (int r = 0; r < 5; ++r) {
      require(trust.u1[i][r] == expected_u1[i][r] && trust.u2[i][r] == expected_u2[i][r],
              "cell (I=" + std::to_string(i) + ", R=" + std::to_string(r) + ") mismatches");
    }
  }
  require(trust.u1[2][3] == Rat(8) && trust.u2[2][3] == Rat(4), "(2,3) must pay (8,4)");
  require(trust.u1[0][4] == Rat(12) && trust.u2[0][4] == Rat(-4), "(0,4) must pay (12,-4)");
}

void criterion_worked_examples() {
  // claims of 2 and 3 with reward/penalty 1 pay (3, 1)
  const TimedGame tiny = travelers_dilemma({Rat(2), Rat(3), Rat(1), Rat(1)}, Timing::Simultaneous);
  require(tiny.u1[0][1] == Rat(3) && tiny.u2[0][1] == Rat(1), "claims (2,3) must pay (3,1)");
  require(td_payoffs(Rat(2), Rat(3), Rat(1)) == std::make_pair(Rat(3), Rat(1)),
          "payoff formula disagrees");

  // pass 3 with displayed return 8 pays (9, 5); displayed return 4 fails the
  // threshold and pays the reduced endowments (2, 2)
  const TrustParams params;
  const Rat high = parse_displayed_return(params, Rat(8));
  require(trust_payoffs(params.endowment, Rat(3), high) == std::make_pair(Rat(9), Rat(5)),
          "pass 3 / displayed 8 must pay (9, 5)");
  const Rat low = parse_displayed_return(params, Rat(4));
  require(trust_payoffs(params.endowment, Rat(3), low) == std::make_pair(Rat(2), Rat(2)),
          "pass 3 / displayed 4 must pay (2, 2)");
}

void criterion_dominance_solvability() {
  const TimedGame td = make_builtin("td_sim");
  const DominanceResult result = iterated_dominance(td, DominanceMode::Weak);
  require(result.survivors1 == std::vector<int>{0} && result.survivors2 == std::vector<int>{0},
          "weak dominance must leave only the minimum claim");
  // the trace removes the current top claim for both players each round
  require(result.rounds == 8, "expected eight rounds");
  for (const Elimination& e : result.trace) {
    require(e.action == 9 - e.round, "round " + std::to_string(e.round) +
                                         " removed index " + std::to_string(e.action));
  }
  require(result.trace.size() == 16, "expected one elimination per player per round");
}

void criterion_random_conformance() {
  std::mt19937 rng(20250810);
  for (int trial = 0; trial < 200; ++trial) {
    TimedGame g = random_game(rng, Timing::P1First);
    const GvoResult solved = gvo(g);
    require(!solved.assessments.empty(), "sequential solution may not be empty");
    const NormalizedGame normalized = normalize_roles(g);
    for (const GvoAssessment& a : solved.assessments) {
      const auto failures = check_assessment(normalized.game, a);
      require(failures.empty(), "assessment violates the defining conditions: " + failures.front());
    }
    TimedGame sim = g;
    sim.timing = Timing::Simultaneous;
    require(gvo(sim).outcomes == pure_nash(sim),
            "simultaneous outcomes must coincide with pure Nash");
  }
}

void criterion_statistical_oracles() {
  using stats::ModePolicy;
  using stats::Tail;

  // exact rank tests against full-enumeration oracles, n+m <= 12
  const std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> rank_fixtures = {
      {{Rat(1), Rat(2), Rat(3)}, {Rat(4), Rat(5), Rat(6)}},
      {{Rat(1), Rat(1), Rat(2)}, {Rat(1), Rat(2), Rat(2)}},
      {{Rat(9, 2), Rat(11, 2), Rat(11, 2), Rat(6)}, {Rat(11, 2), Rat(13, 2)}},
      {{Rat(1), Rat(1), Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)}},
      {{Rat(2), Rat(4), Rat(6), Rat(8), Rat(10), Rat(12)},
       {Rat(1), Rat(3), Rat(5), Rat(7), Rat(9), Rat(11)}},
  };
  for (const auto& [x, y] : rank_fixtures) {
    const auto oracle = oracles::rank_sum_exact(x, y);
    const auto two = stats::rank_sum(x, y, Tail::TwoSided, ModePolicy::ForceExact);
    const auto gr = stats::rank_sum(x, y, Tail::Greater, ModePolicy::ForceExact);
    const auto le = stats::rank_sum(x, y, Tail::Less, ModePolicy::ForceExact);
    require(*two.p_count == oracle.two_sided && *gr.p_count == oracle.greater &&
                *le.p_count == oracle.less,
            "rank-sum exact counts disagree with the enumeration oracle");
  }

  const std::vector<std::vector<Rat>> signed_fixtures = {
      {Rat(1), Rat(2), Rat(3)},
      {Rat(-1), Rat(1)},
      {Rat(0), Rat(0), Rat(2)},
      {Rat(-3, 2), Rat(-1, 2), Rat(-3, 2), Rat(0), Rat(-1)},
      {Rat(-5), Rat(-2), Rat(-2), Rat(1), Rat(1), Rat(1), Rat(3)},
  };
  for (const auto& diffs : signed_fixtures) {
    const auto oracle = oracles::signed_rank_exact(diffs);
    const auto two = stats::signed_rank(diffs, Tail::TwoSided, ModePolicy::ForceExact);
    const auto gr = stats::signed_rank(diffs, Tail::Greater, ModePolicy::ForceExact);
    const auto le = stats::signed_rank(diffs, Tail::Less, ModePolicy::ForceExact);
    require(*two.p_count == oracle.two_sided && *gr.p_count == oracle.greater &&
                *le.p_count == oracle.less,
            "signed-rank exact counts disagree with the enumeration oracle");
  }

  // t tails within 1e-9 of the quadrature oracle
  const std::vector<std::pair<std::vector<Rat>, Rat>> t_fixtures = {
      {{Rat(1), Rat(2), Rat(3)}, Rat(0)},
      {{Rat(3, 2), Rat(5, 2), Rat(9, 2), Rat(5), Rat(6)}, Rat(2)},
      {{Rat(-9), Rat(-3), Rat(0), Rat(1), Rat(1), Rat(2), Rat(5), Rat(14)}, Rat(1, 2)},
  };
  for (const auto& [x, mu0] : t_fixtures) {
    const auto greater = stats::t_test(x, mu0, Tail::Greater);
    const double oracle = oracles::t_sf_quadrature(greater.statistic, greater.n - 1);
    require(std::fabs(greater.p_value - oracle) <= 1e-9, "t tail deviates from quadrature");
    const auto two = stats::t_test(x, mu0, Tail::TwoSided);
    const double oracle_two =
        2.0 * oracles::t_sf_quadrature(std::fabs(two.statistic), two.n - 1);
    require(std::fabs(two.p_value - oracle_two) <= 1e-9, "two-sided t deviates from quadrature");
  }

  // exact and approximate modes agree within 0.02 on random untied samples
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> size_dist(5, 12);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  std::vector<Rat> grid;
  for (long long k = 1; k <= 400; ++k) grid.emplace_back(k, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size_dist(rng);
    const int m = size_dist(rng);
    std::shuffle(grid.begin(), grid.end(), rng);
    const std::vector<Rat> x(grid.begin(), grid.begin() + n);
    const std::vector<Rat> y(grid.begin() + n, grid.begin() + n + m);
    for (Tail tail : {Tail::TwoSided, Tail::Greater, Tail::Less}) {
      const double pe = stats::rank_sum(x, y, tail, ModePolicy::ForceExact).p_value;
      const double pa = stats::rank_sum(x, y, tail, ModePolicy::ForceApproximate).p_value;
      require(std::fabs(pe - pa) <= 0.02, "rank-sum exact/approximate gap exceeds 0.02");
    }
    std::shuffle(grid.begin(), grid.end(), rng);
    std::vector<Rat> diffs;
    for (int i = 0; i < n; ++i) diffs.push_back(sign_dist(rng) == 0 ? grid[i] : -grid[i]);
    for (Tail tail : {Tail::TwoSided, Tail::Greater, Tail::Less}) {
      const double pe = stats::signed_rank(diffs, tail, ModePolicy::ForceExact).p_value;
      const double pa = stats::signed_rank(diffs, tail, ModePolicy::ForceApproximate).p_value;
      require(std::fabs(pe - pa) <= 0.02, "signed-rank exact/approximate gap exceeds 0.02");
    }
  }
}

void criterion_pipeline_end_to_end() {
  const data::ChoiceDataset dataset =
      data::ingest_csv_file(oracles::fixture_path("data/paper_pattern.csv"));
  const report::AnalysisReport rep = report::hypothesis_report(dataset, report::ReportOptions{});

  require(rep.flags.td_timing_effect, "fixture must show a timing effect in the claims game");
  require(rep.flags.td_first_movers_toward_equilibrium,
          "fixture must show first movers moving toward the minimum claim");
  require(rep.flags.trust_timing_null, "fixture must show no trust timing effect");

  const fs::path out_dir = fs::temp_directory_path() / "vobs_acceptance_report";
  fs::remove_all(out_dir);
  report::write_analysis_artifacts(dataset, rep, out_dir);

  const fs::path expected_dir = oracles::fixture_path("expected/report");
  require(fs::exists(expected_dir), "expected-report fixtures are missing");
  std::size_t expected_files = 0;
  for (const auto& entry : fs::directory_iterator(expected_dir)) {
    ++expected_files;
    const fs::path produced = out_dir / entry.path().filename();
    require(fs::exists(produced), "missing artifact " + entry.path().filename().string());
    require(slurp(produced) == slurp(entry.path()),
            "artifact " + entry.path().filename().string() + " differs from the expected bytes");
  }
  std::size_t produced_files = 0;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    (void)entry;
    ++produced_files;
  }
  require(expected_files == produced_files, "artifact count differs from the expected set");
  fs::remove_all(out_dir);
}

void criterion_parser_round_trip() {
  for (const std::string& name : builtin_names()) {
    const TimedGame g = make_builtin(name);
    const TimedGame back = gamespec::parse_game_or_throw(gamespec::serialize_game(g));
    require(back.name == g.name && back.timing == g.timing && back.a1.labels == g.a1.labels &&
                back.a2.labels == g.a2.labels && back.u1 == g.u1 && back.u2 == g.u2,
            name + ": round trip is not the identity");
  }

  std::mt19937 rng(60901);
  std::uniform_int_distribution<int> size_dist(1, 7);
  std::uniform_int_distribution<long long> num_dist(-40, 40);
  std::uniform_int_distribution<long long> den_dist(1, 12);
  const Timing timings[] = {Timing::Simultaneous, Timing::P1First, Timing::P2First};
  for (int trial = 0; trial < 100; ++trial) {
    TimedGame g;
    g.name = "rt" + std::to_string(trial);
    const int n1 = size_dist(rng);
    const int n2 = size_dist(rng);
    std::vector<std::string> l1, l2;
    for (int i = 0; i < n1; ++i) l1.push_back("a" + std::to_string(i));
    for (int j = 0; j < n2; ++j) l2.push_back(Rat(j, 2).to_string());
    g.a1 = ActionSet::from_labels(l1);
    g.a2 = ActionSet::from_labels(l2);
    g.u1.assign(n1, std::vector<Rat>(n2));
    g.u2.assign(n1, std::vector<Rat>(n2));
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        g.u1[i][j] = Rat(num_dist(rng), den_dist(rng));
        g.u2[i][j] = Rat(num_dist(rng), den_dist(rng));
      }
    }
    g.timing = timings[trial % 3];
    const TimedGame back = gamespec::parse_game_or_throw(gamespec::serialize_game(g));
    require(back.a1.labels == g.a1.labels && back.a2.labels == g.a2.labels && back.u1 == g.u1 &&
                back.u2 == g.u2 && back.timing == g.timing,
            "random round trip failed at trial " + std::to_string(trial));
  }

  const struct {
    const char* file;
    gamespec::DiagCode code;
    int line;
  } corpus[] = {
      {"bad01_missing_game.game", gamespec::DiagCode::MissingSection, 1},
      {"bad02_unknown_timing.game", gamespec::DiagCode::UnknownTiming, 2},
      {"bad03_duplicate_label.game", gamespec::DiagCode::DuplicateLabel, 3},
      {"bad04_extra_cell.game", gamespec::DiagCode::ArityMismatch, 6},
      {"bad05_malformed_cell.game", gamespec::DiagCode::MalformedCell, 6},
      {"bad06_malformed_number.game", gamespec::DiagCode::MalformedNumber, 6},
      {"bad07_missing_payoffs.game", gamespec::DiagCode::MissingSection, 5},
      {"bad08_missing_row.game", gamespec::DiagCode::ArityMismatch, 7},
      {"bad09_empty_actions.game", gamespec::DiagCode::MissingSection, 4},
      {"bad10_bad_fraction.game", gamespec::DiagCode::MalformedNumber, 7},
  };
  for (const auto& c : corpus) {
    const auto parsed =
        gamespec::parse_game(slurp(oracles::fixture_path(std::string("games/bad/") + c.file)));
    require(!parsed.ok(), std::string(c.file) + ": expected a parse failure");
    require(parsed.diagnostic->code == c.code && parsed.diagnostic->line == c.line,
            std::string(c.file) + ": wrong diagnostic " + parsed.diagnostic->render());
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void()> body;
    double time_limit_s;  // 0 = untimed
  };
  const std::vector<Criterion> criteria = {
      {1, "sequential traveler's dilemma solves to (8, 7.5)", criterion_sequential_td_solution, 1.0},
      {2, "trust solutions: investor-first (4,4), trustee-first (0,0)", criterion_trust_solutions, 1.0},
      {3, "Nash benchmarks verified against the deviation scan", criterion_nash_benchmarks, 1.0},
      {4, "refinement verdicts: three nulls and the coordination control", criterion_refinement_verdicts, 0.0},
      {5, "trust matrix matches the reference table in all 25 cells", criterion_trust_table_fidelity, 0.0},
      {6, "worked payoff examples: claims (2,3) and the pass-3 returns", criterion_worked_examples, 0.0},
      {7, "iterated weak dominance solves the claims game downward", criterion_dominance_solvability, 1.0},
      {8, "200 random games satisfy the defining conditions", criterion_random_conformance, 10.0},
      {9, "statistical engines match the enumeration and quadrature oracles", criterion_statistical_oracles, 0.0},
      {10, "analysis pipeline reproduces the expected report byte for byte", criterion_pipeline_end_to_end, 0.0},
      {11, "parser round trip and the malformed corpus", criterion_parser_round_trip, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && c.time_limit_s > 0.0) {
      try {
        require_under(elapsed, c.time_limit_s, "criterion");
      } catch (const std::exception& e) {
        error = e.what();
      }
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%s  %2d  %-62s (%.3fs)",
                  error.empty() ? "PASS" : "FAIL", c.id, c.name, elapsed);
    std::cout << line << "\n";
    if (!error.empty()) {
      std::cout << "        " << error << "\n";
      ++failures;
    }
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed\n";
  return 0;
}
