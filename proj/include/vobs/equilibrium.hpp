#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vobs/game.hpp"

namespace vobs {

// A pure action pair, indexed into the game's action sets.
struct Profile {
  int a1 = 0;
  int a2 = 0;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

// Exact argmax set of `player`'s payoff against a fixed opponent action.
// Returned indices are ascending and the set is never empty.
std::vector<int> best_responses(const TimedGame& game, int player, int opponent_action);

// A probability distribution over player 1's actions, with exact weights.
struct Belief {
  std::vector<Rat> weights;

  static Belief point_mass(std::size_t n, int at);
  static Belief uniform(std::size_t n);
  bool is_point_mass_at(int i) const;
};

void require_valid(const Belief& mu, std::size_t n);  // nonnegative, sums to exactly 1

// Player 2's expected-payoff argmax under mu, computed in exact arithmetic.
std::vector<int> best_responses_to_belief(const TimedGame& game, const Belief& mu);

// Every profile at which neither player has a strictly improving unilateral
// deviation. Exhaustive scan, canonical (a1, a2) order.
std::vector<Profile> pure_nash(const TimedGame& game);

enum class DominanceMode { Strict, Weak };

struct Elimination {
  int round;
  int player;
  int action;        // index into that player's original action set
  int dominated_by;  // witness dominator, lowest surviving index
};

struct DominanceResult {
  std::vector<int> survivors1;
  std::vector<int> survivors2;
  std::vector<Elimination> trace;
  int rounds = 0;
};

// Iterated elimination with maximal simultaneous removal for both players
// each round; dominators are surviving pure actions only.
DominanceResult iterated_dominance(const TimedGame& game, DominanceMode mode);

// The first mover's history-contingent model of the second mover: for each
// player-1 action, the full best-response set of player 2, plus enumeration
// of the pure selections (one response per action) drawn from it.
struct VirtualConjecture {
  std::vector<std::vector<int>> br_map;  // [a1 index] -> ascending response set

  long long selection_count() const;
  // All pure selections in lexicographic order; selection[a1] = a2 index.
  std::vector<std::vector<int>> selections() const;
};

// Requires a sequential game in normalized orientation. Simultaneous games
// are rejected: without a move order there is nothing to conjecture about.
VirtualConjecture virtual_conjecture(const NormalizedGame& normalized);

// Backward-induction outcomes of the game with the hidden move made
// observable: for every pure selection of the conjecture, every exact
// argmax action of player 1 yields an outcome.
struct SpeOutcome {
  Profile profile;             // normalized orientation
  std::vector<int> selection;  // the selection that produced it
};

struct SpeResult {
  std::vector<SpeOutcome> outcomes;       // enumeration order
  std::vector<Profile> distinct_original; // deduplicated, original orientation, sorted
  RoleMap roles;
};

SpeResult subgame_perfect_erased(const NormalizedGame& normalized);

// One solution of the virtual-observability fixed point: a pure profile, the
// second mover's belief (a point mass at the first mover's action), and the
// conjecture selection that rationalizes the first mover. The conjecture is
// absent for simultaneous games, where the concept collapses to pure Nash.
struct GvoAssessment {
  int sigma1 = 0;  // normalized orientation
  int sigma2 = 0;
  Belief mu;
  std::optional<std::vector<int>> conjecture;
};

struct GvoResult {
  std::vector<GvoAssessment> assessments;  // enumeration order
  std::vector<Profile> outcomes;           // deduplicated, original orientation, sorted
  RoleMap roles;
  long long selection_count = 1;  // tie multiplicity of the conjecture
};

GvoResult gvo(const TimedGame& game);

// Literal check of the defining conditions of an assessment, cell by cell,
// against the normalized game. Returns human-readable failures; empty means
// the assessment passes. Assessments without a conjecture are checked as
// mutual best responses under the stated belief.
std::vector<std::string> check_assessment(const TimedGame& normalized, const GvoAssessment& a);

// Maps a profile from normalized back to original orientation.
Profile to_original(const RoleMap& roles, const Profile& p);

// Verdict of the timing-refinement procedure: make the hidden move
// observable, take the backward-induction outcomes, and keep those that are
// pure Nash equilibria of the original game. The verdict only selects when
// that actually narrows the Nash set; if nothing matches, or the matches are
// the whole Nash set, timing cannot move play and the verdict is
// timing-irrelevant.
struct RefinementVerdict {
  std::vector<Profile> selection;      // non-empty iff the procedure refines
  std::vector<Profile> spe_profiles;   // distinct induction outcomes, original orientation
  std::vector<Profile> nash_matches;   // spe_profiles that are Nash

  bool selected() const { return !selection.empty(); }
  bool timing_irrelevant() const { return selection.empty(); }
};

RefinementVerdict vo_refinement(const TimedGame& game);

// ---------------------------------------------------------------------------
// Solve dispatch and serialization

enum class Concept { Nash, WeakDominance, StrictDominance, Spe, VoRefinement, Gvo };

std::optional<Concept> concept_from_token(std::string_view token);
std::string concept_token(Concept c);

struct SolveResult {
  Concept kind = Concept::Nash;
  std::string game_name;
  Timing timing = Timing::Simultaneous;

  struct Outcome {
    Profile profile;  // original orientation
    Rat u1;
    Rat u2;
    long long multiplicity = 1;  // assessments / selections hitting this profile
  };
  std::vector<Outcome> outcomes;

  std::vector<Elimination> trace;  // dominance concepts only
  std::optional<std::pair<std::vector<int>, std::vector<int>>> survivors;
  std::optional<std::string> verdict;  // refinement: "selected" | "timing_irrelevant"
  long long selection_count = 0;       // spe/gvo tie multiplicity
  std::string first_mover;             // "p1" | "p2" | "" for simultaneous
};

SolveResult solve(const TimedGame& game, Concept kind);

// Stable JSON rendering; payoffs appear as exact decimal strings.
std::string solve_result_json(const SolveResult& result, const TimedGame& game);
std::string solve_result_text(const SolveResult& result, const TimedGame& game);

}  // namespace vobs
