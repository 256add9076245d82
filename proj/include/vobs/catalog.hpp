#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vobs/game.hpp"

namespace vobs {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Traveler's dilemma: both players claim a value on a fixed grid; equal
// claims pay themselves, otherwise the low claimant earns min + r and the
// high claimant min - r.

struct TdParams {
  Rat min_claim{4};
  Rat max_claim{8};
  Rat step{1, 2};
  Rat penalty_reward{1};
};

// Payoffs of the claim pair (own, other) under reward/penalty r.
std::pair<Rat, Rat> td_payoffs(const Rat& claim_i, const Rat& claim_j, const Rat& r);

TimedGame travelers_dilemma(const TdParams& params, Timing timing);

// ---------------------------------------------------------------------------
// Trust game: the investor sends I, the trustee returns R; the transfer is
// valid only when R >= I, otherwise both keep half their endowment. Valid
// transfers pay the investor E - I + 2R and the trustee E + 3I - 2R.

enum class TrustFirstMover { Investor, Trustee };

struct TrustParams {
  Rat endowment{4};
  std::vector<Rat> invest_levels{Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)};
  std::vector<Rat> return_levels{Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)};
  TrustFirstMover first_mover = TrustFirstMover::Investor;
  long long display_scale_return = 2;  // participants see returns on this scale
};

std::pair<Rat, Rat> trust_payoffs(const Rat& endowment, const Rat& invest, const Rat& ret);

TimedGame trust_game(const TrustParams& params);

// The return level as shown at the I/O boundary (level * display scale), and
// its inverse. Both reject values that are not on the corresponding grid.
Rat display_return(const TrustParams& params, const Rat& level);
Rat parse_displayed_return(const TrustParams& params, const Rat& displayed);

// ---------------------------------------------------------------------------
// Weak prisoner's dilemma: a 2x2 game with actions C and D whose defining
// properties are enforced at construction:
//   (a) (D,D) is the unique pure Nash equilibrium,
//   (b) D weakly dominates C for at least one player,
//   (c) (C,C) strictly Pareto-dominates (D,D),
//   (d) the player-1-first virtual-observability solution can reach (C,C).

struct WeakPdParams {
  Rat u1_cc{4}, u1_cd{0}, u1_dc{5}, u1_dd{1};
  Rat u2_cc{4}, u2_cd{4}, u2_dc{0}, u2_dd{1};
};

TimedGame weak_pd(const WeakPdParams& params, Timing timing);

// ---------------------------------------------------------------------------
// Builtins for the command line.

struct BuiltinInfo {
  std::string name;
  std::string description;
};

const std::vector<BuiltinInfo>& builtin_infos();
std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);

// Constructs a builtin by name with optional key=value overrides; values use
// the same literal grammar as the game file format. Throws CatalogError on
// unknown names, unknown keys, or malformed values.
TimedGame make_builtin(std::string_view name,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace vobs
