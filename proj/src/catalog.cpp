#include "vobs/catalog.hpp"

#include <algorithm>

#include "vobs/equilibrium.hpp"

namespace vobs {

std::pair<Rat, Rat> td_payoffs(const Rat& claim_i, const Rat& claim_j, const Rat& r) {
  if (claim_i == claim_j) return {claim_i, claim_j};
  const Rat low = std::min(claim_i, claim_j);
  if (claim_i < claim_j) return {low + r, low - r};
  return {low - r, low + r};
}

TimedGame travelers_dilemma(const TdParams& params, Timing timing) {
  if (!(params.step > Rat(0))) throw CatalogError("travelers_dilemma: step must be positive");
  if (!(params.min_claim < params.max_claim)) {
    throw CatalogError("travelers_dilemma: min_claim must be below max_claim");
  }
  if (params.penalty_reward < Rat(0)) {
    throw CatalogError("travelers_dilemma: penalty_reward must be nonnegative");
  }
  const Rat span = (params.max_claim - params.min_claim) / params.step;
  if (!span.is_integer()) {
    throw CatalogError("travelers_dilemma: claim range is not a whole number of steps");
  }
  std::vector<Rat> claims;
  for (Rat c = params.min_claim; c <= params.max_claim; c += params.step) claims.push_back(c);

  TimedGame game;
  game.name = timing == Timing::Simultaneous ? "td_sim" : "td_seq";
  game.a1 = ActionSet::from_values(claims);
  game.a2 = ActionSet::from_values(claims);
  game.timing = timing;
  const std::size_t n = claims.size();
  game.u1.assign(n, std::vector<Rat>(n));
  game.u2.assign(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto [ui, uj] = td_payoffs(claims[i], claims[j], params.penalty_reward);
      game.u1[i][j] = ui;
      game.u2[i][j] = uj;
    }
  }
  return game;
}

std::pair<Rat, Rat> trust_payoffs(const Rat& endowment, const Rat& invest, const Rat& ret) {
  if (ret >= invest) {
    return {endowment - invest + Rat(2) * ret, endowment + Rat(3) * invest - Rat(2) * ret};
  }
  const Rat half = endowment / Rat(2);
  return {half, half};
}

namespace {

void check_levels(const std::vector<Rat>& levels, const char* which) {
  if (levels.empty()) throw CatalogError(std::string("trust_game: empty ") + which + " levels");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i - 1] < levels[i])) {
      throw CatalogError(std::string("trust_game: ") + which + " levels must be strictly increasing");
    }
  }
  if (std::find(levels.begin(), levels.end(), Rat(0)) == levels.end()) {
    throw CatalogError(std::string("trust_game: ") + which + " levels must include 0");
  }
}

}  // namespace

TimedGame trust_game(const TrustParams& params) {
  if (!(params.endowment > Rat(0))) throw CatalogError("trust_game: endowment must be positive");
  if (params.display_scale_return <= 0) {
    throw CatalogError("trust_game: display scale must be positive");
  }
  check_levels(params.invest_levels, "invest");
  check_levels(params.return_levels, "return");

  TimedGame game;
  game.name = params.first_mover == TrustFirstMover::Investor ? "trust_if" : "trust_tf";
  game.a1 = ActionSet::from_values(params.invest_levels);
  game.a2 = ActionSet::from_values(params.return_levels);
  game.timing = params.first_mover == TrustFirstMover::Investor ? Timing::P1First : Timing::P2First;
  game.u1.assign(params.invest_levels.size(), std::vector<Rat>(params.return_levels.size()));
  game.u2.assign(params.invest_levels.size(), std::vector<Rat>(params.return_levels.size()));
  for (std::size_t i = 0; i < params.invest_levels.size(); ++i) {
    for (std::size_t j = 0; j < params.return_levels.size(); ++j) {
      auto [ui, ut] = trust_payoffs(params.endowment, params.invest_levels[i], params.return_levels[j]);
      game.u1[i][j] = ui;
      game.u2[i][j] = ut;
    }
  }
  return game;
}

Rat display_return(const TrustParams& params, const Rat& level) {
  if (std::find(params.return_levels.begin(), params.return_levels.end(), level) ==
      params.return_levels.end()) {
    throw CatalogError("display_return: " + level.to_string() + " is not a return level");
  }
  return level * Rat(params.display_scale_return);
}

Rat parse_displayed_return(const TrustParams& params, const Rat& displayed) {
  const Rat level = displayed / Rat(params.display_scale_return);
  if (std::find(params.return_levels.begin(), params.return_levels.end(), level) ==
      params.return_levels.end()) {
    throw CatalogError("parse_displayed_return: " + displayed.to_string() +
                       " is not a displayed return value");
  }
  return level;
}

TimedGame weak_pd(const WeakPdParams& params, Timing timing) {
  TimedGame game;
  game.name = "weak_pd";
  game.a1 = ActionSet::from_labels({"C", "D"});
  game.a2 = ActionSet::from_labels({"C", "D"});
  game.timing = timing;
  game.u1 = {{params.u1_cc, params.u1_cd}, {params.u1_dc, params.u1_dd}};
  game.u2 = {{params.u2_cc, params.u2_cd}, {params.u2_dc, params.u2_dd}};

  // (a) unique pure Nash at (D,D)
  const auto nash = pure_nash(game);
  if (nash.size() != 1 || nash.front() != Profile{1, 1}) {
    throw CatalogError("weak_pd: (D,D) must be the unique pure Nash equilibrium");
  }
  // (b) D weakly dominates C for at least one player
  auto weakly_dominated_c = [&](int player) {
    bool strict = false;
    for (int opp = 0; opp < 2; ++opp) {
      const Rat& d = player == 1 ? game.u1[1][opp] : game.u2[opp][1];
      const Rat& c = player == 1 ? game.u1[0][opp] : game.u2[opp][0];
      if (d < c) return false;
      if (d > c) strict = true;
    }
    return strict;
  };
  if (!weakly_dominated_c(1) && !weakly_dominated_c(2)) {
    throw CatalogError("weak_pd: D must weakly dominate C for at least one player");
  }
  // (c) (C,C) strictly Pareto-dominates (D,D)
  if (!(params.u1_cc > params.u1_dd && params.u2_cc > params.u2_dd)) {
    throw CatalogError("weak_pd: (C,C) must strictly Pareto-dominate (D,D)");
  }
  // (d) (C,C) is reachable under virtual observability when player 1 leads
  TimedGame seq = game;
  seq.timing = Timing::P1First;
  const GvoResult g = gvo(seq);
  if (std::find(g.outcomes.begin(), g.outcomes.end(), Profile{0, 0}) == g.outcomes.end()) {
    throw CatalogError("weak_pd: (C,C) must be reachable under the sequential solution");
  }
  return game;
}

// ---------------------------------------------------------------------------

const std::vector<BuiltinInfo>& builtin_infos() {
  static const std::vector<BuiltinInfo> infos = {
      {"td_sim", "simultaneous traveler's dilemma, claims 4..8 by 0.5, reward/penalty 1"},
      {"td_seq", "sequential traveler's dilemma (player 1 commits first, unobserved)"},
      {"trust_if", "trust game, investor commits first (unobserved), endowment 4"},
      {"trust_tf", "trust game, trustee commits first (unobserved), endowment 4"},
      {"weak_pd",
       "weak prisoner's dilemma, player 1 first; payoffs are a representative instance of the "
       "documented constraints"},
  };
  return infos;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& info : builtin_infos()) names.push_back(info.name);
  return names;
}

bool is_builtin(std::string_view name) {
  for (const auto& info : builtin_infos()) {
    if (info.name == name) return true;
  }
  return false;
}

namespace {

Rat parse_value(const std::string& key, const std::string& text) {
  if (auto v = Rat::parse(text)) return *v;
  throw CatalogError("override " + key + ": malformed value '" + text + "'");
}

Timing parse_timing(const std::string& key, const std::string& text) {
  if (auto t = timing_from_token(text)) return *t;
  throw CatalogError("override " + key + ": unknown timing '" + text + "'");
}

std::vector<Rat> integer_levels(const Rat& max) {
  if (!max.is_integer() || max.num() < 1) {
    throw CatalogError("level maximum must be a positive integer");
  }
  std::vector<Rat> levels;
  for (long long v = 0; v <= max.num(); ++v) levels.emplace_back(v);
  return levels;
}

TimedGame make_td(Timing timing, const std::vector<std::pair<std::string, std::string>>& overrides) {
  TdParams params;
  for (const auto& [key, value] : overrides) {
    if (key == "min_claim") params.min_claim = parse_value(key, value);
    else if (key == "max_claim") params.max_claim = parse_value(key, value);
    else if (key == "step") params.step = parse_value(key, value);
    else if (key == "penalty_reward") params.penalty_reward = parse_value(key, value);
    else throw CatalogError("unknown traveler's-dilemma override '" + key + "'");
  }
  return travelers_dilemma(params, timing);
}

TimedGame make_trust(TrustFirstMover mover,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  TrustParams params;
  params.first_mover = mover;
  for (const auto& [key, value] : overrides) {
    if (key == "endowment") params.endowment = parse_value(key, value);
    else if (key == "invest_max") params.invest_levels = integer_levels(parse_value(key, value));
    else if (key == "return_max") params.return_levels = integer_levels(parse_value(key, value));
    else if (key == "display_scale_return") {
      const Rat v = parse_value(key, value);
      if (!v.is_integer() || v.num() <= 0) throw CatalogError("display_scale_return must be a positive integer");
      params.display_scale_return = v.num();
    } else {
      throw CatalogError("unknown trust-game override '" + key + "'");
    }
  }
  return trust_game(params);
}

TimedGame make_weak_pd(const std::vector<std::pair<std::string, std::string>>& overrides) {
  WeakPdParams params;
  Timing timing = Timing::P1First;
  for (const auto& [key, value] : overrides) {
    if (key == "timing") timing = parse_timing(key, value);
    else if (key == "u1_cc") params.u1_cc = parse_value(key, value);
    else if (key == "u1_cd") params.u1_cd = parse_value(key, value);
    else if (key == "u1_dc") params.u1_dc = parse_value(key, value);
    else if (key == "u1_dd") params.u1_dd = parse_value(key, value);
    else if (key == "u2_cc") params.u2_cc = parse_value(key, value);
    else if (key == "u2_cd") params.u2_cd = parse_value(key, value);
    else if (key == "u2_dc") params.u2_dc = parse_value(key, value);
    else if (key == "u2_dd") params.u2_dd = parse_value(key, value);
    else throw CatalogError("unknown weak-pd override '" + key + "'");
  }
  return weak_pd(params, timing);
}

}  // namespace

TimedGame make_builtin(std::string_view name,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  if (name == "td_sim") return make_td(Timing::Simultaneous, overrides);
  if (name == "td_seq") return make_td(Timing::P1First, overrides);
  if (name == "trust_if") return make_trust(TrustFirstMover::Investor, overrides);
  if (name == "trust_tf") return make_trust(TrustFirstMover::Trustee, overrides);
  if (name == "weak_pd") return make_weak_pd(overrides);
  throw CatalogError("unknown builtin game '" + std::string(name) + "'");
}

}  // namespace vobs
