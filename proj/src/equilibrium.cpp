#include "vobs/equilibrium.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace vobs {

namespace {

void require_player(int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("player must be 1 or 2");
}

// Argmax over k of value(k), exact comparisons, ascending indices.
template <typename F>
std::vector<int> argmax_set(std::size_t count, F&& value) {
  std::vector<int> best;
  Rat best_value;
  for (std::size_t k = 0; k < count; ++k) {
    const Rat v = value(k);
    if (best.empty() || v > best_value) {
      best.assign(1, static_cast<int>(k));
      best_value = v;
    } else if (v == best_value) {
      best.push_back(static_cast<int>(k));
    }
  }
  return best;
}

// Ceiling on how many pure selections of a conjecture get enumerated. Tie
// sets multiply, so a degenerate payoff table could otherwise blow up.
constexpr long long kMaxSelections = 200000;

}  // namespace

std::vector<int> best_responses(const TimedGame& game, int player, int opponent_action) {
  require_player(player);
  const std::size_t own = player == 1 ? game.n1() : game.n2();
  const std::size_t opp = player == 1 ? game.n2() : game.n1();
  if (opponent_action < 0 || static_cast<std::size_t>(opponent_action) >= opp) {
    throw std::out_of_range("best_responses: opponent action index out of range");
  }
  if (player == 1) {
    return argmax_set(own, [&](std::size_t k) { return game.u1[k][opponent_action]; });
  }
  return argmax_set(own, [&](std::size_t k) { return game.u2[opponent_action][k]; });
}

Belief Belief::point_mass(std::size_t n, int at) {
  Belief b;
  b.weights.assign(n, Rat(0));
  b.weights.at(at) = Rat(1);
  return b;
}

Belief Belief::uniform(std::size_t n) {
  Belief b;
  b.weights.assign(n, Rat(1, static_cast<long long>(n)));
  return b;
}

bool Belief::is_point_mass_at(int i) const {
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const Rat expected = static_cast<int>(k) == i ? Rat(1) : Rat(0);
    if (weights[k] != expected) return false;
  }
  return true;
}

void require_valid(const Belief& mu, std::size_t n) {
  if (mu.weights.size() != n) throw std::invalid_argument("belief has wrong dimension");
  Rat total(0);
  for (const Rat& w : mu.weights) {
    if (w < Rat(0)) throw std::invalid_argument("belief has a negative weight");
    total += w;
  }
  if (total != Rat(1)) throw std::invalid_argument("belief weights do not sum to 1");
}

std::vector<int> best_responses_to_belief(const TimedGame& game, const Belief& mu) {
  require_valid(mu, game.n1());
  return argmax_set(game.n2(), [&](std::size_t a2) {
    Rat expected(0);
    for (std::size_t a1 = 0; a1 < game.n1(); ++a1) {
      if (mu.weights[a1].is_zero()) continue;
      expected += mu.weights[a1] * game.u2[a1][a2];
    }
    return expected;
  });
}

std::vector<Profile> pure_nash(const TimedGame& game) {
  require_valid(game);
  // A profile is Nash iff each action is in its player's best-response set
  // against the other. The test suite checks this against a literal
  // deviation scan.
  std::vector<std::vector<int>> br1(game.n2()), br2(game.n1());
  for (std::size_t j = 0; j < game.n2(); ++j) br1[j] = best_responses(game, 1, static_cast<int>(j));
  for (std::size_t i = 0; i < game.n1(); ++i) br2[i] = best_responses(game, 2, static_cast<int>(i));
  std::vector<Profile> out;
  for (std::size_t i = 0; i < game.n1(); ++i) {
    for (std::size_t j = 0; j < game.n2(); ++j) {
      const bool p1_ok = std::binary_search(br1[j].begin(), br1[j].end(), static_cast<int>(i));
      const bool p2_ok = std::binary_search(br2[i].begin(), br2[i].end(), static_cast<int>(j));
      if (p1_ok && p2_ok) out.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return out;
}

namespace {

// Does `dominator` dominate `dominated` for `player`, restricted to the
// surviving opponent actions?
bool dominates(const TimedGame& game, int player, int dominator, int dominated,
               const std::vector<int>& opponent_actions, DominanceMode mode) {
  bool strict_somewhere = false;
  for (int opp : opponent_actions) {
    const Rat& a = player == 1 ? game.u1[dominator][opp] : game.u2[opp][dominator];
    const Rat& b = player == 1 ? game.u1[dominated][opp] : game.u2[opp][dominated];
    if (mode == DominanceMode::Strict) {
      if (!(a > b)) return false;
      strict_somewhere = true;
    } else {
      if (a < b) return false;
      if (a > b) strict_somewhere = true;
    }
  }
  return strict_somewhere;
}

std::vector<Elimination> round_eliminations(const TimedGame& game, int player,
                                            const std::vector<int>& own,
                                            const std::vector<int>& opp, DominanceMode mode,
                                            int round) {
  std::vector<Elimination> out;
  for (int candidate : own) {
    for (int dominator : own) {
      if (dominator == candidate) continue;
      if (dominates(game, player, dominator, candidate, opp, mode)) {
        out.push_back({round, player, candidate, dominator});
        break;  // lowest-index witness
      }
    }
  }
  return out;
}

}  // namespace

DominanceResult iterated_dominance(const TimedGame& game, DominanceMode mode) {
  require_valid(game);
  DominanceResult result;
  std::vector<int> s1(game.n1()), s2(game.n2());
  for (std::size_t i = 0; i < s1.size(); ++i) s1[i] = static_cast<int>(i);
  for (std::size_t j = 0; j < s2.size(); ++j) s2[j] = static_cast<int>(j);

  for (int round = 1;; ++round) {
    auto e1 = round_eliminations(game, 1, s1, s2, mode, round);
    auto e2 = round_eliminations(game, 2, s2, s1, mode, round);
    if (e1.empty() && e2.empty()) break;
    result.rounds = round;
    auto apply = [](std::vector<int>& survivors, const std::vector<Elimination>& eliminated) {
      for (const Elimination& e : eliminated) {
        survivors.erase(std::remove(survivors.begin(), survivors.end(), e.action), survivors.end());
      }
    };
    apply(s1, e1);
    apply(s2, e2);
    result.trace.insert(result.trace.end(), e1.begin(), e1.end());
    result.trace.insert(result.trace.end(), e2.begin(), e2.end());
  }
  result.survivors1 = std::move(s1);
  result.survivors2 = std::move(s2);
  return result;
}

long long VirtualConjecture::selection_count() const {
  long long count = 1;
  for (const auto& set : br_map) {
    count *= static_cast<long long>(set.size());
    if (count > kMaxSelections) return count;  // saturating enough for the guard
  }
  return count;
}

std::vector<std::vector<int>> VirtualConjecture::selections() const {
  if (br_map.empty()) return {};
  if (selection_count() > kMaxSelections) {
    throw std::runtime_error("virtual conjecture has too many tied selections to enumerate");
  }
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> odo(br_map.size(), 0);
  for (;;) {
    std::vector<int> sel(br_map.size());
    for (std::size_t i = 0; i < br_map.size(); ++i) sel[i] = br_map[i][odo[i]];
    out.push_back(std::move(sel));
    std::size_t pos = br_map.size();
    for (;;) {
      --pos;
      if (++odo[pos] < br_map[pos].size()) break;
      odo[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

VirtualConjecture virtual_conjecture(const NormalizedGame& normalized) {
  const TimedGame& game = normalized.game;
  require_valid(game);
  if (game.timing != Timing::P1First) {
    throw std::invalid_argument(
        "virtual_conjecture: requires a sequential game in normalized orientation");
  }
  VirtualConjecture vc;
  vc.br_map.resize(game.n1());
  for (std::size_t a1 = 0; a1 < game.n1(); ++a1) {
    vc.br_map[a1] = best_responses(game, 2, static_cast<int>(a1));
  }
  return vc;
}

Profile to_original(const RoleMap& roles, const Profile& p) {
  return roles.swapped ? Profile{p.a2, p.a1} : p;
}

namespace {

std::vector<Profile> sorted_distinct_original(const RoleMap& roles, const std::vector<Profile>& normalized) {
  std::set<Profile> set;
  for (const Profile& p : normalized) set.insert(to_original(roles, p));
  return {set.begin(), set.end()};
}

}  // namespace

SpeResult subgame_perfect_erased(const NormalizedGame& normalized) {
  const VirtualConjecture vc = virtual_conjecture(normalized);
  const TimedGame& game = normalized.game;
  SpeResult result;
  result.roles = normalized.roles;
  std::vector<Profile> profiles;
  for (const auto& sel : vc.selections()) {
    const auto argmax = argmax_set(game.n1(), [&](std::size_t a1) { return game.u1[a1][sel[a1]]; });
    for (int a1 : argmax) {
      Profile p{a1, sel[a1]};
      result.outcomes.push_back({p, sel});
      profiles.push_back(p);
    }
  }
  result.distinct_original = sorted_distinct_original(normalized.roles, profiles);
  return result;
}

GvoResult gvo(const TimedGame& game) {
  require_valid(game);
  GvoResult result;

  if (game.timing == Timing::Simultaneous) {
    // Without a move order the conjecture has no histories to condition on;
    // the fixed point collapses to mutual best responses.
    result.roles = RoleMap{false};
    std::vector<Profile> profiles;
    for (const Profile& p : pure_nash(game)) {
      GvoAssessment a;
      a.sigma1 = p.a1;
      a.sigma2 = p.a2;
      a.mu = Belief::point_mass(game.n1(), p.a1);
      result.assessments.push_back(std::move(a));
      profiles.push_back(p);
    }
    result.outcomes = sorted_distinct_original(result.roles, profiles);
    result.selection_count = 1;
    return result;
  }

  const NormalizedGame normalized = normalize_roles(game);
  const VirtualConjecture vc = virtual_conjecture(normalized);
  result.roles = normalized.roles;
  result.selection_count = vc.selection_count();

  std::vector<Profile> profiles;
  for (const auto& sel : vc.selections()) {
    const auto argmax =
        argmax_set(normalized.game.n1(), [&](std::size_t a1) { return normalized.game.u1[a1][sel[a1]]; });
    for (int s1 : argmax) {
      const Belief mu = Belief::point_mass(normalized.game.n1(), s1);
      for (int s2 : best_responses_to_belief(normalized.game, mu)) {
        GvoAssessment a;
        a.sigma1 = s1;
        a.sigma2 = s2;
        a.mu = mu;
        a.conjecture = sel;
        result.assessments.push_back(std::move(a));
        profiles.push_back({s1, s2});
      }
    }
  }
  result.outcomes = sorted_distinct_original(result.roles, profiles);
  return result;
}

std::vector<std::string> check_assessment(const TimedGame& normalized, const GvoAssessment& a) {
  std::vector<std::string> failures;
  const std::size_t n1 = normalized.n1();
  const std::size_t n2 = normalized.n2();
  if (a.sigma1 < 0 || static_cast<std::size_t>(a.sigma1) >= n1 || a.sigma2 < 0 ||
      static_cast<std::size_t>(a.sigma2) >= n2) {
    failures.push_back("profile indices out of range");
    return failures;
  }
  if (a.mu.weights.size() != n1) {
    failures.push_back("belief dimension mismatch");
    return failures;
  }

  if (a.conjecture) {
    const auto& sel = *a.conjecture;
    if (sel.size() != n1) {
      failures.push_back("conjecture selection dimension mismatch");
      return failures;
    }
    // (i) every conjectured response is a best response at its history
    for (std::size_t a1 = 0; a1 < n1; ++a1) {
      const Rat& v = normalized.u2[a1][sel[a1]];
      for (std::size_t a2 = 0; a2 < n2; ++a2) {
        if (normalized.u2[a1][a2] > v) {
          failures.push_back("condition (i) fails at a1=" + std::to_string(a1));
          break;
        }
      }
    }
    // (ii) sigma1 maximizes player 1's payoff under the conjecture
    const Rat v1 = normalized.u1[a.sigma1][sel[a.sigma1]];
    for (std::size_t a1 = 0; a1 < n1; ++a1) {
      if (normalized.u1[a1][sel[a1]] > v1) {
        failures.push_back("condition (ii) fails: better first move a1=" + std::to_string(a1));
        break;
      }
    }
  } else {
    // Simultaneous collapse: sigma1 must best respond to sigma2 directly.
    const Rat v1 = normalized.u1[a.sigma1][a.sigma2];
    for (std::size_t a1 = 0; a1 < n1; ++a1) {
      if (normalized.u1[a1][a.sigma2] > v1) {
        failures.push_back("player 1 has a profitable deviation");
        break;
      }
    }
  }

  // (iii) the belief is the point mass at sigma1
  if (!a.mu.is_point_mass_at(a.sigma1)) {
    failures.push_back("condition (iii) fails: belief is not the point mass at sigma1");
  }

  // (iv) sigma2 maximizes expected payoff under the belief
  Rat v2(0);
  for (std::size_t a1 = 0; a1 < n1; ++a1) v2 += a.mu.weights[a1] * normalized.u2[a1][a.sigma2];
  for (std::size_t a2 = 0; a2 < n2; ++a2) {
    Rat alt(0);
    for (std::size_t a1 = 0; a1 < n1; ++a1) alt += a.mu.weights[a1] * normalized.u2[a1][a2];
    if (alt > v2) {
      failures.push_back("condition (iv) fails: better response a2=" + std::to_string(a2));
      break;
    }
  }
  return failures;
}

RefinementVerdict vo_refinement(const TimedGame& game) {
  require_valid(game);
  if (game.timing == Timing::Simultaneous) {
    throw std::invalid_argument("vo_refinement: requires a sequential game");
  }
  const SpeResult spe = subgame_perfect_erased(normalize_roles(game));
  const std::vector<Profile> nash = pure_nash(game);

  RefinementVerdict verdict;
  verdict.spe_profiles = spe.distinct_original;
  for (const Profile& p : verdict.spe_profiles) {
    if (std::find(nash.begin(), nash.end(), p) != nash.end()) verdict.nash_matches.push_back(p);
  }
  // Selecting nothing, or selecting every Nash equilibrium, leaves the Nash
  // prediction untouched; only a strict narrowing makes timing matter.
  if (!verdict.nash_matches.empty() && verdict.nash_matches.size() < nash.size()) {
    verdict.selection = verdict.nash_matches;
  }
  return verdict;
}

// ---------------------------------------------------------------------------

std::optional<Concept> concept_from_token(std::string_view token) {
  if (token == "nash") return Concept::Nash;
  if (token == "weak-dom") return Concept::WeakDominance;
  if (token == "strict-dom") return Concept::StrictDominance;
  if (token == "spe") return Concept::Spe;
  if (token == "vo") return Concept::VoRefinement;
  if (token == "gvo") return Concept::Gvo;
  return std::nullopt;
}

std::string concept_token(Concept c) {
  switch (c) {
    case Concept::Nash: return "nash";
    case Concept::WeakDominance: return "weak-dom";
    case Concept::StrictDominance: return "strict-dom";
    case Concept::Spe: return "spe";
    case Concept::VoRefinement: return "vo";
    case Concept::Gvo: return "gvo";
  }
  return "nash";
}

namespace {

SolveResult::Outcome make_outcome(const TimedGame& game, const Profile& p, long long multiplicity) {
  return SolveResult::Outcome{p, game.u1[p.a1][p.a2], game.u2[p.a1][p.a2], multiplicity};
}

std::string first_mover_token(Timing timing) {
  switch (timing) {
    case Timing::P1First: return "p1";
    case Timing::P2First: return "p2";
    case Timing::Simultaneous: return "";
  }
  return "";
}

}  // namespace

SolveResult solve(const TimedGame& game, Concept kind) {
  require_valid(game);
  SolveResult result;
  result.kind = kind;
  result.game_name = game.name;
  result.timing = game.timing;
  result.first_mover = first_mover_token(game.timing);

  switch (kind) {
    case Concept::Nash: {
      for (const Profile& p : pure_nash(game)) result.outcomes.push_back(make_outcome(game, p, 1));
      break;
    }
    case Concept::WeakDominance:
    case Concept::StrictDominance: {
      const auto mode =
          kind == Concept::WeakDominance ? DominanceMode::Weak : DominanceMode::Strict;
      DominanceResult dom = iterated_dominance(game, mode);
      for (int i : dom.survivors1) {
        for (int j : dom.survivors2) result.outcomes.push_back(make_outcome(game, {i, j}, 1));
      }
      result.trace = std::move(dom.trace);
      result.survivors = std::make_pair(dom.survivors1, dom.survivors2);
      break;
    }
    case Concept::Spe: {
      const SpeResult spe = subgame_perfect_erased(normalize_roles(game));
      std::map<Profile, long long> multiplicity;
      for (const SpeOutcome& o : spe.outcomes) ++multiplicity[to_original(spe.roles, o.profile)];
      for (const Profile& p : spe.distinct_original) {
        result.outcomes.push_back(make_outcome(game, p, multiplicity[p]));
      }
      break;
    }
    case Concept::VoRefinement: {
      const RefinementVerdict verdict = vo_refinement(game);
      result.verdict = verdict.selected() ? "selected" : "timing_irrelevant";
      for (const Profile& p : verdict.selection) result.outcomes.push_back(make_outcome(game, p, 1));
      break;
    }
    case Concept::Gvo: {
      const GvoResult g = gvo(game);
      std::map<Profile, long long> multiplicity;
      for (const GvoAssessment& a : g.assessments) {
        ++multiplicity[to_original(g.roles, Profile{a.sigma1, a.sigma2})];
      }
      for (const Profile& p : g.outcomes) {
        result.outcomes.push_back(make_outcome(game, p, multiplicity[p]));
      }
      result.selection_count = g.selection_count;
      break;
    }
  }
  return result;
}

std::string solve_result_json(const SolveResult& result, const TimedGame& game) {
  nlohmann::ordered_json j;
  j["concept"] = concept_token(result.kind);
  j["game_name"] = result.game_name;
  j["timing"] = timing_token(result.timing);
  if (!result.first_mover.empty()) j["first_mover"] = result.first_mover;
  nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
  for (const auto& o : result.outcomes) {
    nlohmann::ordered_json entry;
    entry["a1"] = game.a1.labels[o.profile.a1];
    entry["a2"] = game.a2.labels[o.profile.a2];
    entry["u1"] = o.u1.to_string();
    entry["u2"] = o.u2.to_string();
    if (o.multiplicity != 1) entry["multiplicity"] = o.multiplicity;
    outcomes.push_back(std::move(entry));
  }
  j["outcomes"] = std::move(outcomes);
  if (!result.trace.empty()) {
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const Elimination& e : result.trace) {
      const ActionSet& set = e.player == 1 ? game.a1 : game.a2;
      trace.push_back({{"round", e.round},
                       {"player", e.player},
                       {"action", set.labels[e.action]},
                       {"dominated_by", set.labels[e.dominated_by]}});
    }
    j["trace"] = std::move(trace);
  }
  if (result.survivors) {
    nlohmann::ordered_json surv;
    nlohmann::ordered_json s1 = nlohmann::ordered_json::array();
    for (int i : result.survivors->first) s1.push_back(game.a1.labels[i]);
    nlohmann::ordered_json s2 = nlohmann::ordered_json::array();
    for (int j2 : result.survivors->second) s2.push_back(game.a2.labels[j2]);
    surv["p1"] = std::move(s1);
    surv["p2"] = std::move(s2);
    j["survivors"] = std::move(surv);
  }
  if (result.verdict) j["verdict"] = *result.verdict;
  if (result.selection_count > 0 &&
      (result.kind == Concept::Gvo || result.kind == Concept::Spe)) {
    j["selection_count"] = result.selection_count;
  }
  return j.dump(2) + "\n";
}

std::string solve_result_text(const SolveResult& result, const TimedGame& game) {
  std::ostringstream os;
  os << "game: " << result.game_name << "\n";
  os << "timing: " << timing_token(result.timing) << "\n";
  os << "concept: " << concept_token(result.kind) << "\n";
  if (result.verdict) os << "verdict: " << *result.verdict << "\n";
  if (result.outcomes.empty()) {
    os << "outcomes: none\n";
  } else {
    os << "outcomes:\n";
    for (const auto& o : result.outcomes) {
      os << "  (" << game.a1.labels[o.profile.a1] << ", " << game.a2.labels[o.profile.a2] << ")"
         << "  payoffs (" << o.u1.to_string() << ", " << o.u2.to_string() << ")";
      if (o.multiplicity != 1) os << "  x" << o.multiplicity;
      os << "\n";
    }
  }
  if (result.survivors) {
    auto join = [&](const std::vector<int>& idx, const ActionSet& set) {
      std::string s;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k > 0) s += " ";
        s += set.labels[idx[k]];
      }
      return s;
    };
    os << "survivors p1: " << join(result.survivors->first, game.a1) << "\n";
    os << "survivors p2: " << join(result.survivors->second, game.a2) << "\n";
  }
  if (!result.trace.empty()) {
    os << "eliminations:\n";
    for (const Elimination& e : result.trace) {
      const ActionSet& set = e.player == 1 ? game.a1 : game.a2;
      os << "  round " << e.round << ": p" << e.player << " drops " << set.labels[e.action]
         << " (dominated by " << set.labels[e.dominated_by] << ")\n";
    }
  }
  if (result.selection_count > 1) os << "conjecture selections: " << result.selection_count << "\n";
  return os.str();
}

}  // namespace vobs
