#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vobs/rational.hpp"

namespace vobs {

// Move order of a two-player game whose actions stay hidden until the game
// ends. A sequential tag changes only who commits first, never what anyone
// observes.
enum class Timing { Simultaneous, P1First, P2First };

std::string timing_token(Timing t);
std::optional<Timing> timing_from_token(std::string_view token);

// Ordered action labels with attached numeric values. Labels are the action
// identity used by the solvers; values are metadata for generators and the
// data pipeline (claim sizes, invest levels). The stored order is the
// canonical iteration order everywhere, including serialization.
struct ActionSet {
  std::vector<std::string> labels;
  std::vector<Rat> values;

  std::size_t size() const { return labels.size(); }
  int index_of(std::string_view label) const;  // -1 if absent

  // Labels become the canonical decimal rendering of each value.
  static ActionSet from_values(std::vector<Rat> values);
  // If every label is a decimal literal its value is attached; otherwise
  // values fall back to ordinals 0,1,2,...
  static ActionSet from_labels(std::vector<std::string> labels);
};

// A finite two-player game with total payoff tables and a timing tag.
// Payoff tables are indexed [a1 index][a2 index] in both players' tables.
struct TimedGame {
  std::string name;
  ActionSet a1;
  ActionSet a2;
  std::vector<std::vector<Rat>> u1;
  std::vector<std::vector<Rat>> u2;
  Timing timing = Timing::Simultaneous;

  std::size_t n1() const { return a1.size(); }
  std::size_t n2() const { return a2.size(); }
  const Rat& payoff(int player, int i, int j) const {
    return player == 1 ? u1[i][j] : u2[i][j];
  }
};

enum class ViolationCode {
  EmptyName,
  InvalidName,
  EmptyActionSet,
  DuplicateLabel,
  DuplicateValue,
  InvalidLabel,
  ValueCountMismatch,
  RaggedPayoffs,
};

const char* violation_code_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  int player = 0;  // 1 or 2 for per-player findings, 0 for game level
  std::string detail;
};

// Collects every invariant violation; an empty result means the game is
// well formed. Violations are data, not exceptions.
std::vector<Violation> validate(const TimedGame& game);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

void require_valid(const TimedGame& game);  // throws ValidationError

// Whether player roles were swapped while normalizing. Applying the swap
// twice is the identity.
struct RoleMap {
  bool swapped = false;
};

struct NormalizedGame {
  TimedGame game;  // timing is Simultaneous or P1First
  RoleMap roles;
};

// Unconditional player swap: u1'(i,j) = u2(j,i), u2'(i,j) = u1(j,i), and the
// timing tag flips between P1First and P2First.
TimedGame transpose_roles(const TimedGame& game);

// Reorients a P2First game so that solvers always see the first mover as
// player 1; other timings pass through unchanged.
NormalizedGame normalize_roles(const TimedGame& game);

// Maps one player's payoffs x -> scale*x + shift. scale must be positive:
// best-response sets are invariant under exactly these maps.
TimedGame affine_transform(const TimedGame& game, int player, const Rat& scale, const Rat& shift);

}  // namespace vobs
