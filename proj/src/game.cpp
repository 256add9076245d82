#include "vobs/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vobs {

std::string timing_token(Timing t) {
  switch (t) {
    case Timing::Simultaneous: return "simultaneous";
    case Timing::P1First: return "p1_first";
    case Timing::P2First: return "p2_first";
  }
  return "simultaneous";
}

std::optional<Timing> timing_from_token(std::string_view token) {
  if (token == "simultaneous") return Timing::Simultaneous;
  if (token == "p1_first") return Timing::P1First;
  if (token == "p2_first") return Timing::P2First;
  return std::nullopt;
}

int ActionSet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

ActionSet ActionSet::from_values(std::vector<Rat> values) {
  ActionSet set;
  set.labels.reserve(values.size());
  for (const Rat& v : values) set.labels.push_back(v.to_string());
  set.values = std::move(values);
  return set;
}

ActionSet ActionSet::from_labels(std::vector<std::string> labels) {
  ActionSet set;
  std::vector<Rat> parsed;
  parsed.reserve(labels.size());
  bool all_numeric = true;
  for (const std::string& label : labels) {
    if (auto v = Rat::parse_decimal(label)) {
      parsed.push_back(*v);
    } else {
      all_numeric = false;
      break;
    }
  }
  if (all_numeric) {
    set.values = std::move(parsed);
  } else {
    set.values.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) set.values.emplace_back(static_cast<long long>(i));
  }
  set.labels = std::move(labels);
  return set;
}

const char* violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyName: return "EmptyName";
    case ViolationCode::InvalidName: return "InvalidName";
    case ViolationCode::EmptyActionSet: return "EmptyActionSet";
    case ViolationCode::DuplicateLabel: return "DuplicateLabel";
    case ViolationCode::DuplicateValue: return "DuplicateValue";
    case ViolationCode::InvalidLabel: return "InvalidLabel";
    case ViolationCode::ValueCountMismatch: return "ValueCountMismatch";
    case ViolationCode::RaggedPayoffs: return "RaggedPayoffs";
  }
  return "Unknown";
}

namespace {

bool token_well_formed(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') return false;
  }
  return true;
}

void validate_action_set(const ActionSet& set, int player, std::vector<Violation>& out) {
  if (set.labels.empty()) {
    out.push_back({ViolationCode::EmptyActionSet, player, "action set is empty"});
    return;
  }
  if (set.values.size() != set.labels.size()) {
    out.push_back({ViolationCode::ValueCountMismatch, player,
                   "values list length differs from labels list length"});
  }
  std::set<std::string> seen_labels;
  for (const std::string& label : set.labels) {
    if (!token_well_formed(label)) {
      out.push_back({ViolationCode::InvalidLabel, player, "label '" + label + "' is not a plain token"});
    }
    if (!seen_labels.insert(label).second) {
      out.push_back({ViolationCode::DuplicateLabel, player, "label '" + label + "' repeats"});
    }
  }
  std::set<Rat> seen_values;
  for (const Rat& v : set.values) {
    if (!seen_values.insert(v).second) {
      out.push_back({ViolationCode::DuplicateValue, player, "value " + v.to_string() + " repeats"});
    }
  }
}

void validate_table(const std::vector<std::vector<Rat>>& u, std::size_t rows, std::size_t cols,
                    int player, std::vector<Violation>& out) {
  if (u.size() != rows) {
    out.push_back({ViolationCode::RaggedPayoffs, player,
                   "payoff table has " + std::to_string(u.size()) + " rows, expected " + std::to_string(rows)});
    return;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].size() != cols) {
      out.push_back({ViolationCode::RaggedPayoffs, player,
                     "payoff row " + std::to_string(i) + " has " + std::to_string(u[i].size()) +
                         " cells, expected " + std::to_string(cols)});
      return;
    }
  }
}

}  // namespace

std::vector<Violation> validate(const TimedGame& game) {
  std::vector<Violation> out;
  if (game.name.empty()) {
    out.push_back({ViolationCode::EmptyName, 0, "game name is empty"});
  } else if (!token_well_formed(game.name)) {
    out.push_back({ViolationCode::InvalidName, 0, "game name is not a plain token"});
  }
  validate_action_set(game.a1, 1, out);
  validate_action_set(game.a2, 2, out);
  if (!game.a1.labels.empty() && !game.a2.labels.empty()) {
    validate_table(game.u1, game.n1(), game.n2(), 1, out);
    validate_table(game.u2, game.n1(), game.n2(), 2, out);
  }
  return out;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&violations] {
        std::ostringstream os;
        os << "invalid game:";
        for (const Violation& v : violations) {
          os << " [" << violation_code_name(v.code);
          if (v.player != 0) os << " p" << v.player;
          os << ": " << v.detail << "]";
        }
        return os.str();
      }()),
      violations_(std::move(violations)) {}

void require_valid(const TimedGame& game) {
  auto violations = validate(game);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

TimedGame transpose_roles(const TimedGame& game) {
  TimedGame out;
  out.name = game.name;
  out.a1 = game.a2;
  out.a2 = game.a1;
  const std::size_t rows = game.n2();
  const std::size_t cols = game.n1();
  out.u1.assign(rows, std::vector<Rat>(cols));
  out.u2.assign(rows, std::vector<Rat>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out.u1[i][j] = game.u2[j][i];
      out.u2[i][j] = game.u1[j][i];
    }
  }
  switch (game.timing) {
    case Timing::Simultaneous: out.timing = Timing::Simultaneous; break;
    case Timing::P1First: out.timing = Timing::P2First; break;
    case Timing::P2First: out.timing = Timing::P1First; break;
  }
  return out;
}

NormalizedGame normalize_roles(const TimedGame& game) {
  require_valid(game);
  if (game.timing != Timing::P2First) {
    return NormalizedGame{game, RoleMap{false}};
  }
  return NormalizedGame{transpose_roles(game), RoleMap{true}};
}

TimedGame affine_transform(const TimedGame& game, int player, const Rat& scale, const Rat& shift) {
  if (player != 1 && player != 2) throw std::invalid_argument("affine_transform: player must be 1 or 2");
  if (!(scale > Rat(0))) throw std::invalid_argument("affine_transform: scale must be positive");
  TimedGame out = game;
  auto& table = player == 1 ? out.u1 : out.u2;
  for (auto& row : table) {
    for (Rat& cell : row) cell = scale * cell + shift;
  }
  return out;
}

}  // namespace vobs
