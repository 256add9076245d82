#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vobs/game.hpp"

namespace vobs {
namespace gamespec {

// Line-oriented text format for timed games:
//
//   game: <identifier>
//   timing: simultaneous | p1_first | p2_first
//   p1_actions: <label>...
//   p2_actions: <label>...
//   payoffs:
//   <u1>|<u2> ...        one row per p1 action, one cell per p2 action
//
// '#' starts a comment that runs to end of line; blank lines are ignored.
// Payoff literals are decimals (at most nine fraction digits) or "p/q"
// fractions, parsed exactly. Labels are decimal literals or bare words.

enum class DiagCode {
  MissingSection,
  UnknownTiming,
  DuplicateLabel,
  ArityMismatch,
  MalformedCell,
  MalformedNumber,
};

const char* diag_code_name(DiagCode code);

struct Diagnostic {
  DiagCode code;
  int line = 0;  // 1-based source line
  int col = 0;   // 1-based source column
  std::string message;

  std::string render() const;  // "line:col: Code: message"
};

// A token with its source span, and the parsed document shape. Every token
// of the body is covered by a span so diagnostics can point at payoff cells.
struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

struct GameSpecDocument {
  Token name;
  Token timing;
  std::vector<Token> p1_labels;
  std::vector<Token> p2_labels;
  // cells[row][column] -> (u1 literal, u2 literal)
  std::vector<std::vector<std::pair<Token, Token>>> cells;
};

struct ParseResult {
  std::optional<TimedGame> game;
  std::optional<GameSpecDocument> document;
  std::optional<Diagnostic> diagnostic;  // the primary diagnostic on failure

  bool ok() const { return game.has_value(); }
};

ParseResult parse_game(std::string_view text);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic diagnostic);
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

TimedGame parse_game_or_throw(std::string_view text);

// Canonical rendering: fixed section order, single spaces, LF line ends,
// payoffs as shortest exact decimals (or p/q when the expansion does not
// terminate). Parsing the output reproduces the game exactly.
std::string serialize_game(const TimedGame& game);

}  // namespace gamespec
}  // namespace vobs
