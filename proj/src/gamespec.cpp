#include "vobs/gamespec.hpp"

#include <sstream>

namespace vobs {
namespace gamespec {

const char* diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::MissingSection: return "MissingSection";
    case DiagCode::UnknownTiming: return "UnknownTiming";
    case DiagCode::DuplicateLabel: return "DuplicateLabel";
    case DiagCode::ArityMismatch: return "ArityMismatch";
    case DiagCode::MalformedCell: return "MalformedCell";
    case DiagCode::MalformedNumber: return "MalformedNumber";
  }
  return "Unknown";
}

std::string Diagnostic::render() const {
  std::ostringstream os;
  os << line << ":" << col << ": " << diag_code_name(code) << ": " << message;
  return os.str();
}

ParseError::ParseError(Diagnostic diagnostic)
    : std::runtime_error(diagnostic.render()), diagnostic_(std::move(diagnostic)) {}

namespace {

struct Line {
  int number = 0;  // 1-based
  std::vector<Token> tokens;
};

// Strips comments, splits on blanks, and keeps 1-based source coordinates.
std::vector<Line> tokenize(std::string_view text, int& total_lines) {
  std::vector<Line> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = eol == std::string_view::npos ? text.substr(pos)
                                                         : text.substr(pos, eol - pos);
    if (pos == text.size() && eol == std::string_view::npos && raw.empty()) break;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);

    Line line;
    line.number = line_no;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t') {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      line.tokens.push_back(Token{std::string(raw.substr(start, i - start)),
                                  line.number, static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  total_lines = line_no;
  return lines;
}

Diagnostic diag(DiagCode code, int line, int col, std::string message) {
  return Diagnostic{code, line, col, std::move(message)};
}

// Labels that are decimal literals compare by value, so "4" and "4.0" clash.
std::string label_key(const std::string& label) {
  if (auto v = Rat::parse_decimal(label)) {
    return "#" + std::to_string(v->num()) + "/" + std::to_string(v->den());
  }
  return label;
}

struct SectionReader {
  const std::vector<Line>& lines;
  std::size_t next = 0;
  int eof_line;

  std::optional<Diagnostic> header(const char* keyword, Token* value, bool exactly_one) {
    if (next >= lines.size()) {
      return diag(DiagCode::MissingSection, eof_line, 1,
                  std::string("expected '") + keyword + "' section");
    }
    const Line& line = lines[next];
    if (line.tokens.front().text != keyword) {
      return diag(DiagCode::MissingSection, line.number, line.tokens.front().col,
                  std::string("expected '") + keyword + "' section, found '" +
                      line.tokens.front().text + "'");
    }
    if (exactly_one) {
      if (line.tokens.size() < 2) {
        return diag(DiagCode::MissingSection, line.number, line.tokens.front().col,
                    std::string("section '") + keyword + "' has no value");
      }
      if (line.tokens.size() > 2) {
        return diag(DiagCode::ArityMismatch, line.number, line.tokens[2].col,
                    std::string("section '") + keyword + "' takes exactly one value");
      }
      *value = line.tokens[1];
    } else if (line.tokens.size() > 1) {
      return diag(DiagCode::ArityMismatch, line.number, line.tokens[1].col,
                  std::string("section '") + keyword + "' takes no values");
    }
    ++next;
    return std::nullopt;
  }

  std::optional<Diagnostic> labels(const char* keyword, std::vector<Token>* out) {
    if (next >= lines.size()) {
      return diag(DiagCode::MissingSection, eof_line, 1,
                  std::string("expected '") + keyword + "' section");
    }
    const Line& line = lines[next];
    if (line.tokens.front().text != keyword) {
      return diag(DiagCode::MissingSection, line.number, line.tokens.front().col,
                  std::string("expected '") + keyword + "' section, found '" +
                      line.tokens.front().text + "'");
    }
    if (line.tokens.size() < 2) {
      return diag(DiagCode::MissingSection, line.number, line.tokens.front().col,
                  std::string("section '") + keyword + "' has no labels");
    }
    out->assign(line.tokens.begin() + 1, line.tokens.end());
    ++next;
    return std::nullopt;
  }
};

std::optional<Diagnostic> check_duplicate_labels(const std::vector<Token>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (label_key(labels[i].text) == label_key(labels[j].text)) {
        return diag(DiagCode::DuplicateLabel, labels[i].line, labels[i].col,
                    "label '" + labels[i].text + "' repeats");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ParseResult parse_game(std::string_view text) {
  ParseResult result;
  int total_lines = 0;
  const std::vector<Line> lines = tokenize(text, total_lines);
  SectionReader reader{lines, 0, total_lines + 1};
  GameSpecDocument doc;

  if (auto d = reader.header("game:", &doc.name, true)) { result.diagnostic = d; return result; }
  if (auto d = reader.header("timing:", &doc.timing, true)) { result.diagnostic = d; return result; }
  const auto timing = timing_from_token(doc.timing.text);
  if (!timing) {
    result.diagnostic = diag(DiagCode::UnknownTiming, doc.timing.line, doc.timing.col,
                             "unknown timing '" + doc.timing.text + "'");
    return result;
  }
  if (auto d = reader.labels("p1_actions:", &doc.p1_labels)) { result.diagnostic = d; return result; }
  if (auto d = check_duplicate_labels(doc.p1_labels)) { result.diagnostic = d; return result; }
  if (auto d = reader.labels("p2_actions:", &doc.p2_labels)) { result.diagnostic = d; return result; }
  if (auto d = check_duplicate_labels(doc.p2_labels)) { result.diagnostic = d; return result; }
  if (auto d = reader.header("payoffs:", nullptr, false)) { result.diagnostic = d; return result; }

  const std::size_t rows = doc.p1_labels.size();
  const std::size_t cols = doc.p2_labels.size();
  TimedGame game;
  game.u1.assign(rows, std::vector<Rat>(cols));
  game.u2.assign(rows, std::vector<Rat>(cols));
  doc.cells.assign(rows, {});

  for (std::size_t r = 0; r < rows; ++r) {
    if (reader.next >= lines.size()) {
      result.diagnostic = diag(DiagCode::ArityMismatch, reader.eof_line, 1,
                               "expected " + std::to_string(rows) + " payoff rows, found " +
                                   std::to_string(r));
      return result;
    }
    const Line& line = lines[reader.next++];
    if (line.tokens.size() != cols) {
      const Token& at = line.tokens.size() > cols ? line.tokens[cols] : line.tokens.back();
      result.diagnostic = diag(DiagCode::ArityMismatch, line.number, at.col,
                               "payoff row has " + std::to_string(line.tokens.size()) +
                                   " cells, expected " + std::to_string(cols));
      return result;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Token& cell = line.tokens[c];
      const std::size_t bar = cell.text.find('|');
      if (bar == std::string::npos || cell.text.find('|', bar + 1) != std::string::npos) {
        result.diagnostic = diag(DiagCode::MalformedCell, cell.line, cell.col,
                                 "cell '" + cell.text + "' is not of the form <u1>|<u2>");
        return result;
      }
      Token left{cell.text.substr(0, bar), cell.line, cell.col};
      Token right{cell.text.substr(bar + 1), cell.line, cell.col + static_cast<int>(bar) + 1};
      const auto u1 = Rat::parse(left.text);
      if (!u1) {
        result.diagnostic = diag(DiagCode::MalformedNumber, left.line, left.col,
                                 "malformed payoff literal '" + left.text + "'");
        return result;
      }
      const auto u2 = Rat::parse(right.text);
      if (!u2) {
        result.diagnostic = diag(DiagCode::MalformedNumber, right.line, right.col,
                                 "malformed payoff literal '" + right.text + "'");
        return result;
      }
      game.u1[r][c] = *u1;
      game.u2[r][c] = *u2;
      doc.cells[r].push_back({std::move(left), std::move(right)});
    }
  }
  if (reader.next < lines.size()) {
    const Line& extra = lines[reader.next];
    result.diagnostic = diag(DiagCode::ArityMismatch, extra.number, extra.tokens.front().col,
                             "unexpected content after the payoff grid");
    return result;
  }

  game.name = doc.name.text;
  game.timing = *timing;
  std::vector<std::string> l1, l2;
  for (const Token& t : doc.p1_labels) l1.push_back(t.text);
  for (const Token& t : doc.p2_labels) l2.push_back(t.text);
  game.a1 = ActionSet::from_labels(std::move(l1));
  game.a2 = ActionSet::from_labels(std::move(l2));

  result.document = std::move(doc);
  result.game = std::move(game);
  return result;
}

TimedGame parse_game_or_throw(std::string_view text) {
  ParseResult result = parse_game(text);
  if (!result.ok()) throw ParseError(*result.diagnostic);
  return std::move(*result.game);
}

std::string serialize_game(const TimedGame& game) {
  require_valid(game);
  std::ostringstream os;
  os << "game: " << game.name << "\n";
  os << "timing: " << timing_token(game.timing) << "\n";
  os << "p1_actions:";
  for (const std::string& label : game.a1.labels) os << " " << label;
  os << "\n";
  os << "p2_actions:";
  for (const std::string& label : game.a2.labels) os << " " << label;
  os << "\n";
  os << "payoffs:\n";
  for (std::size_t i = 0; i < game.n1(); ++i) {
    for (std::size_t j = 0; j < game.n2(); ++j) {
      if (j > 0) os << " ";
      os << game.u1[i][j].to_string() << "|" << game.u2[i][j].to_string();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace gamespec
}  // namespace vobs
