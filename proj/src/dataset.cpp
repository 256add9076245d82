#include "vobs/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vobs/catalog.hpp"

namespace vobs {
namespace data {

const char* game_token(GameTag g) {
  switch (g) {
    case GameTag::TdSim: return "td_sim";
    case GameTag::TdSeq: return "td_seq";
    case GameTag::TrustIf: return "trust_if";
    case GameTag::TrustTf: return "trust_tf";
  }
  return "td_sim";
}

const char* role_token(RoleTag r) {
  switch (r) {
    case RoleTag::P1: return "p1";
    case RoleTag::P2: return "p2";
    case RoleTag::Investor: return "investor";
    case RoleTag::Trustee: return "trustee";
    case RoleTag::Na: return "na";
  }
  return "na";
}

const char* sequence_token(SequenceTag s) {
  return s == SequenceTag::TdSeqFirst ? "tdseq_first" : "tdsim_first";
}

std::optional<GameTag> game_from_token(std::string_view token) {
  if (token == "td_sim") return GameTag::TdSim;
  if (token == "td_seq") return GameTag::TdSeq;
  if (token == "trust_if") return GameTag::TrustIf;
  if (token == "trust_tf") return GameTag::TrustTf;
  return std::nullopt;
}

std::optional<RoleTag> role_from_token(std::string_view token) {
  if (token == "p1") return RoleTag::P1;
  if (token == "p2") return RoleTag::P2;
  if (token == "investor") return RoleTag::Investor;
  if (token == "trustee") return RoleTag::Trustee;
  if (token == "na") return RoleTag::Na;
  return std::nullopt;
}

std::optional<SequenceTag> sequence_from_token(std::string_view token) {
  if (token == "tdseq_first") return SequenceTag::TdSeqFirst;
  if (token == "tdsim_first") return SequenceTag::TdSimFirst;
  return std::nullopt;
}

std::string IngestIssue::render() const {
  std::ostringstream os;
  os << "row " << row << ": " << code << ": " << detail;
  return os.str();
}

IngestError::IngestError(std::vector<IngestIssue> issues)
    : std::runtime_error([&issues] {
        std::ostringstream os;
        os << "dataset has " << issues.size() << " problem" << (issues.size() == 1 ? "" : "s");
        for (std::size_t i = 0; i < issues.size() && i < 5; ++i) os << "; " << issues[i].render();
        if (issues.size() > 5) os << "; ...";
        return os.str();
      }()),
      issues_(std::move(issues)) {}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

bool role_fits_game(GameTag game, RoleTag role) {
  switch (game) {
    case GameTag::TdSim: return role == RoleTag::Na;
    case GameTag::TdSeq: return role == RoleTag::P1 || role == RoleTag::P2;
    case GameTag::TrustIf:
    case GameTag::TrustTf: return role == RoleTag::Investor || role == RoleTag::Trustee;
  }
  return false;
}

// Allowed choice grids, resolved from the catalog defaults. Returns are on
// the displayed scale.
struct ChoiceGrids {
  std::vector<Rat> claims;
  std::vector<Rat> invests;
  std::vector<Rat> displayed_returns;

  ChoiceGrids() {
    const TimedGame td = make_builtin("td_sim");
    claims = td.a1.values;
    const TrustParams trust;
    invests = trust.invest_levels;
    for (const Rat& level : trust.return_levels) {
      displayed_returns.push_back(display_return(trust, level));
    }
  }
};

bool on_grid(const std::vector<Rat>& grid, const Rat& value) {
  return std::find(grid.begin(), grid.end(), value) != grid.end();
}

}  // namespace

ChoiceDataset ingest_csv(std::istream& in, const std::string& source_name) {
  static const std::vector<std::string> kHeader = {"subject_id", "session_id", "sequence",
                                                   "game",       "role",       "choice"};
  const ChoiceGrids grids;

  ChoiceDataset dataset;
  dataset.source = source_name;
  std::vector<IngestIssue> issues;

  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) {
    issues.push_back({1, "MissingColumn", "empty input, expected a header row"});
    throw IngestError(std::move(issues));
  }
  ++line_no;
  const auto header = split_csv_line(line);
  if (header != kHeader) {
    issues.push_back({1, "MissingColumn",
                      "header must be 'subject_id,session_id,sequence,game,role,choice'"});
    throw IngestError(std::move(issues));
  }

  std::set<std::pair<std::string, GameTag>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    ++dataset.row_count;
    const auto fields = split_csv_line(line);
    if (fields.size() != kHeader.size()) {
      issues.push_back({line_no, "MalformedRow",
                        "expected 6 fields, found " + std::to_string(fields.size())});
      continue;
    }
    ChoiceRecord record;
    record.subject_id = fields[0];
    record.session_id = fields[1];
    if (record.subject_id.empty() || record.session_id.empty()) {
      issues.push_back({line_no, "MalformedRow", "subject_id and session_id must be non-empty"});
      continue;
    }
    const auto sequence = sequence_from_token(fields[2]);
    if (!sequence) {
      issues.push_back({line_no, "UnknownSequenceToken", "unknown sequence '" + fields[2] + "'"});
      continue;
    }
    record.sequence = *sequence;
    const auto game = game_from_token(fields[3]);
    if (!game) {
      issues.push_back({line_no, "UnknownGameToken", "unknown game '" + fields[3] + "'"});
      continue;
    }
    record.game = *game;
    const auto role = role_from_token(fields[4]);
    if (!role || !role_fits_game(record.game, *role)) {
      issues.push_back({line_no, "RoleGameMismatch",
                        "role '" + fields[4] + "' is not valid for game '" + fields[3] + "'"});
      continue;
    }
    record.role = *role;
    const auto choice = Rat::parse(fields[5]);
    if (!choice) {
      issues.push_back({line_no, "MalformedNumber", "malformed choice '" + fields[5] + "'"});
      continue;
    }
    record.choice = *choice;

    const std::vector<Rat>* grid = nullptr;
    switch (record.game) {
      case GameTag::TdSim:
      case GameTag::TdSeq: grid = &grids.claims; break;
      case GameTag::TrustIf:
      case GameTag::TrustTf:
        grid = record.role == RoleTag::Investor ? &grids.invests : &grids.displayed_returns;
        break;
    }
    if (!on_grid(*grid, record.choice)) {
      issues.push_back({line_no, "ChoiceOutOfRange",
                        "choice " + record.choice.to_string() + " is not a valid value for " +
                            fields[3] + "/" + fields[4]});
      continue;
    }
    if (!seen.insert({record.subject_id, record.game}).second) {
      issues.push_back({line_no, "DuplicateSubjectGame",
                        "subject '" + record.subject_id + "' already has a row for game '" +
                            fields[3] + "'"});
      continue;
    }
    dataset.records.push_back(std::move(record));
  }

  if (!issues.empty()) throw IngestError(std::move(issues));
  return dataset;
}

ChoiceDataset ingest_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError({{0, "MissingColumn", "cannot open '" + path + "'"}});
  }
  return ingest_csv(in, path);
}

const char* delta_kind_token(DeltaKind kind) {
  switch (kind) {
    case DeltaKind::Claim: return "claim";
    case DeltaKind::Invest: return "invest";
    case DeltaKind::Return: return "return";
  }
  return "claim";
}

namespace {

const ChoiceRecord* find_record(const ChoiceDataset& dataset, const std::string& subject,
                                GameTag game) {
  for (const ChoiceRecord& r : dataset.records) {
    if (r.subject_id == subject && r.game == game) return &r;
  }
  return nullptr;
}

std::vector<std::string> sorted_subjects(const ChoiceDataset& dataset) {
  std::set<std::string> ids;
  for (const ChoiceRecord& r : dataset.records) ids.insert(r.subject_id);
  return {ids.begin(), ids.end()};
}

}  // namespace

DeltaSet compute_deltas(const ChoiceDataset& dataset, DeltaKind kind) {
  DeltaSet out;
  for (const std::string& subject : sorted_subjects(dataset)) {
    if (kind == DeltaKind::Claim) {
      const ChoiceRecord* seq = find_record(dataset, subject, GameTag::TdSeq);
      const ChoiceRecord* sim = find_record(dataset, subject, GameTag::TdSim);
      if (seq && sim) {
        out.records.push_back({subject, kind, seq->choice - sim->choice});
      } else if (seq || sim) {
        ++out.excluded;
      }
      continue;
    }
    const ChoiceRecord* tif = find_record(dataset, subject, GameTag::TrustIf);
    const ChoiceRecord* ttf = find_record(dataset, subject, GameTag::TrustTf);
    if (!tif || !ttf) continue;
    if (tif->role != ttf->role) {
      ++out.excluded;  // role switcher
      continue;
    }
    if (kind == DeltaKind::Invest && tif->role == RoleTag::Investor) {
      out.records.push_back({subject, kind, tif->choice - ttf->choice});
    } else if (kind == DeltaKind::Return && tif->role == RoleTag::Trustee) {
      out.records.push_back({subject, kind, ttf->choice - tif->choice});
    }
  }
  return out;
}

std::optional<RoleTag> td_seq_role(const ChoiceDataset& dataset, const std::string& subject_id) {
  const ChoiceRecord* r = find_record(dataset, subject_id, GameTag::TdSeq);
  if (!r) return std::nullopt;
  return r->role;
}

}  // namespace data
}  // namespace vobs
