#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vobs/rational.hpp"

namespace vobs {
namespace data {

// Subject-level choices from a four-game session, one row per
// (subject, game). The CSV schema is
//   subject_id,session_id,sequence,game,role,choice
// with sequence in {tdseq_first, tdsim_first}, game in
// {td_sim, td_seq, trust_if, trust_tf}, and role consistent with the game
// (td_sim -> na, td_seq -> p1|p2, trust_* -> investor|trustee). Claims live
// on the default claim grid; investments on the default invest levels;
// returns are recorded on the displayed scale (twice the model level).

enum class GameTag { TdSim, TdSeq, TrustIf, TrustTf };
enum class RoleTag { P1, P2, Investor, Trustee, Na };
enum class SequenceTag { TdSeqFirst, TdSimFirst };

const char* game_token(GameTag g);
const char* role_token(RoleTag r);
const char* sequence_token(SequenceTag s);
std::optional<GameTag> game_from_token(std::string_view token);
std::optional<RoleTag> role_from_token(std::string_view token);
std::optional<SequenceTag> sequence_from_token(std::string_view token);

struct ChoiceRecord {
  std::string subject_id;
  std::string session_id;
  SequenceTag sequence = SequenceTag::TdSeqFirst;
  GameTag game = GameTag::TdSim;
  RoleTag role = RoleTag::Na;
  Rat choice;
};

struct IngestIssue {
  int row = 0;  // 1-based CSV line (header is line 1)
  std::string code;
  std::string detail;

  std::string render() const;
};

class IngestError : public std::runtime_error {
 public:
  explicit IngestError(std::vector<IngestIssue> issues);
  const std::vector<IngestIssue>& issues() const { return issues_; }

 private:
  std::vector<IngestIssue> issues_;
};

struct ChoiceDataset {
  std::vector<ChoiceRecord> records;
  std::string source;
  int row_count = 0;  // data rows in the source
};

// Reads and validates the whole file; every violation is collected and
// reported together, with row numbers.
ChoiceDataset ingest_csv(std::istream& in, const std::string& source_name);
ChoiceDataset ingest_csv_file(const std::string& path);

enum class DeltaKind { Claim, Invest, Return };

const char* delta_kind_token(DeltaKind kind);

struct DeltaRecord {
  std::string subject_id;
  DeltaKind kind = DeltaKind::Claim;
  Rat value;
};

struct DeltaSet {
  std::vector<DeltaRecord> records;  // sorted by subject id
  int excluded = 0;                  // subjects dropped by the filter below
};

// Within-subject treatment differences.
//   claim:  td_seq choice minus td_sim choice (subjects in both TD games)
//   invest: trust_if minus trust_tf investment (investor in both versions)
//   return: trust_tf minus trust_if return (trustee in both versions)
// Role switchers fail the invest/return filter and are counted, not errors.
DeltaSet compute_deltas(const ChoiceDataset& dataset, DeltaKind kind);

// The td_seq role of a subject, if they played it.
std::optional<RoleTag> td_seq_role(const ChoiceDataset& dataset, const std::string& subject_id);

}  // namespace data
}  // namespace vobs
