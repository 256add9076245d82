#include "vobs/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vobs/catalog.hpp"

namespace vobs {
namespace report {

using data::ChoiceDataset;
using data::ChoiceRecord;
using data::DeltaKind;
using data::GameTag;
using data::RoleTag;
using stats::Tail;
using stats::TestResult;

ReportError::ReportError(std::string code, const std::string& message)
    : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

namespace {

// All record selections iterate subjects in sorted order so that identical
// datasets produce identical reports byte for byte.
std::vector<std::string> sorted_subjects(const ChoiceDataset& dataset) {
  std::set<std::string> ids;
  for (const ChoiceRecord& r : dataset.records) ids.insert(r.subject_id);
  return {ids.begin(), ids.end()};
}

const ChoiceRecord* find_record(const ChoiceDataset& dataset, const std::string& subject,
                                GameTag game) {
  for (const ChoiceRecord& r : dataset.records) {
    if (r.subject_id == subject && r.game == game) return &r;
  }
  return nullptr;
}

struct Groups {
  std::vector<Rat> claims_sim;
  std::vector<Rat> claims_seq_first;
  std::vector<Rat> claims_seq_second;
  std::vector<Rat> claims_seq_pooled;
  std::vector<Rat> invest_if, invest_tf;
  std::vector<Rat> return_if, return_tf;

  std::vector<Rat> eq_first, eq_second;            // equilibrium-claim indicators
  std::vector<Rat> eq_diff_first, eq_diff_second;  // paired indicator differences
  std::vector<Rat> delta_claim_first, delta_claim_second;
  std::vector<Rat> delta_invest, delta_return;
  int delta_claim_excluded = 0;
  int delta_trust_excluded = 0;
};

Groups collect_groups(const ChoiceDataset& dataset) {
  Groups g;
  const Rat minimum_claim = TdParams().min_claim;
  const auto indicator = [&](const Rat& claim) { return claim == minimum_claim ? Rat(1) : Rat(0); };

  for (const std::string& subject : sorted_subjects(dataset)) {
    const ChoiceRecord* sim = find_record(dataset, subject, GameTag::TdSim);
    const ChoiceRecord* seq = find_record(dataset, subject, GameTag::TdSeq);
    if (sim) g.claims_sim.push_back(sim->choice);
    if (seq) {
      g.claims_seq_pooled.push_back(seq->choice);
      if (seq->role == RoleTag::P1) {
        g.claims_seq_first.push_back(seq->choice);
        g.eq_first.push_back(indicator(seq->choice));
      } else {
        g.claims_seq_second.push_back(seq->choice);
        g.eq_second.push_back(indicator(seq->choice));
      }
    }
    if (sim && seq) {
      const Rat diff = indicator(seq->choice) - indicator(sim->choice);
      const Rat delta = seq->choice - sim->choice;
      if (seq->role == RoleTag::P1) {
        g.eq_diff_first.push_back(diff);
        g.delta_claim_first.push_back(delta);
      } else {
        g.eq_diff_second.push_back(diff);
        g.delta_claim_second.push_back(delta);
      }
    }

    const ChoiceRecord* tif = find_record(dataset, subject, GameTag::TrustIf);
    const ChoiceRecord* ttf = find_record(dataset, subject, GameTag::TrustTf);
    if (tif) {
      (tif->role == RoleTag::Investor ? g.invest_if : g.return_if).push_back(tif->choice);
    }
    if (ttf) {
      (ttf->role == RoleTag::Investor ? g.invest_tf : g.return_tf).push_back(ttf->choice);
    }
  }

  const data::DeltaSet claim = compute_deltas(dataset, DeltaKind::Claim);
  g.delta_claim_excluded = claim.excluded;
  const data::DeltaSet invest = compute_deltas(dataset, DeltaKind::Invest);
  for (const auto& r : invest.records) g.delta_invest.push_back(r.value);
  const data::DeltaSet ret = compute_deltas(dataset, DeltaKind::Return);
  for (const auto& r : ret.records) g.delta_return.push_back(r.value);
  g.delta_trust_excluded = invest.excluded;
  return g;
}

GroupSummary group_summary(std::string name, const std::vector<Rat>& values) {
  GroupSummary out;
  out.group = std::move(name);
  if (!values.empty()) out.stats = stats::summarize(values);
  return out;
}

DeltaSummary delta_summary(std::string kind, const std::vector<Rat>& values, int excluded) {
  DeltaSummary out;
  out.kind = std::move(kind);
  out.excluded = excluded;
  if (values.empty()) return out;
  const stats::Summary s = stats::summarize(values);
  out.n = s.n;
  out.mean = s.mean;
  out.sd = s.sd;
  return out;
}

class Battery {
 public:
  explicit Battery(std::vector<TestRow>* rows) : rows_(rows) {}

  template <typename F>
  void add(const std::string& id, const std::string& description, F&& run) {
    TestRow row;
    row.id = id;
    row.description = description;
    try {
      row.result = run();
    } catch (const stats::StatError& e) {
      row.skip_reason = e.code();
    }
    rows_->push_back(std::move(row));
  }

 private:
  std::vector<TestRow>* rows_;
};

const TestRow* find_row(const std::vector<TestRow>& rows, const std::string& id) {
  for (const TestRow& row : rows) {
    if (row.id == id) return &row;
  }
  return nullptr;
}

// Evidence of an effect requires a computed test that rejects at alpha; a
// test skipped for lack of variation is treated as showing no effect.
bool shows_effect(const std::vector<TestRow>& rows, const std::string& id, double alpha) {
  const TestRow* row = find_row(rows, id);
  if (row == nullptr || !row->result) return false;
  return row->result->p_value < alpha;
}

}  // namespace

AnalysisReport hypothesis_report(const ChoiceDataset& dataset, const ReportOptions& options) {
  for (GameTag game : {GameTag::TdSim, GameTag::TdSeq, GameTag::TrustIf, GameTag::TrustTf}) {
    const bool present = std::any_of(dataset.records.begin(), dataset.records.end(),
                                     [&](const ChoiceRecord& r) { return r.game == game; });
    if (!present) {
      throw ReportError("IncompleteDesign",
                        std::string("dataset has no rows for game '") + game_token(game) + "'");
    }
  }

  AnalysisReport rep;
  rep.alpha = options.alpha;
  rep.directional_tails = options.directional;
  rep.rows = static_cast<int>(dataset.records.size());
  rep.subjects = static_cast<int>(sorted_subjects(dataset).size());
  {
    std::set<std::string> sessions;
    for (const ChoiceRecord& r : dataset.records) sessions.insert(r.session_id);
    rep.sessions = static_cast<int>(sessions.size());
  }

  const Groups g = collect_groups(dataset);

  rep.claims.push_back(group_summary("simultaneous", g.claims_sim));
  rep.claims.push_back(group_summary("sequential_pooled", g.claims_seq_pooled));
  rep.claims.push_back(group_summary("sequential_first_mover", g.claims_seq_first));
  rep.claims.push_back(group_summary("sequential_second_mover", g.claims_seq_second));

  for (data::SequenceTag seq : {data::SequenceTag::TdSeqFirst, data::SequenceTag::TdSimFirst}) {
    ChoiceDataset slice;
    for (const ChoiceRecord& r : dataset.records) {
      if (r.sequence == seq) slice.records.push_back(r);
    }
    const Groups sg = collect_groups(slice);
    std::vector<GroupSummary> panel;
    panel.push_back(group_summary("simultaneous", sg.claims_sim));
    panel.push_back(group_summary("sequential_first_mover", sg.claims_seq_first));
    panel.push_back(group_summary("sequential_second_mover", sg.claims_seq_second));
    rep.claims_by_sequence[data::sequence_token(seq)] = std::move(panel);
  }

  rep.investment.push_back(group_summary("investor_first", g.invest_if));
  rep.investment.push_back(group_summary("trustee_first", g.invest_tf));
  rep.returns.push_back(group_summary("investor_first", g.return_if));
  rep.returns.push_back(group_summary("trustee_first", g.return_tf));

  rep.deltas.push_back(delta_summary("claim_first_mover", g.delta_claim_first, g.delta_claim_excluded));
  rep.deltas.push_back(delta_summary("claim_second_mover", g.delta_claim_second, 0));
  rep.deltas.push_back(delta_summary("invest", g.delta_invest, g.delta_trust_excluded));
  rep.deltas.push_back(delta_summary("return", g.delta_return, g.delta_trust_excluded));

  const Rat minimum_claim = TdParams().min_claim;
  const Tail dir_tail = options.directional ? Tail::Greater : Tail::TwoSided;
  Battery battery(&rep.tests);

  battery.add("td_claims_vs_min_sim", "simultaneous claims against the minimum claim",
              [&] { return stats::t_test(g.claims_sim, minimum_claim, Tail::TwoSided); });
  battery.add("td_claims_vs_min_seq", "sequential claims (pooled) against the minimum claim",
              [&] { return stats::t_test(g.claims_seq_pooled, minimum_claim, Tail::TwoSided); });
  battery.add("td_claims_seq_vs_sim", "claims, sequential (pooled) vs simultaneous",
              [&] { return stats::rank_sum(g.claims_seq_pooled, g.claims_sim, Tail::TwoSided); });
  battery.add("td_claims_seq_vs_sim_greater", "claims larger in the sequential treatment",
              [&] { return stats::rank_sum(g.claims_seq_pooled, g.claims_sim, dir_tail); });
  battery.add("td_claims_first_vs_second", "claims, first vs second movers",
              [&] { return stats::rank_sum(g.claims_seq_first, g.claims_seq_second, Tail::TwoSided); });
  battery.add("td_claims_first_vs_second_greater", "first movers claim more than second movers",
              [&] { return stats::rank_sum(g.claims_seq_first, g.claims_seq_second, dir_tail); });
  battery.add("td_claims_first_vs_second_less", "first movers claim less than second movers",
              [&] {
                return stats::rank_sum(g.claims_seq_first, g.claims_seq_second,
                                       options.directional ? Tail::Less : Tail::TwoSided);
              });
  battery.add("td_eqrate_first_vs_second", "minimum-claim rate, first vs second movers",
              [&] { return stats::rank_sum(g.eq_first, g.eq_second, Tail::TwoSided); });
  battery.add("td_eqrate_first_seq_vs_sim",
              "minimum-claim rate of first movers, sequential vs simultaneous (paired)",
              [&] { return stats::signed_rank(g.eq_diff_first, Tail::TwoSided); });
  battery.add("td_eqrate_second_seq_vs_sim",
              "minimum-claim rate of second movers, sequential vs simultaneous (paired)",
              [&] { return stats::signed_rank(g.eq_diff_second, Tail::TwoSided); });
  battery.add("td_delta_claim_first_signed_rank", "claim differences of first movers (paired)",
              [&] { return stats::signed_rank(g.delta_claim_first, Tail::TwoSided); });
  battery.add("td_delta_claim_second_signed_rank", "claim differences of second movers (paired)",
              [&] { return stats::signed_rank(g.delta_claim_second, Tail::TwoSided); });
  battery.add("td_delta_claim_first_t", "mean claim difference of first movers below zero",
              [&] {
                return stats::t_test(g.delta_claim_first, Rat(0),
                                     options.directional ? Tail::Less : Tail::TwoSided);
              });
  battery.add("td_delta_claim_second_t", "mean claim difference of second movers against zero",
              [&] { return stats::t_test(g.delta_claim_second, Rat(0), Tail::TwoSided); });
  battery.add("trust_invest_by_timing", "investment, investor-first vs trustee-first",
              [&] { return stats::rank_sum(g.invest_if, g.invest_tf, Tail::TwoSided); });
  battery.add("trust_invest_by_timing_greater", "investment higher in the investor-first version",
              [&] { return stats::rank_sum(g.invest_if, g.invest_tf, dir_tail); });
  battery.add("trust_return_by_timing", "return, trustee-first vs investor-first",
              [&] { return stats::rank_sum(g.return_tf, g.return_if, Tail::TwoSided); });
  battery.add("trust_return_by_timing_greater", "return higher in the investor-first version",
              [&] { return stats::rank_sum(g.return_if, g.return_tf, dir_tail); });
  battery.add("trust_delta_invest_t", "mean investment difference against zero",
              [&] { return stats::t_test(g.delta_invest, Rat(0), Tail::TwoSided); });
  battery.add("trust_delta_return_t", "mean return difference against zero",
              [&] { return stats::t_test(g.delta_return, Rat(0), Tail::TwoSided); });

  struct ClauseSpec {
    const char* id;
    const char* statement;
    const char* test_id;
    bool directional;
  };
  const ClauseSpec clauses[] = {
      {"H1.i", "first- and second-mover claims are indistinguishable in the sequential game",
       "td_claims_first_vs_second", false},
      {"H1.ii", "sequential and simultaneous claims are indistinguishable",
       "td_claims_seq_vs_sim", false},
      {"H1'.i", "first movers make larger claims than second movers",
       "td_claims_first_vs_second_greater", true},
      {"H1'.ii", "claims are larger in the sequential game than in the simultaneous game",
       "td_claims_seq_vs_sim_greater", true},
      {"H2.i", "investment is unaffected by which side moves first",
       "trust_invest_by_timing", false},
      {"H2.ii", "return is unaffected by which side moves first",
       "trust_return_by_timing", false},
      {"H2'.i", "investment is higher in the investor-first version",
       "trust_invest_by_timing_greater", true},
      {"H2'.ii", "return is higher in the investor-first version",
       "trust_return_by_timing_greater", true},
  };
  for (const ClauseSpec& clause : clauses) {
    HypothesisRow row;
    row.id = clause.id;
    row.statement = clause.statement;
    row.test_id = clause.test_id;
    row.directional = clause.directional;
    const TestRow* test = find_row(rep.tests, clause.test_id);
    if (test == nullptr || !test->result) {
      row.verdict = "not_testable";
    } else {
      row.p_value = test->result->p_value;
      const bool significant = test->result->p_value < options.alpha;
      // Null-form clauses are supported when not rejected; directional
      // clauses are supported when their one-sided test rejects.
      row.verdict = clause.directional == significant ? "supported" : "rejected";
    }
    rep.hypotheses.push_back(std::move(row));
  }

  rep.flags.td_timing_effect = shows_effect(rep.tests, "td_claims_first_vs_second", options.alpha);
  rep.flags.td_first_movers_toward_equilibrium =
      shows_effect(rep.tests, "td_claims_first_vs_second_less", options.alpha);
  rep.flags.trust_timing_null =
      !shows_effect(rep.tests, "trust_invest_by_timing", options.alpha) &&
      !shows_effect(rep.tests, "trust_return_by_timing", options.alpha) &&
      !shows_effect(rep.tests, "trust_delta_invest_t", options.alpha) &&
      !shows_effect(rep.tests, "trust_delta_return_t", options.alpha);

  return rep;
}

namespace {

std::string fixed(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
  return buffer;
}

nlohmann::ordered_json summary_json(const GroupSummary& s) {
  nlohmann::ordered_json j;
  j["group"] = s.group;
  j["n"] = s.stats.n;
  if (s.stats.n > 0) {
    j["mean"] = s.stats.mean.to_string();
    j["median"] = s.stats.median.to_string();
    j["sd"] = s.stats.sd;
    if (s.stats.degenerate) j["degenerate"] = true;
  }
  return j;
}

nlohmann::ordered_json test_json(const TestRow& row) {
  nlohmann::ordered_json j;
  j["id"] = row.id;
  j["description"] = row.description;
  if (row.result) {
    const TestResult& r = *row.result;
    j["method"] = r.method;
    j["tail"] = stats::tail_token(r.tail);
    j["n"] = r.n;
    if (r.m) j["m"] = *r.m;
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["mode"] = stats::mode_token(r.mode);
    if (r.p_count) {
      j["p_count"] = std::to_string(r.p_count->num()) + "/" + std::to_string(r.p_count->den());
    }
    if (r.zeros_dropped > 0) j["zeros_dropped"] = r.zeros_dropped;
  } else {
    j["skipped"] = row.skip_reason;
  }
  return j;
}

}  // namespace

std::string report_json(const AnalysisReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "vobs.analysis/1";
  j["alpha"] = report.alpha;
  j["tails"] = report.directional_tails ? "directional" : "two_sided";
  j["dataset"] = {{"rows", report.rows}, {"subjects", report.subjects}, {"sessions", report.sessions}};

  nlohmann::ordered_json summary;
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  for (const GroupSummary& s : report.claims) claims.push_back(summary_json(s));
  summary["claims"] = std::move(claims);
  nlohmann::ordered_json by_seq;
  for (const auto& [key, panel] : report.claims_by_sequence) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const GroupSummary& s : panel) rows.push_back(summary_json(s));
    by_seq[key] = std::move(rows);
  }
  summary["claims_by_sequence"] = std::move(by_seq);
  nlohmann::ordered_json invest = nlohmann::ordered_json::array();
  for (const GroupSummary& s : report.investment) invest.push_back(summary_json(s));
  summary["investment"] = std::move(invest);
  nlohmann::ordered_json returns = nlohmann::ordered_json::array();
  for (const GroupSummary& s : report.returns) returns.push_back(summary_json(s));
  summary["returns"] = std::move(returns);
  j["summary"] = std::move(summary);

  nlohmann::ordered_json deltas = nlohmann::ordered_json::array();
  for (const DeltaSummary& d : report.deltas) {
    nlohmann::ordered_json entry;
    entry["kind"] = d.kind;
    entry["n"] = d.n;
    entry["excluded"] = d.excluded;
    if (d.n > 0) {
      entry["mean"] = d.mean.to_string();
      entry["sd"] = d.sd;
    }
    deltas.push_back(std::move(entry));
  }
  j["deltas"] = std::move(deltas);

  nlohmann::ordered_json tests = nlohmann::ordered_json::array();
  for (const TestRow& row : report.tests) tests.push_back(test_json(row));
  j["tests"] = std::move(tests);

  nlohmann::ordered_json hypotheses = nlohmann::ordered_json::array();
  for (const HypothesisRow& h : report.hypotheses) {
    nlohmann::ordered_json entry;
    entry["id"] = h.id;
    entry["statement"] = h.statement;
    entry["test"] = h.test_id;
    entry["directional"] = h.directional;
    if (h.p_value) entry["p_value"] = *h.p_value;
    entry["verdict"] = h.verdict;
    hypotheses.push_back(std::move(entry));
  }
  j["hypotheses"] = std::move(hypotheses);

  j["flags"] = {{"td_timing_effect", report.flags.td_timing_effect},
                {"td_first_movers_toward_equilibrium",
                 report.flags.td_first_movers_toward_equilibrium},
                {"trust_timing_null", report.flags.trust_timing_null}};
  return j.dump(2) + "\n";
}

namespace {

void render_summary_table(std::ostringstream& os, const std::vector<GroupSummary>& rows) {
  char line[160];
  std::snprintf(line, sizeof(line), "  %-28s %5s %9s %9s %9s\n", "group", "n", "mean", "median",
                "s.d.");
  os << line;
  for (const GroupSummary& s : rows) {
    if (s.stats.n == 0) {
      std::snprintf(line, sizeof(line), "  %-28s %5d %9s %9s %9s\n", s.group.c_str(), 0, "-", "-",
                    "-");
    } else {
      std::snprintf(line, sizeof(line), "  %-28s %5d %9s %9s %9s\n", s.group.c_str(), s.stats.n,
                    fixed(s.stats.mean.to_double(), 2).c_str(),
                    fixed(s.stats.median.to_double(), 2).c_str(), fixed(s.stats.sd, 2).c_str());
    }
    os << line;
  }
}

}  // namespace

std::string report_text(const AnalysisReport& report) {
  std::ostringstream os;
  char line[220];
  os << "analysis report\n";
  os << "===============\n";
  os << "alpha " << fixed(report.alpha, 3) << ", "
     << (report.directional_tails ? "directional" : "two-sided") << " tails\n";
  os << "dataset: " << report.rows << " rows, " << report.subjects << " subjects, "
     << report.sessions << " sessions\n";

  os << "\nclaims\n";
  render_summary_table(os, report.claims);
  for (const auto& [key, panel] : report.claims_by_sequence) {
    os << "\nclaims, sessions with sequence " << key << "\n";
    render_summary_table(os, panel);
  }
  os << "\ninvestment\n";
  render_summary_table(os, report.investment);
  os << "\nreturn (displayed scale)\n";
  render_summary_table(os, report.returns);

  os << "\nwithin-subject differences\n";
  std::snprintf(line, sizeof(line), "  %-28s %5s %5s %9s %9s\n", "kind", "n", "excl", "mean",
                "s.d.");
  os << line;
  for (const DeltaSummary& d : report.deltas) {
    if (d.n == 0) {
      std::snprintf(line, sizeof(line), "  %-28s %5d %5d %9s %9s\n", d.kind.c_str(), 0, d.excluded,
                    "-", "-");
    } else {
      std::snprintf(line, sizeof(line), "  %-28s %5d %5d %9s %9s\n", d.kind.c_str(), d.n,
                    d.excluded, fixed(d.mean.to_double(), 3).c_str(), fixed(d.sd, 3).c_str());
    }
    os << line;
  }

  os << "\ntests\n";
  std::snprintf(line, sizeof(line), "  %-36s %-13s %-10s %-7s %10s %9s  %s\n", "id", "method",
                "tail", "n/m", "statistic", "p-value", "mode");
  os << line;
  for (const TestRow& row : report.tests) {
    if (!row.result) {
      std::snprintf(line, sizeof(line), "  %-36s skipped: %s\n", row.id.c_str(),
                    row.skip_reason.c_str());
      os << line;
      continue;
    }
    const TestResult& r = *row.result;
    std::string nm = std::to_string(r.n);
    if (r.m) nm += "/" + std::to_string(*r.m);
    std::string mode = stats::mode_token(r.mode);
    if (r.p_count) {
      mode += " (" + std::to_string(r.p_count->num()) + "/" + std::to_string(r.p_count->den()) + ")";
    }
    if (r.zeros_dropped > 0) mode += " zeros=" + std::to_string(r.zeros_dropped);
    std::snprintf(line, sizeof(line), "  %-36s %-13s %-10s %-7s %10s %9s  %s\n", row.id.c_str(),
                  r.method.c_str(), stats::tail_token(r.tail), nm.c_str(),
                  fixed(r.statistic, 3).c_str(), fixed(r.p_value, 4).c_str(), mode.c_str());
    os << line;
  }

  os << "\nhypotheses (alpha " << fixed(report.alpha, 3) << ")\n";
  for (const HypothesisRow& h : report.hypotheses) {
    std::string p = h.p_value ? "p=" + fixed(*h.p_value, 4) : "no test";
    std::snprintf(line, sizeof(line), "  %-7s %-11s %s  [%s, %s]\n", h.id.c_str(),
                  h.verdict.c_str(), h.statement.c_str(), h.test_id.c_str(), p.c_str());
    os << line;
  }

  os << "\nflags\n";
  os << "  td_timing_effect: " << (report.flags.td_timing_effect ? "yes" : "no") << "\n";
  os << "  td_first_movers_toward_equilibrium: "
     << (report.flags.td_first_movers_toward_equilibrium ? "yes" : "no") << "\n";
  os << "  trust_timing_null: " << (report.flags.trust_timing_null ? "yes" : "no") << "\n";
  return os.str();
}

std::vector<EcdfSeries> ecdf_series(const ChoiceDataset& dataset) {
  const Groups g = collect_groups(dataset);
  std::vector<EcdfSeries> out;
  const auto add = [&out](const char* name, const std::vector<Rat>& values) {
    EcdfSeries series;
    series.name = name;
    if (!values.empty()) series.points = stats::ecdf(values);
    out.push_back(std::move(series));
  };
  add("claims_sim", g.claims_sim);
  add("claims_seq_pooled", g.claims_seq_pooled);
  add("claims_seq_first", g.claims_seq_first);
  add("claims_seq_second", g.claims_seq_second);
  add("invest_if", g.invest_if);
  add("invest_tf", g.invest_tf);
  add("return_if", g.return_if);
  add("return_tf", g.return_tf);
  add("delta_claim_first", g.delta_claim_first);
  add("delta_claim_second", g.delta_claim_second);
  add("delta_invest", g.delta_invest);
  add("delta_return", g.delta_return);
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportError("IoError", "cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

void write_analysis_artifacts(const ChoiceDataset& dataset, const AnalysisReport& report,
                              const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "report.json", report_json(report));
  write_file(out_dir / "report.txt", report_text(report));

  std::ostringstream deltas;
  deltas << "subject_id,kind,value\n";
  for (DeltaKind kind : {DeltaKind::Claim, DeltaKind::Invest, DeltaKind::Return}) {
    for (const data::DeltaRecord& r : compute_deltas(dataset, kind).records) {
      deltas << r.subject_id << "," << data::delta_kind_token(kind) << "," << r.value.to_string()
             << "\n";
    }
  }
  write_file(out_dir / "deltas.csv", deltas.str());

  for (const EcdfSeries& series : ecdf_series(dataset)) {
    std::ostringstream csv;
    csv << "value,cdf\n";
    for (const stats::EcdfPoint& p : series.points) {
      csv << p.value.to_string() << "," << p.fraction.to_string() << "\n";
    }
    write_file(out_dir / ("ecdf_" + series.name + ".csv"), csv.str());
  }
}

}  // namespace report
}  // namespace vobs
