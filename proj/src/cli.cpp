#include "vobs/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vobs/catalog.hpp"
#include "vobs/equilibrium.hpp"
#include "vobs/gamespec.hpp"
#include "vobs/report.hpp"

namespace vobs {
namespace cli {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct SolveConfig {
  std::string builtin;
  std::string game_path;
  std::string concept_name = "nash";
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format = "json";
};

struct PredictConfig {
  std::string family;
  std::string out_path;
  std::string format = "json";
};

struct AnalyzeConfig {
  std::string data_path;
  std::string out_dir;
  double alpha = 0.05;
  std::string tail = "directional";
};

struct ValidateConfig {
  std::string game_path;
};

std::vector<std::pair<std::string, std::string>> parse_overrides(
    const std::vector<std::string>& overrides) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
      throw CatalogError("override '" + kv + "' is not of the form key=value");
    }
    out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return out;
}

TimedGame load_game(const SolveConfig& config, std::ostream& err) {
  if (!config.builtin.empty()) {
    return make_builtin(config.builtin, parse_overrides(config.overrides));
  }
  std::ifstream in(config.game_path);
  if (!in) {
    throw gamespec::ParseError(
        {gamespec::DiagCode::MissingSection, 0, 0, "cannot open '" + config.game_path + "'"});
  }
  std::ostringstream text;
  text << in.rdbuf();
  if (!config.overrides.empty()) {
    err << "note: --set is ignored for file-based games\n";
  }
  return gamespec::parse_game_or_throw(text.str());
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
  file << content;
}

int cmd_solve(const SolveConfig& config, std::ostream& out, std::ostream& err) {
  const auto kind = concept_from_token(config.concept_name);
  if (!kind) {
    err << "error: unknown concept '" << config.concept_name
        << "' (expected nash, weak-dom, strict-dom, spe, vo, or gvo)\n";
    return kInputError;
  }
  if (config.format != "json" && config.format != "text") {
    err << "error: solve supports --format json or text\n";
    return kInputError;
  }
  const TimedGame game = load_game(config, err);
  const SolveResult result = solve(game, *kind);
  emit(config.format == "json" ? solve_result_json(result, game) : solve_result_text(result, game),
       config.out_path, out);
  return kOk;
}

struct PredictRow {
  std::string game;
  std::string timing;
  std::string concept_name;
  std::string prediction;
  std::string hypothesis;
};

std::string outcomes_string(const SolveResult& result, const TimedGame& game) {
  if (result.verdict && *result.verdict == "timing_irrelevant") return "timing_irrelevant";
  std::string s;
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    if (i > 0) s += " ";
    const auto& o = result.outcomes[i];
    s += "(" + game.a1.labels[o.profile.a1] + ", " + game.a2.labels[o.profile.a2] + ")";
  }
  return s.empty() ? "none" : s;
}

PredictRow predict_row(const std::string& builtin, Concept kind, const std::string& hypothesis) {
  const TimedGame game = make_builtin(builtin);
  const SolveResult result = solve(game, kind);
  return PredictRow{builtin, timing_token(game.timing), concept_token(kind),
                    outcomes_string(result, game), hypothesis};
}

int cmd_predict(const PredictConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<PredictRow> rows;
  if (config.family == "td") {
    rows.push_back(predict_row("td_sim", Concept::Nash, "baseline"));
    rows.push_back(predict_row("td_seq", Concept::VoRefinement, "H1"));
    rows.push_back(predict_row("td_seq", Concept::Gvo, "H1'"));
  } else if (config.family == "trust") {
    rows.push_back(predict_row("trust_if", Concept::Nash, "baseline"));
    rows.push_back(predict_row("trust_tf", Concept::Nash, "baseline"));
    rows.push_back(predict_row("trust_if", Concept::VoRefinement, "H2"));
    rows.push_back(predict_row("trust_tf", Concept::VoRefinement, "H2"));
    rows.push_back(predict_row("trust_if", Concept::Gvo, "H2'"));
    rows.push_back(predict_row("trust_tf", Concept::Gvo, "H2'"));
  } else if (config.family == "weak_pd") {
    rows.push_back(predict_row("weak_pd", Concept::Nash, ""));
    rows.push_back(predict_row("weak_pd", Concept::VoRefinement, ""));
    rows.push_back(predict_row("weak_pd", Concept::Gvo, ""));
  } else {
    err << "error: unknown family '" << config.family << "' (expected td, trust, or weak_pd)\n";
    return kInputError;
  }

  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["family"] = config.family;
    nlohmann::ordered_json out_rows = nlohmann::ordered_json::array();
    for (const PredictRow& row : rows) {
      out_rows.push_back({{"game", row.game},
                          {"timing", row.timing},
                          {"concept", row.concept_name},
                          {"prediction", row.prediction},
                          {"hypothesis", row.hypothesis}});
    }
    j["rows"] = std::move(out_rows);
    emit(j.dump(2) + "\n", config.out_path, out);
  } else if (config.format == "text") {
    std::ostringstream os;
    char line[200];
    std::snprintf(line, sizeof(line), "%-10s %-13s %-10s %-28s %s\n", "game", "timing", "concept",
                  "prediction", "hypothesis");
    os << line;
    for (const PredictRow& row : rows) {
      std::snprintf(line, sizeof(line), "%-10s %-13s %-10s %-28s %s\n", row.game.c_str(),
                    row.timing.c_str(), row.concept_name.c_str(), row.prediction.c_str(),
                    row.hypothesis.c_str());
      os << line;
    }
    emit(os.str(), config.out_path, out);
  } else {
    err << "error: predict supports --format json or text\n";
    return kInputError;
  }
  return kOk;
}

int cmd_analyze(const AnalyzeConfig& config, std::ostream& out, std::ostream& err) {
  if (config.tail != "directional" && config.tail != "two_sided") {
    err << "error: --tail must be directional or two_sided\n";
    return kInputError;
  }
  const data::ChoiceDataset dataset = data::ingest_csv_file(config.data_path);
  report::ReportOptions options;
  options.alpha = config.alpha;
  options.directional = config.tail == "directional";
  const report::AnalysisReport rep = report::hypothesis_report(dataset, options);
  report::write_analysis_artifacts(dataset, rep, config.out_dir);
  out << "wrote report to " << config.out_dir << "\n";
  return kOk;
}

int cmd_validate(const ValidateConfig& config, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.game_path);
  if (!in) {
    err << "error: cannot open '" << config.game_path << "'\n";
    return kInputError;
  }
  std::ostringstream text;
  text << in.rdbuf();
  const gamespec::ParseResult parsed = gamespec::parse_game(text.str());
  if (!parsed.ok()) {
    err << config.game_path << ":" << parsed.diagnostic->render() << "\n";
    return kInputError;
  }
  const auto violations = validate(*parsed.game);
  if (!violations.empty()) {
    for (const Violation& v : violations) {
      err << config.game_path << ": " << violation_code_name(v.code);
      if (v.player != 0) err << " (player " << v.player << ")";
      err << ": " << v.detail << "\n";
    }
    return kInputError;
  }
  out << "ok: " << parsed.game->name << " (" << parsed.game->n1() << "x" << parsed.game->n2()
      << ", " << timing_token(parsed.game->timing) << ")\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for two-player games with unobservable actions"};
  app.name("vobs");
  app.require_subcommand(1);

  SolveConfig solve_config;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a game for one solution concept");
  auto* builtin_opt = solve_cmd->add_option("--builtin", solve_config.builtin,
                                            "builtin game (td_sim, td_seq, trust_if, trust_tf, weak_pd)");
  auto* game_opt = solve_cmd->add_option("--game", solve_config.game_path, "path to a .game file");
  builtin_opt->excludes(game_opt);
  solve_cmd->add_option("--concept", solve_config.concept_name,
                        "nash | weak-dom | strict-dom | spe | vo | gvo")
      ->required();
  solve_cmd->add_option("--set", solve_config.overrides,
                        "builtin parameter override key=value (repeatable)");
  solve_cmd->add_option("--out", solve_config.out_path, "write the result to this file");
  solve_cmd->add_option("--format", solve_config.format, "json | text");

  PredictConfig predict_config;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "prediction table for a builtin game family");
  predict_cmd->add_option("--builtin", predict_config.family, "td | trust | weak_pd")->required();
  predict_cmd->add_option("--out", predict_config.out_path, "write the table to this file");
  predict_cmd->add_option("--format", predict_config.format, "json | text");

  AnalyzeConfig analyze_config;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "run the analysis pipeline on a dataset");
  analyze_cmd->add_option("--data", analyze_config.data_path, "choices CSV")->required();
  analyze_cmd->add_option("--out", analyze_config.out_dir, "output directory")->required();
  analyze_cmd->add_option("--alpha", analyze_config.alpha, "significance level (default 0.05)");
  analyze_cmd->add_option("--tail", analyze_config.tail,
                          "directional | two_sided (tails for the directional clauses)");

  ValidateConfig validate_config;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a .game file");
  validate_cmd->add_option("--game", validate_config.game_path, "path to a .game file")->required();

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (solve_cmd->parsed()) {
      if (solve_config.builtin.empty() == solve_config.game_path.empty()) {
        err << "error: solve needs exactly one of --builtin or --game\n";
        return kInputError;
      }
      return cmd_solve(solve_config, out, err);
    }
    if (predict_cmd->parsed()) return cmd_predict(predict_config, out, err);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_config, out, err);
    if (validate_cmd->parsed()) return cmd_validate(validate_config, out, err);
    err << "error: no command\n";
    return kInputError;
  } catch (const gamespec::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const data::IngestError& e) {
    err << "error: invalid dataset\n";
    for (const data::IngestIssue& issue : e.issues()) err << "  " << issue.render() << "\n";
    return kInputError;
  } catch (const report::ReportError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace cli
}  // namespace vobs
