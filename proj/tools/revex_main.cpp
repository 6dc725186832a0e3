#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "revex/dep/fdg.hpp"
#include "revex/dep/targets.hpp"
#include "revex/errors.hpp"
#include "revex/harness/combos.hpp"
#include "revex/harness/merge.hpp"
#include "revex/harness/metrics.hpp"
#include "revex/ingest/bundle.hpp"
#include "revex/prune/smc_cfg.hpp"
#include "revex/verify/verifier.hpp"

namespace {

namespace fs = std::filesystem;
using namespace revex;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

ingest::WarningReport merged_input(const std::vector<std::string>& report_files) {
  std::vector<ingest::WarningReport> reports;
  std::set<std::string> tools;
  for (const auto& f : report_files) {
    reports.push_back(ingest::ingest_report(f));
    tools.insert(reports.back().tool_name);
  }
  if (reports.size() == 1) return reports.front();
  return harness::merge_reports(reports, tools);
}

int cmd_verify(const std::string& corpus_dir, const std::vector<std::string>& report_files,
               const std::string& truth_file, double timeout_s, unsigned jobs, bool no_prune,
               const std::string& solver_cmd, const std::string& out_file) {
  auto corpus = ingest::load_bundle(corpus_dir);
  auto report = merged_input(report_files);
  ingest::bind_report(report, corpus);

  verify::VerifyConfig config;
  config.pruning = !no_prune;
  config.timeout = std::chrono::milliseconds(static_cast<long>(timeout_s * 1000));
  config.jobs = jobs;
  if (!solver_cmd.empty()) {
    verify::SolverConfig solver;
    std::istringstream ss(solver_cmd);
    std::string tok;
    while (ss >> tok) solver.argv.push_back(tok);
    config.solver = solver;
  }

  auto verdicts = verify::verify(corpus, report, config);
  for (const auto& v : verdicts) {
    std::cout << v.contract_id << " " << ingest::selector_hex(v.selector) << " "
              << verify::outcome_name(v.outcome);
    if (!v.reason.empty()) std::cout << " (" << v.reason << ")";
    std::cout << " [" << std::fixed << std::setprecision(2) << v.elapsed_seconds << "s, "
              << v.steps_used << " steps]\n";
  }
  std::string json = verify::verdicts_to_json(verdicts);
  if (!out_file.empty()) write_text(out_file, json);

  if (!truth_file.empty()) {
    auto truth = harness::load_truth(truth_file);
    auto metrics = harness::score(verdicts, truth);
    std::cout << harness::metrics_table(metrics);
  }
  return 0;
}

int cmd_merge(const std::vector<std::string>& report_files, const std::vector<std::string>& tools,
              const std::string& out_file) {
  std::vector<ingest::WarningReport> reports;
  for (const auto& f : report_files) reports.push_back(ingest::ingest_report(f));
  std::set<std::string> combo(tools.begin(), tools.end());
  if (combo.empty()) {
    for (const auto& r : reports) combo.insert(r.tool_name);
  }
  auto merged = harness::merge_reports(reports, combo);
  std::string json = ingest::report_to_json(merged);
  if (out_file.empty()) std::cout << json << "\n";
  else write_text(out_file, json);
  return 0;
}

int cmd_score(const std::string& verdict_file, const std::string& truth_file,
              const std::string& out_file) {
  std::ifstream in(verdict_file);
  if (!in) throw Error("cannot open verdict file: " + verdict_file);
  std::stringstream buf;
  buf << in.rdbuf();
  auto doc = nlohmann::json::parse(buf.str());

  std::vector<verify::Verdict> verdicts;
  for (const auto& rec : doc) {
    verify::Verdict v;
    v.contract_id = rec.at("contract_id").get<std::string>();
    v.selector = ingest::parse_selector(rec.at("selector").get<std::string>());
    std::string outcome = rec.at("outcome").get<std::string>();
    v.outcome = outcome == "confirmed" ? verify::Outcome::kConfirmed
                : outcome == "refuted" ? verify::Outcome::kRefuted
                                       : verify::Outcome::kUnknown;
    verdicts.push_back(std::move(v));
  }
  auto truth = harness::load_truth(truth_file);
  auto metrics = harness::score(verdicts, truth);
  std::cout << harness::metrics_table(metrics);
  if (!out_file.empty()) write_text(out_file, harness::metrics_to_json(metrics));
  return 0;
}

int cmd_combos(const std::string& tools_arg, const std::vector<std::size_t>& sizes_arg) {
  std::vector<std::string> tools;
  bool numeric = !tools_arg.empty() &&
                 std::all_of(tools_arg.begin(), tools_arg.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (numeric) {
    int n = std::stoi(tools_arg);
    for (int i = 1; i <= n; ++i) tools.push_back("tool" + std::to_string(i));
  } else {
    std::stringstream ss(tools_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) tools.push_back(tok);
    }
  }
  std::set<std::size_t> sizes(sizes_arg.begin(), sizes_arg.end());
  if (sizes.empty()) sizes = {2, 4, 6, 8};
  auto combos = harness::enumerate_combos(tools, sizes);
  for (const auto& combo : combos) {
    bool first = true;
    for (const auto& t : combo) {
      if (!first) std::cout << "+";
      std::cout << t;
      first = false;
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_export_graphs(const std::string& corpus_dir, const std::vector<std::string>& report_files,
                      const std::string& out_dir) {
  auto corpus = ingest::load_bundle(corpus_dir);
  fs::create_directories(out_dir);

  std::map<std::string, std::vector<std::uint32_t>> warned;
  if (!report_files.empty()) {
    auto report = merged_input(report_files);
    ingest::bind_report(report, corpus);
    for (const auto& w : report.warnings) warned[w.contract_id].push_back(w.selector);
  }

  for (const auto& [id, loaded] : corpus.contracts()) {
    auto smc = prune::build_smc_cfg(loaded.cfg);
    write_text(out_dir + "/" + id + ".smc.dot", prune::smc_to_dot(smc));

    auto summaries = dep::extract_rw_sets(loaded.cfg, loaded.bundle);
    std::vector<std::uint32_t> targets_for;
    if (warned.count(id)) {
      targets_for = warned[id];
    } else {
      for (const auto& [sel, entry] : loaded.cfg.function_entries) targets_for.push_back(sel);
    }
    if (targets_for.empty()) continue;
    auto targets = dep::compute_target_sets(targets_for, summaries);
    auto fdg = dep::build_fdg(targets, summaries);
    write_text(out_dir + "/" + id + ".fdg.dot", dep::fdg_to_dot(fdg));
  }
  std::cout << "graphs written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reentrancy warning verification over EVM-style bytecode"};
  app.require_subcommand(1);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "verify upstream warnings against a corpus");
  std::string corpus_dir, truth_file, out_file, solver_cmd;
  std::vector<std::string> report_files;
  double timeout_s = 120.0;
  unsigned jobs = 1;
  bool no_prune = false;
  verify_cmd->add_option("--corpus", corpus_dir, "corpus directory")->required();
  verify_cmd->add_option("--report", report_files, "warning report file(s)")->required();
  verify_cmd->add_option("--truth", truth_file, "ground-truth labels for scoring");
  verify_cmd->add_option("--timeout", timeout_s, "per-warning budget in seconds")
      ->default_val(120.0);
  verify_cmd->add_option("--jobs", jobs, "parallel verification jobs")->default_val(1);
  verify_cmd->add_flag("--no-prune", no_prune, "disable branch pruning");
  verify_cmd->add_option("--solver", solver_cmd, "solver command line (default: auto)");
  verify_cmd->add_option("--out", out_file, "verdict JSON output path");

  // merge
  auto* merge_cmd = app.add_subcommand("merge", "merge reports with logical OR");
  std::vector<std::string> merge_reports_files, merge_tools;
  std::string merge_out;
  merge_cmd->add_option("--report", merge_reports_files, "report files")->required();
  merge_cmd->add_option("--tools", merge_tools, "tool names to include (default: all)");
  merge_cmd->add_option("--out", merge_out, "merged report output path");

  // score
  auto* score_cmd = app.add_subcommand("score", "precision/recall/F1 from verdicts and labels");
  std::string score_verdicts, score_truth, score_out;
  score_cmd->add_option("--verdicts", score_verdicts, "verdict JSON file")->required();
  score_cmd->add_option("--truth", score_truth, "ground-truth labels")->required();
  score_cmd->add_option("--out", score_out, "metrics JSON output path");

  // combos
  auto* combos_cmd = app.add_subcommand("combos", "enumerate tool combinations");
  std::string combos_tools;
  std::vector<std::size_t> combos_sizes;
  combos_cmd->add_option("--tools", combos_tools, "tool count or comma-separated names")
      ->required();
  combos_cmd->add_option("--combo-sizes", combos_sizes, "subset sizes (default 2 4 6 8)");

  // export-graphs
  auto* export_cmd = app.add_subcommand("export-graphs", "write dependency and pruning graphs");
  std::string export_corpus, export_out = "graphs";
  std::vector<std::string> export_reports;
  export_cmd->add_option("--corpus", export_corpus, "corpus directory")->required();
  export_cmd->add_option("--report", export_reports, "warning report file(s)");
  export_cmd->add_option("--out", export_out, "output directory")->default_val("graphs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify_cmd)) {
      return cmd_verify(corpus_dir, report_files, truth_file, timeout_s, jobs, no_prune,
                        solver_cmd, out_file);
    }
    if (app.got_subcommand(merge_cmd)) {
      return cmd_merge(merge_reports_files, merge_tools, merge_out);
    }
    if (app.got_subcommand(score_cmd)) {
      return cmd_score(score_verdicts, score_truth, score_out);
    }
    if (app.got_subcommand(combos_cmd)) {
      return cmd_combos(combos_tools, combos_sizes);
    }
    if (app.got_subcommand(export_cmd)) {
      return cmd_export_graphs(export_corpus, export_reports, export_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
