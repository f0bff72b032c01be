// splitrisk: split-point estimators for supervised threshold data, their
// closed-form risk, and the Monte Carlo experiments around them.
//
// Subcommands: risk, simulate, figure, splitsets, circle, casestudy.
// Exit codes: 0 success, 2 usage/config error, 3 data error, 4 numeric failure.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "splitrisk/analytic_risk.hpp"
#include "splitrisk/casestudy.hpp"
#include "splitrisk/config.hpp"
#include "splitrisk/csv.hpp"
#include "splitrisk/errors.hpp"
#include "splitrisk/figures.hpp"
#include "splitrisk/manifest.hpp"
#include "splitrisk/montecarlo.hpp"
#include "splitrisk/svg.hpp"
#include "splitrisk/tree.hpp"

namespace {

using namespace splitrisk;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPLITRISK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("SPLITRISK_SEED is not a valid integer");
    }
  }
  return 20240501;
}

// Replicate counts accept scientific notation ("1e5").
long parse_count(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e12)
      throw std::invalid_argument(text);
    return static_cast<long>(v);
  } catch (const std::exception&) {
    throw ConfigError("bad replicate count '" + text + "'");
  }
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_file(out_path, content);
}

void finish_manifest(RunManifest& manifest, const std::string& manifest_path,
                     const std::vector<std::string>& outputs,
                     const std::string& default_path) {
  for (const auto& o : outputs) manifest.add_output(o);
  manifest.mark_finished();
  std::string path = manifest_path;
  if (path.empty()) path = default_path;
  if (!path.empty()) manifest.write(path);
}

struct RiskArgs {
  std::vector<std::string> kinds{"B"};
  std::string n_list{"10"};
  std::string p_list{"0.5"};
  std::vector<std::string> measures{"mae"};
  std::string out;
};

std::string risk_table(const RiskArgs& args) {
  std::vector<Estimator> kinds;
  for (const auto& k : args.kinds) kinds.push_back(parse_estimator(k));
  std::vector<Measure> measures;
  for (const auto& m : args.measures) measures.push_back(parse_measure(m));
  const auto ns = parse_long_list(args.n_list);
  const auto ps = parse_double_list(args.p_list);

  std::ostringstream os;
  os << "kind,n,p,measure,value,flag\n";
  for (Estimator kind : kinds)
    for (long n : ns)
      for (double p : ps)
        for (Measure measure : measures) {
          const auto value = risk({kind, n, p, measure});
          os << estimator_name(kind) << ',' << format_long(n) << ','
             << format_double(p) << ',' << measure_name(measure) << ',';
          if (value)
            os << format_double(*value) << ",\n";
          else
            os << ",not_analytic\n";
        }
  return os.str();
}

int dispatch(int argc, char** argv) {
  CLI::App app{"split-point estimator risk tables and simulations"};
  app.require_subcommand(1);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path,
                 "manifest path (default: alongside the output)");

  // risk ------------------------------------------------------------------
  auto* risk_cmd = app.add_subcommand("risk", "closed-form risk table");
  RiskArgs risk_args;
  risk_cmd->add_option("--kind", risk_args.kinds, "estimators (Y,L,R,B,RB,SL,SR,SB)");
  risk_cmd->add_option("--n", risk_args.n_list, "sample sizes, e.g. 2,10,20,100");
  risk_cmd->add_option("--p", risk_args.p_list, "p values, e.g. 0.5 or 0.05:0.95:0.05");
  risk_cmd->add_option("--measure", risk_args.measures,
                       "mean,bias,variance,mse,rmse,mae,rmse_approx");
  risk_cmd->add_option("--out", risk_args.out, "output CSV ('-' = stdout)");

  // simulate ---------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo risk curves from a config file");
  std::string sim_config;
  std::string sim_out{"riskcurve.csv"};
  bool sim_plot = false;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::string> sim_reps;
  std::optional<int> sim_workers;
  sim_cmd->add_option("--config", sim_config, "key = value config file")->required();
  sim_cmd->add_option("--out", sim_out, "output CSV");
  sim_cmd->add_option("--seed", sim_seed, "override config seed");
  sim_cmd->add_option("--reps", sim_reps, "override replicate count");
  sim_cmd->add_option("--workers", sim_workers, "override worker count");
  sim_cmd->add_flag("--plot", sim_plot, "also write an SVG view of the CSV");

  // figure -----------------------------------------------------------------
  auto* fig_cmd = app.add_subcommand("figure", "reproduce a preconfigured experiment");
  FigureRequest fig;
  std::string fig_profile{"desk"};
  fig_cmd->add_option("id", fig.id, "one of: rmse, mae, beta, common, mixture, parametric, ecdf, splitsets, circle, bitriangle")
      ->required();
  fig_cmd->add_option("--profile", fig_profile, "paper (1e5 reps) or desk (1e4)");
  fig_cmd->add_option("--out-dir", fig.out_dir, "output directory");
  fig_cmd->add_option("--seed", fig.seed, "master seed");
  fig_cmd->add_option("--workers", fig.workers, "worker threads");
  fig_cmd->add_flag("--plot", fig.plot, "also write SVG views");

  // splitsets ----------------------------------------------------------------
  auto* ss_cmd = app.add_subcommand("splitsets", "multi-split 1-d experiment");
  SplitSetsConfig ss;
  std::string ss_orders{"0,1,2,3"}, ss_n{"10,20,100"}, ss_out{"splitsets.csv"};
  ss_cmd->add_option("--orders", ss_orders, "splitting-set orders");
  ss_cmd->add_option("--n", ss_n, "sample sizes");
  std::string ss_reps{"100000"};
  ss_cmd->add_option("--reps", ss_reps, "replicates per cell");
  ss_cmd->add_option("--seed", ss.seed, "master seed");
  ss_cmd->add_option("--workers", ss.workers, "worker threads");
  ss_cmd->add_option("--out", ss_out, "output CSV");

  // circle -------------------------------------------------------------------
  auto* circ_cmd = app.add_subcommand("circle", "2-d circle experiment");
  CircleConfig circ;
  std::string circ_n{"10,20,50,100,250,500,750,1000"}, circ_out{"circle.csv"};
  circ_cmd->add_option("--n", circ_n, "sample sizes");
  std::string circ_reps{"100000"};
  circ_cmd->add_option("--reps", circ_reps, "replicates per cell");
  circ_cmd->add_option("--grid", circ.grid, "evaluation grid side");
  circ_cmd->add_option("--depth", circ.max_depth, "tree depth budget");
  circ_cmd->add_option("--seed", circ.seed, "master seed");
  circ_cmd->add_option("--workers", circ.workers, "worker threads");
  circ_cmd->add_option("--out", circ_out, "output CSV");

  // casestudy ------------------------------------------------------------------
  auto* case_cmd = app.add_subcommand("casestudy", "resampling protocol on a labeled CSV");
  std::string case_data, case_value, case_label, case_positive;
  std::string case_n{"10,20,100,1000"}, case_out{"casestudy.csv"};
  std::string case_reps{"100000"};
  std::uint64_t case_seed = 0;
  int case_workers = 1;
  case_cmd->add_option("--data", case_data, "labeled CSV file")->required();
  case_cmd->add_option("--value", case_value, "value column name")->required();
  case_cmd->add_option("--label", case_label, "label column name")->required();
  case_cmd->add_option("--positive", case_positive, "positive label string")->required();
  case_cmd->add_option("--n", case_n, "subsample sizes");
  case_cmd->add_option("--reps", case_reps, "replicates per n");
  case_cmd->add_option("--seed", case_seed, "master seed");
  case_cmd->add_option("--workers", case_workers, "worker threads");
  case_cmd->add_option("--out", case_out, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit with 2
  }

  RunManifest manifest;
  manifest.mark_started();

  if (*risk_cmd) {
    manifest.subcommand = "risk";
    manifest.config = {{"kinds", ""}, {"n", risk_args.n_list}, {"p", risk_args.p_list}};
    for (const auto& k : risk_args.kinds)
      manifest.config["kinds"] += (manifest.config["kinds"].empty() ? "" : ",") + k;
    for (const auto& m : risk_args.measures)
      manifest.config["measures"] += (manifest.config["measures"].empty() ? "" : ",") + m;
    const std::string table = risk_table(risk_args);
    emit(table, risk_args.out);
    std::vector<std::string> outputs;
    if (!risk_args.out.empty() && risk_args.out != "-") outputs.push_back(risk_args.out);
    finish_manifest(manifest, manifest_path, outputs,
                    outputs.empty() ? "" : risk_args.out + ".manifest.json");
    return 0;
  }

  if (*sim_cmd) {
    const KeyValueFile kv = KeyValueFile::parse_file(sim_config);
    SimulationSpec spec = simulation_from_config(kv);
    ExperimentConfig& cfg = spec.config;
    if (sim_seed)
      cfg.seed = *sim_seed;  // flag > config file > env > builtin default
    else if (!kv.has("seed"))
      cfg.seed = default_seed();
    if (sim_reps) cfg.replicates = parse_count(*sim_reps);
    if (sim_workers) cfg.workers = *sim_workers;

    std::vector<RiskCurve> curves;
    if (spec.unlabeled_is_ratio) {
      // one run per n so that m = round(ratio * n)
      for (long n : cfg.n_list) {
        ExperimentConfig one = cfg;
        one.n_list = {n};
        one.unlabeled = std::lround(spec.unlabeled_ratio * static_cast<double>(n));
        curves.push_back(simulate_risk(one));
      }
    } else {
      curves.push_back(simulate_risk(cfg));
    }
    write_file(sim_out, risk_curves_csv(curves));
    std::vector<std::string> outputs{sim_out};
    if (sim_plot) {
      for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string svg = sim_out + "." + std::to_string(i + 1) + ".svg";
        write_file(svg, risk_curve_svg(curves[i]));
        outputs.push_back(svg);
      }
    }
    manifest.subcommand = "simulate";
    manifest.config = kv.values();
    manifest.seed = cfg.seed;
    manifest.workers = cfg.workers;
    finish_manifest(manifest, manifest_path, outputs, sim_out + ".manifest.json");
    return 0;
  }

  if (*fig_cmd) {
    fig.profile = parse_profile(fig_profile);
    if (!fig_cmd->count("--seed")) fig.seed = default_seed();
    const auto outputs = run_figure(fig);
    manifest.subcommand = "figure";
    manifest.config = {{"id", fig.id},
                       {"profile", fig_profile},
                       {"replicates", format_long(profile_replicates(fig.profile))}};
    manifest.seed = fig.seed;
    manifest.workers = fig.workers;
    finish_manifest(manifest, manifest_path, outputs,
                    outputs.empty() ? "" : outputs.front() + ".manifest.json");
    return 0;
  }

  if (*ss_cmd) {
    std::vector<int> orders;
    for (long v : parse_long_list(ss_orders)) orders.push_back(static_cast<int>(v));
    ss.orders = orders;
    ss.n_list = parse_long_list(ss_n);
    ss.replicates = parse_count(ss_reps);
    if (!ss_cmd->count("--seed")) ss.seed = default_seed();
    write_file(ss_out, split_sets_csv(simulate_splitting_sets(ss)));
    manifest.subcommand = "splitsets";
    manifest.config = {{"orders", ss_orders}, {"n", ss_n},
                       {"reps", format_long(ss.replicates)}};
    manifest.seed = ss.seed;
    manifest.workers = ss.workers;
    finish_manifest(manifest, manifest_path, {ss_out}, ss_out + ".manifest.json");
    return 0;
  }

  if (*circ_cmd) {
    circ.n_list = parse_long_list(circ_n);
    circ.replicates = parse_count(circ_reps);
    if (!circ_cmd->count("--seed")) circ.seed = default_seed();
    write_file(circ_out, circle_csv(simulate_circle(circ)));
    manifest.subcommand = "circle";
    manifest.config = {{"n", circ_n},
                       {"reps", format_long(circ.replicates)},
                       {"grid", format_long(circ.grid)},
                       {"depth", format_long(circ.max_depth)}};
    manifest.seed = circ.seed;
    manifest.workers = circ.workers;
    finish_manifest(manifest, manifest_path, {circ_out}, circ_out + ".manifest.json");
    return 0;
  }

  if (*case_cmd) {
    if (!case_cmd->count("--seed")) case_seed = default_seed();
    const LabeledDataset data =
        load_labeled_csv(case_data, case_value, case_label, case_positive);
    const auto ns = parse_long_list(case_n);
    const auto rows =
        resample_experiment(data, ns, parse_count(case_reps), case_seed, case_workers);
    write_file(case_out, case_study_csv(rows));
    manifest.subcommand = "casestudy";
    manifest.config = {{"data", case_data},   {"value", case_value},
                       {"label", case_label}, {"positive", case_positive},
                       {"n", case_n},         {"reps", case_reps},
                       {"dropped_rows", format_long(data.dropped_rows)}};
    manifest.seed = case_seed;
    manifest.workers = case_workers;
    finish_manifest(manifest, manifest_path, {case_out}, case_out + ".manifest.json");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const ModelViolationError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
