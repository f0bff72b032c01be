#include "splitrisk/figures.hpp"

#include <algorithm>
#include <sstream>

#include "splitrisk/analytic_risk.hpp"
#include "splitrisk/csv.hpp"
#include "splitrisk/errors.hpp"
#include "splitrisk/svg.hpp"
#include "splitrisk/tree.hpp"

namespace splitrisk {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

ExperimentConfig base_config(const FigureRequest& req) {
  ExperimentConfig cfg;
  cfg.replicates = profile_replicates(req.profile);
  cfg.seed = req.seed;
  cfg.workers = req.workers;
  return cfg;
}

// Closed-form RMSE of every estimator with an analytic MSE.
std::string rmse_table_csv() {
  std::ostringstream os;
  os << "kind,n,p,rmse\n";
  const std::vector<Estimator> kinds{Estimator::RB, Estimator::L, Estimator::R,
                                     Estimator::B,  Estimator::SL, Estimator::SR,
                                     Estimator::SB};
  for (Estimator kind : kinds)
    for (long n : {2L, 10L, 20L, 100L})
      for (double p : default_p_grid()) {
        const auto v = risk({kind, n, p, Measure::Rmse});
        if (!v) continue;
        os << estimator_name(kind) << ',' << format_long(n) << ','
           << format_double(p) << ',' << format_double(*v) << '\n';
      }
  return os.str();
}

std::vector<std::string> write_curves(const FigureRequest& req,
                                      const std::string& stem,
                                      const std::vector<RiskCurve>& curves) {
  std::vector<std::string> outputs;
  const std::string csv_path = join_path(req.out_dir, stem + ".csv");
  write_file(csv_path, risk_curves_csv(curves));
  outputs.push_back(csv_path);
  if (req.plot) {
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const std::string svg_path =
          join_path(req.out_dir, stem + "_" + std::to_string(i + 1) + ".svg");
      write_file(svg_path, risk_curve_svg(curves[i]));
      outputs.push_back(svg_path);
    }
  }
  return outputs;
}

std::vector<std::string> figure_two_estimator_suite(
    const FigureRequest& req, const std::string& stem,
    const std::vector<Dist>& dists) {
  std::vector<RiskCurve> curves;
  for (const Dist& d : dists) {
    ExperimentConfig cfg = base_config(req);
    cfg.distribution = d;
    cfg.transform = Transform::TrueCdf;
    cfg.kinds = {Estimator::B, Estimator::XScale};
    curves.push_back(simulate_risk(cfg));
  }
  return write_curves(req, stem, curves);
}

}  // namespace

Profile parse_profile(std::string_view token) {
  std::string t(token);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "paper") return Profile::Paper;
  if (t == "desk") return Profile::Desk;
  throw ConfigError("unknown profile '" + std::string(token) + "' (paper|desk)");
}

long profile_replicates(Profile profile) {
  return profile == Profile::Paper ? 100000 : 10000;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{
      "rmse",   "mae",  "beta",      "common",    "mixture",
      "parametric", "ecdf", "splitsets", "circle", "bitriangle"};
  return ids;
}

std::string risk_curves_csv(const std::vector<RiskCurve>& curves) {
  std::string out;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::string part = risk_curve_csv(curves[i]);
    if (i > 0) part.erase(0, part.find('\n') + 1);  // keep one header
    out += part;
  }
  return out;
}

std::vector<std::string> run_figure(const FigureRequest& req) {
  const std::string& id = req.id;
  if (id == "rmse") {
    const std::string path = join_path(req.out_dir, "figure_rmse.csv");
    write_file(path, rmse_table_csv());
    return {path};
  }
  if (id == "mae") {
    ExperimentConfig cfg = base_config(req);
    cfg.kinds = {Estimator::L, Estimator::R, Estimator::B, Estimator::RB};
    return write_curves(req, "figure_mae", {simulate_risk(cfg)});
  }
  if (id == "beta") {
    return figure_two_estimator_suite(
        req, "figure_beta",
        {Dist::beta(0.5, 0.5), Dist::beta(1, 3), Dist::beta(2, 2),
         Dist::beta(2, 10), Dist::beta(10, 2), Dist::beta(10, 10)});
  }
  if (id == "common") {
    return figure_two_estimator_suite(
        req, "figure_common",
        {Dist::cauchy(0, 1), Dist::normal(0, 1), Dist::laplace(0, 1),
         Dist::chi_squared(1), Dist::exponential(1), Dist::log_normal(0, 1)});
  }
  if (id == "mixture") {
    return figure_two_estimator_suite(
        req, "figure_mixture",
        {Dist::normal_mixture(0.5, 0, 1, 5, 1), Dist::normal_mixture(0.75, 0, 1, 5, 1),
         Dist::normal_mixture(0.5, 0, 1, 5, 2), Dist::normal_mixture(0.75, 0, 1, 5, 2)});
  }
  if (id == "parametric") {
    std::vector<RiskCurve> curves;
    ExperimentConfig cfg = base_config(req);
    cfg.distribution = Dist::normal(0, 1);
    cfg.kinds = {Estimator::B, Estimator::XScale};
    curves.push_back(simulate_risk(cfg));
    ExperimentConfig fit = base_config(req);
    fit.distribution = Dist::normal(0, 1);
    curves.push_back(simulate_parametric_transform(fit));
    return write_curves(req, "figure_parametric", curves);
  }
  if (id == "ecdf") {
    std::vector<RiskCurve> curves;
    ExperimentConfig cfg = base_config(req);
    cfg.distribution = Dist::normal(0, 1);
    cfg.kinds = {Estimator::B, Estimator::XScale};
    curves.push_back(simulate_risk(cfg));
    for (long m : {0L, 10L, 100L, 1000L}) {
      ExperimentConfig ec = base_config(req);
      ec.distribution = Dist::normal(0, 1);
      ec.unlabeled = m;
      curves.push_back(simulate_ecdf_transform(ec));
    }
    return write_curves(req, "figure_ecdf", curves);
  }
  if (id == "splitsets") {
    SplitSetsConfig cfg;
    cfg.replicates = profile_replicates(req.profile);
    cfg.seed = req.seed;
    cfg.workers = req.workers;
    const std::string path = join_path(req.out_dir, "figure_splitsets.csv");
    write_file(path, split_sets_csv(simulate_splitting_sets(cfg)));
    return {path};
  }
  if (id == "circle") {
    CircleConfig cfg;
    cfg.replicates = profile_replicates(req.profile);
    cfg.seed = req.seed;
    cfg.workers = req.workers;
    const std::string path = join_path(req.out_dir, "figure_circle.csv");
    write_file(path, circle_csv(simulate_circle(cfg)));
    return {path};
  }
  if (id == "bitriangle") {
    std::vector<RiskCurve> curves;
    ExperimentConfig cfg = base_config(req);
    cfg.kinds = {Estimator::B, Estimator::XScale, Estimator::L, Estimator::R};
    curves.push_back(
        simulate_mismatch(Dist::bi_triangle(0.5), Dist::uniform(0, 1), cfg));
    ExperimentConfig raw = base_config(req);
    raw.transform = Transform::None;
    raw.kinds = {Estimator::L, Estimator::R};
    curves.push_back(
        simulate_mismatch(Dist::bi_triangle(0.5), Dist::uniform(0, 1), raw));
    return write_curves(req, "figure_bitriangle", curves);
  }
  std::string valid;
  for (const auto& v : figure_ids()) valid += (valid.empty() ? "" : ", ") + v;
  throw ConfigError("unknown figure id '" + id + "' (valid: " + valid + ")");
}

}  // namespace splitrisk
