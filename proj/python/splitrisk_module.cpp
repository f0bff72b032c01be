// Python bindings for the splitrisk core: distributions, estimators,
// closed-form risk, and the simulation engines.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitrisk/analytic_risk.hpp"
#include "splitrisk/casestudy.hpp"
#include "splitrisk/csv.hpp"
#include "splitrisk/errors.hpp"
#include "splitrisk/figures.hpp"
#include "splitrisk/manifest.hpp"
#include "splitrisk/montecarlo.hpp"
#include "splitrisk/supervised.hpp"
#include "splitrisk/tree.hpp"

namespace py = pybind11;
using namespace splitrisk;

namespace {

ExperimentConfig make_config(const std::string& distribution,
                             const std::vector<long>& n,
                             const std::vector<double>& p,
                             const std::vector<std::string>& estimators,
                             const std::string& transform, long replicates,
                             long unlabeled, std::uint64_t seed, int workers,
                             const std::string& train_distribution) {
  ExperimentConfig cfg;
  cfg.distribution = Dist::parse(distribution);
  if (!train_distribution.empty())
    cfg.train_distribution = Dist::parse(train_distribution);
  if (!n.empty()) cfg.n_list = n;
  if (!p.empty()) cfg.p_grid = p;
  cfg.kinds.clear();
  for (const auto& e : estimators) cfg.kinds.push_back(parse_estimator(e));
  cfg.transform = parse_transform(transform);
  cfg.replicates = replicates;
  cfg.unlabeled = unlabeled;
  cfg.seed = seed;
  cfg.workers = workers;
  return cfg;
}

py::list curve_to_list(const RiskCurve& curve) {
  py::list rows;
  for (const RiskPoint& pt : curve.points) {
    py::dict row;
    row["distribution"] = curve.distribution;
    row["train"] = curve.train;
    row["transform"] = std::string(transform_name(curve.transform));
    row["kind"] = std::string(estimator_name(pt.kind));
    row["n"] = pt.n;
    row["p"] = pt.p;
    row["mae"] = pt.mae;
    row["mse"] = pt.mse;
    row["bias"] = pt.bias;
    row["se_mae"] = pt.se_mae;
    row["se_mse"] = pt.se_mse;
    row["se_bias"] = pt.se_bias;
    row["reps"] = pt.reps;
    row["retries"] = pt.retries;
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "split-point estimators, their closed-form risk, and Monte Carlo "
            "experiments";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ModelViolationError>(m, "ModelViolationError",
                                              PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_IOError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<Dist>(m, "Dist")
      .def_static("parse", &Dist::parse)
      .def("cdf", &Dist::cdf)
      .def("quantile", &Dist::quantile)
      .def("pdf", &Dist::pdf)
      .def("support_min", &Dist::support_min)
      .def("support_max", &Dist::support_max)
      .def("name", &Dist::name)
      .def("sample",
           [](const Dist& d, std::size_t n, std::uint64_t seed) {
             Rng rng(seed);
             return d.sample(rng, n);
           },
           py::arg("n"), py::arg("seed"))
      .def("__repr__", [](const Dist& d) { return "Dist(" + d.name() + ")"; });

  m.def("dist", &Dist::parse, py::arg("spec"),
        "parse a distribution such as 'beta(2,10)' or 'normal(0,1)'");

  m.def(
      "estimate",
      [](const std::string& kind, double l, double r, long k, long n) {
        SufficientStat stat;
        stat.l = l;
        stat.r = r;
        stat.k = k;
        stat.n = n;
        return estimate(parse_estimator(kind), stat);
      },
      py::arg("kind"), py::arg("l"), py::arg("r"), py::arg("k"), py::arg("n"),
      "quantile-scale point estimate from the sufficient statistic");

  m.def(
      "risk",
      [](const std::string& kind, long n, double p,
         const std::string& measure) -> py::object {
        const auto v = risk({parse_estimator(kind), n, p, parse_measure(measure)});
        if (!v) return py::none();
        return py::float_(*v);
      },
      py::arg("kind"), py::arg("n"), py::arg("p"), py::arg("measure"),
      "closed-form risk; None when only Monte Carlo applies");

  m.def(
      "rmse_approx",
      [](const std::string& kind, long n, double p) {
        return rmse_approx(parse_estimator(kind), n, p);
      },
      py::arg("kind"), py::arg("n"), py::arg("p"));

  m.def("completeness_witness", &completeness_witness, py::arg("l"), py::arg("r"));

  m.def(
      "simulate_risk",
      [](const std::string& distribution, const std::vector<long>& n,
         const std::vector<double>& p, const std::vector<std::string>& estimators,
         const std::string& transform, long replicates, std::uint64_t seed,
         int workers, const std::string& train_distribution) {
        return curve_to_list(simulate_risk(
            make_config(distribution, n, p, estimators, transform, replicates,
                        0, seed, workers, train_distribution)));
      },
      py::arg("distribution") = "uniform", py::arg("n") = std::vector<long>{10},
      py::arg("p") = std::vector<double>{0.5},
      py::arg("estimators") = std::vector<std::string>{"B"},
      py::arg("transform") = "true-cdf", py::arg("replicates") = 10000,
      py::arg("seed") = 20240501, py::arg("workers") = 1,
      py::arg("train_distribution") = "");

  m.def(
      "simulate_ecdf_transform",
      [](const std::string& distribution, const std::vector<long>& n,
         const std::vector<double>& p, long unlabeled, long replicates,
         std::uint64_t seed, int workers) {
        return curve_to_list(simulate_ecdf_transform(
            make_config(distribution, n, p, {"B"}, "ecdf", replicates, unlabeled,
                        seed, workers, "")));
      },
      py::arg("distribution") = "normal(0,1)", py::arg("n") = std::vector<long>{10},
      py::arg("p") = std::vector<double>{0.5}, py::arg("unlabeled") = 100,
      py::arg("replicates") = 10000, py::arg("seed") = 20240501,
      py::arg("workers") = 1);

  m.def(
      "simulate_parametric_transform",
      [](const std::string& distribution, const std::vector<long>& n,
         const std::vector<double>& p, long replicates, std::uint64_t seed,
         int workers) {
        return curve_to_list(simulate_parametric_transform(
            make_config(distribution, n, p, {"B"}, "parametric-normal",
                        replicates, 0, seed, workers, "")));
      },
      py::arg("distribution") = "normal(0,1)", py::arg("n") = std::vector<long>{10},
      py::arg("p") = std::vector<double>{0.5}, py::arg("replicates") = 10000,
      py::arg("seed") = 20240501, py::arg("workers") = 1);

  m.def(
      "simulate_mismatch",
      [](const std::string& train, const std::string& test,
         const std::vector<long>& n, const std::vector<double>& p,
         const std::vector<std::string>& estimators, long replicates,
         std::uint64_t seed, int workers) {
        return curve_to_list(simulate_mismatch(
            Dist::parse(train), Dist::parse(test),
            make_config(test, n, p, estimators, "true-cdf", replicates, 0, seed,
                        workers, "")));
      },
      py::arg("train"), py::arg("test") = "uniform",
      py::arg("n") = std::vector<long>{10}, py::arg("p") = std::vector<double>{0.5},
      py::arg("estimators") = std::vector<std::string>{"B", "X_SCALE"},
      py::arg("replicates") = 10000, py::arg("seed") = 20240501,
      py::arg("workers") = 1);

  m.def("splitting_set_label", &splitting_set_label, py::arg("order"), py::arg("u"));

  m.def(
      "fit_stump",
      [](const std::vector<double>& x, const std::vector<std::uint8_t>& y,
         const std::string& rule) -> py::object {
        SplitRule r = SplitRule::Midpoint;
        if (rule == "SL" || rule == "sweep_left") r = SplitRule::SweepLeft;
        else if (rule == "SR" || rule == "sweep_right") r = SplitRule::SweepRight;
        else if (rule == "SB" || rule == "midpoint") r = SplitRule::Midpoint;
        else throw DomainError("rule must be SL, SR or SB");
        const auto s = fit_stump(x, y, r);
        if (!s) return py::none();
        py::dict d;
        d["threshold"] = s->threshold;
        d["below_label"] = s->below_label;
        d["above_label"] = s->above_label;
        d["gap_low"] = s->gap_low;
        d["gap_high"] = s->gap_high;
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("rule") = "SB");

  m.def(
      "simulate_splitting_sets",
      [](const std::vector<int>& orders, const std::vector<long>& n,
         long replicates, std::uint64_t seed, int workers) {
        SplitSetsConfig cfg;
        cfg.orders = orders;
        cfg.n_list = n;
        cfg.replicates = replicates;
        cfg.seed = seed;
        cfg.workers = workers;
        py::list rows;
        for (const auto& r : simulate_splitting_sets(cfg)) {
          py::dict d;
          d["order"] = r.order;
          d["n"] = r.n;
          d["mae_raw"] = r.mae_raw;
          d["mae_quantile"] = r.mae_quantile;
          d["ratio"] = r.ratio;
          d["se_ratio"] = r.se_ratio;
          rows.append(d);
        }
        return rows;
      },
      py::arg("orders") = std::vector<int>{0, 1, 2, 3},
      py::arg("n") = std::vector<long>{10, 20, 100}, py::arg("replicates") = 10000,
      py::arg("seed") = 20240501, py::arg("workers") = 1);

  m.def(
      "simulate_circle",
      [](const std::vector<long>& n, long replicates, int grid, int max_depth,
         std::uint64_t seed, int workers) {
        CircleConfig cfg;
        cfg.n_list = n;
        cfg.replicates = replicates;
        cfg.grid = grid;
        cfg.max_depth = max_depth;
        cfg.seed = seed;
        cfg.workers = workers;
        py::list rows;
        for (const auto& r : simulate_circle(cfg)) {
          py::dict d;
          d["n"] = r.n;
          d["mae_raw"] = r.mae_raw;
          d["mae_quantile"] = r.mae_quantile;
          d["ratio"] = r.ratio;
          d["se_ratio"] = r.se_ratio;
          rows.append(d);
        }
        return rows;
      },
      py::arg("n") = std::vector<long>{10, 100}, py::arg("replicates") = 1000,
      py::arg("grid") = 400, py::arg("max_depth") = 8,
      py::arg("seed") = 20240501, py::arg("workers") = 1);

  m.def(
      "load_labeled_csv",
      [](const std::string& path, const std::string& value_column,
         const std::string& label_column, const std::string& positive) {
        const auto d = load_labeled_csv(path, value_column, label_column, positive);
        py::dict out;
        out["value"] = d.value;
        out["label"] = std::vector<int>(d.label.begin(), d.label.end());
        out["dropped_rows"] = d.dropped_rows;
        return out;
      },
      py::arg("path"), py::arg("value_column"), py::arg("label_column"),
      py::arg("positive"));

  m.def(
      "resample_experiment",
      [](const std::vector<double>& value, const std::vector<int>& label,
         const std::vector<long>& n, long replicates, std::uint64_t seed,
         int workers) {
        LabeledDataset data;
        data.value = value;
        data.label.assign(label.begin(), label.end());
        py::list rows;
        for (const auto& r : resample_experiment(data, n, replicates, seed, workers)) {
          py::dict d;
          d["n"] = r.n;
          d["split_x"] = r.split_x;
          d["split_u"] = r.split_u;
          d["split_l"] = r.split_l;
          d["split_r"] = r.split_r;
          d["err_x"] = r.err_x;
          d["err_u"] = r.err_u;
          d["err_l"] = r.err_l;
          d["err_r"] = r.err_r;
          d["retries"] = r.retries;
          rows.append(d);
        }
        return rows;
      },
      py::arg("value"), py::arg("label"), py::arg("n") = std::vector<long>{10},
      py::arg("replicates") = 1000, py::arg("seed") = 20240501,
      py::arg("workers") = 1);

  m.attr("__version__") = kVersion;
}
