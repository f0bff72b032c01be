#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitrisk/distributions.hpp"
#include "splitrisk/supervised.hpp"

namespace splitrisk {

// How the training values are mapped before the split estimate is formed.
//   None             raw X scale (the X_SCALE kind always behaves this way)
//   TrueCdf          exact quantile transform through the known cdf
//   ParametricNormal cdf with mu, sigma fitted per replicate on the labeled x
//   Ecdf             step ECDF built on labeled plus unlabeled observations
enum class Transform : std::uint8_t { None, TrueCdf, ParametricNormal, Ecdf };

std::string_view transform_name(Transform t);
Transform parse_transform(std::string_view token);

std::vector<double> default_p_grid();  // multiples of 0.01 inside (0,1)

struct ExperimentConfig {
  Dist distribution = Dist::uniform(0.0, 1.0);  // test distribution
  std::optional<Dist> train_distribution;       // mismatch experiments only
  std::vector<long> n_list{2, 10, 20, 100};
  std::vector<double> p_grid = default_p_grid();
  std::vector<Estimator> kinds{Estimator::B};
  Transform transform = Transform::TrueCdf;
  long replicates = 100000;
  long unlabeled = 0;  // m for the Ecdf transform
  std::uint64_t seed = 20240501;
  int workers = 1;
};

struct RiskPoint {
  long n = 0;
  double p = 0.0;
  Estimator kind = Estimator::B;
  double mae = 0.0;
  double mse = 0.0;
  double bias = 0.0;
  double se_mae = 0.0;
  double se_mse = 0.0;
  double se_bias = 0.0;
  long reps = 0;
  long retries = 0;  // degenerate-fit redraws (parametric transform only)
};

struct RiskCurve {
  std::string distribution;  // test distribution
  std::string train;         // empty unless a mismatch experiment
  Transform transform = Transform::TrueCdf;
  long unlabeled = 0;
  long replicates = 0;
  std::uint64_t seed = 0;
  std::vector<RiskPoint> points;  // ordered by (n, p, kind)
};

// Core risk simulation: per replicate draws a supervised sample, forms each
// configured estimate, and measures the signed error on the test quantile
// scale. Replicate r of grid cell g uses Rng(mix_seed(seed, g, r)), so the
// output is bit-identical for any worker count.
RiskCurve simulate_risk(const ExperimentConfig& config);

// Semi-supervised quantile transform: n labeled + m unlabeled pooled into an
// ECDF; the midpoint estimate is deployed as the pooled order statistic at
// rank ceil(N*phat) and its true quantile is compared against p.
RiskCurve simulate_ecdf_transform(const ExperimentConfig& config);

// Normal cdf with per-replicate fitted mu, sigma; the fitted-scale midpoint is
// mapped back to an x threshold and judged on the true quantile scale.
RiskCurve simulate_parametric_transform(const ExperimentConfig& config);

// Train/test distribution mismatch. Labels cut at quantile(test, p) in raw X
// space. A BiTriangle or TwoPoint train family is re-tied to each grid p.
RiskCurve simulate_mismatch(const Dist& train, const Dist& test,
                            const ExperimentConfig& config);

}  // namespace splitrisk
