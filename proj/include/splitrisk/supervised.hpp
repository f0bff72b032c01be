#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "splitrisk/distributions.hpp"
#include "splitrisk/rng.hpp"

namespace splitrisk {

// Point estimators of the cutoff quantile p. The first eight operate on the
// quantile-scale sufficient statistic; XScale is the raw-scale midpoint mapped
// through the predictor's cdf.
enum class Estimator : std::uint8_t { Y, L, R, B, RB, SL, SR, SB, XScale };

std::string_view estimator_name(Estimator kind);
Estimator parse_estimator(std::string_view token);

// Minimal sufficient statistic (L, R) plus the class count K and sample size.
// On the quantile scale l,r live in [0,1] with endpoint conventions l=0 when
// k=0 and r=1 when k=n. On a raw scale the endpoints are the support bounds
// of the attached distribution (possibly +-infinity).
struct SufficientStat {
  double l = 0.0;
  double r = 1.0;
  long k = 0;
  long n = 0;
  bool quantile_scale = true;
};

struct SupervisedSample {
  std::vector<double> x;
  std::vector<std::uint8_t> y;           // y[i] = 1 iff x[i] left of the cutoff
  std::optional<Dist> dist;              // engaged => x is on the raw scale
};

// Draws x i.i.d. from dist and labels y = 1 iff cdf(x) < p. Deterministic for
// a fixed generator state.
SupervisedSample generate_sample(const Dist& dist, double p, long n, Rng& rng);

// Applies the distribution's cdf to every value, moving the sample to the
// quantile scale.
SupervisedSample to_quantile_scale(const SupervisedSample& sample);

// Extracts (L, R, K, n); throws ModelViolationError when the labels are not
// consistent with a single threshold.
SufficientStat sufficient_stat(const SupervisedSample& sample);

// Quantile-scale estimators (Y..SB) require a quantile-scale stat; XScale
// requires a raw-scale stat plus the cdf to map the midpoint through.
double estimate(Estimator kind, const SufficientStat& stat,
                const Dist* cdf_dist = nullptr);

}  // namespace splitrisk
