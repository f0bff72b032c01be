#pragma once

#include <optional>
#include <string_view>

#include "splitrisk/supervised.hpp"

namespace splitrisk {

enum class Measure : std::uint8_t { Mean, Bias, Variance, Mse, Rmse, Mae, RmseApprox };

std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view token);

struct RiskQuery {
  Estimator kind = Estimator::B;
  long n = 1;
  double p = 0.5;
  Measure measure = Measure::Mae;
};

// Closed-form risk of an estimator of the cutoff quantile. Returns nullopt
// when no analytic expression exists (MAE of RB and of the swept estimators,
// which the reference results obtain by Monte Carlo). Invalid queries throw
// DomainError.
std::optional<double> risk(const RiskQuery& query);

// Large-n 1/n-consistency approximations; kinds RB, L, R, B only.
double rmse_approx(Estimator kind, long n, double p);

// Non-constant unbiased estimator of zero witnessing that (L,R) is not a
// complete statistic in the n=2 regime.
double completeness_witness(double l, double r);

}  // namespace splitrisk
