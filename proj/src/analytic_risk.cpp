#include "splitrisk/analytic_risk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {

// (1-p)^k evaluated through log1p so 1-p never loses digits; underflows to 0.
double pow1m(double p, double k) { return std::exp(k * std::log1p(-p)); }
double powp(double p, double k) { return std::pow(p, k); }

struct Moments {
  double mean = 0.0;
  bool has_mean = false;
  double variance = 0.0;
  bool has_variance = false;
  double mse = 0.0;
  bool has_mse = false;
  double mae = 0.0;
  bool has_mae = false;
};

double mean_L(double n, double p) { return p - (1.0 - pow1m(p, n + 1)) / (n + 1); }

double var_L(double n, double p) {
  const double q1 = pow1m(p, n + 1);
  return (n / (n + 2) - 2.0 * (n * p - (1.0 - p) / (n + 2)) * q1 - q1 * q1) /
         ((n + 1) * (n + 1));
}

double mse_L(double n, double p) {
  return 2.0 * (1.0 - (p * (n + 1) + 1.0) * pow1m(p, n + 1)) / ((n + 1) * (n + 2));
}

double mae_L(double n, double p) { return (1.0 - pow1m(p, n + 1)) / (n + 1); }

double mean_B(double n, double p) {
  return p + (pow1m(p, n + 1) - powp(p, n + 1)) / (2.0 * (n + 1));
}

double var_B(double n, double p) {
  const double d = pow1m(p, n + 1) - powp(p, n + 1);
  return (1.0 - (n + 2) * p * (1.0 - p) * (powp(p, n) + pow1m(p, n))) /
             (2.0 * (n + 1) * (n + 2)) -
         d * d / (4.0 * (n + 1) * (n + 1));
}

double mse_B(double n, double p) {
  return (1.0 - (n + 2) * (1.0 - p) * p * (powp(p, n) + pow1m(p, n))) /
         (2.0 * (n + 1) * (n + 2));
}

double mae_B(double n, double p) {
  return (1.0 - (powp(p, n + 1) + pow1m(p, n + 1)) +
          std::pow(std::abs(2.0 * p - 1.0), n + 1)) /
         (2.0 * (n + 1));
}

// Variance (= MSE) of the Rao-Blackwell estimator; logarithmic branch at n=3.
double var_RB(long ni, double p) {
  const auto n = static_cast<double>(ni);
  if (ni == 3)
    return (p * (1.0 - p) -
            2.0 * (powp(p, 3) * std::log(p) + pow1m(p, 3) * std::log1p(-p))) /
           9.0;
  return (((n - 1.0) / n) * (1.0 - (powp(p, n) + pow1m(p, n))) -
          2.0 * p * (1.0 - p)) /
         ((n - 3.0) * n);
}

double mean_SL(double n, double p) {
  return p - (1.0 - pow1m(p, n + 1)) / (n + 1) +
         powp(p, n) * (1.0 - n / (n + 1) * p);
}

double mean_SR(double n, double p) {
  return p + (1.0 - powp(p, n + 1)) / (n + 1) -
         (n * p + 1.0) * pow1m(p, n) / (n + 1);
}

double mean_SB(double n, double p) {
  return p + 0.5 * (powp(p, n) * (1.0 - p) - p * pow1m(p, n));
}

double mse_SL(double n, double p) {
  const double pn = powp(p, n), qn = pow1m(p, n);
  return (((n + 3) * n * (p - 1.0) * (p - 1.0) - 4.0 * p + 2.0) * pn +
          2.0 * p * (n * (p - 1.0) + p) * qn - 2.0 * qn + 2.0) /
         ((n + 1) * (n + 2));
}

// Second moment of the swept-left estimator; with the mean this yields an
// evaluation of the variance independent of the direct MSE expression.
double m2_SL(double n, double p) {
  const double pn = powp(p, n), qn = pow1m(p, n);
  return p * p - powp(p, n + 2) + pn +
         2.0 *
             (powp(p, n + 2) + n * (powp(p, n + 2) - p) -
              (p * p - 2.0 * p + 1.0) * qn - 2.0 * p + 1.0) /
             ((n + 1) * (n + 2));
}

double var_SL(double n, double p) {
  const double m = mean_SL(n, p);
  return m2_SL(n, p) - m * m;
}

double mse_SB(double n, double p) {
  const double pn = powp(p, n), qn = pow1m(p, n);
  const double q = 1.0 - p;
  return (3.0 * n * (n + 3) * (q * q * pn + p * p * qn) +
          2.0 * (3.0 * (qn + pn) + 1.0 -
                 2.0 * ((2.0 + p) * pow1m(p, n + 1) + (2.0 + q) * powp(p, n + 1)))) /
         (4.0 * (n + 1) * (n + 2));
}

// E[(SL + SR)^2]; pairs with mean_SB for an independent variance route.
double m2_sum_S(double n, double p) {
  const double pn = powp(p, n), qn = pow1m(p, n);
  return (4.0 - (qn + pn)) * p * p - pn * (1.0 + 2.0 * p) +
         2.0 * (1.0 - (powp(p, n + 2) + pow1m(p, n + 2))) / ((n + 1) * (n + 2)) +
         4.0 * pn;
}

double var_SB(double n, double p) {
  const double m = mean_SB(n, p);
  return 0.25 * m2_sum_S(n, p) - m * m;
}

// Exact E|K/n - p| for the binomial count estimator.
double mae_Y(long n, double p) {
  const double logp = std::log(p), logq = std::log1p(-p);
  double total = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double logpmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                          std::lgamma(n - k + 1.0) + k * logp + (n - k) * logq;
    total += std::abs(static_cast<double>(k) / n - p) * std::exp(logpmf);
  }
  return total;
}

Moments moments_for(Estimator kind, long ni, double p) {
  const auto n = static_cast<double>(ni);
  Moments m;
  switch (kind) {
    case Estimator::Y:
      m.mean = p;
      m.variance = m.mse = p * (1.0 - p) / n;
      m.mae = mae_Y(ni, p);
      m.has_mean = m.has_variance = m.has_mse = m.has_mae = true;
      break;
    case Estimator::L:
      m.mean = mean_L(n, p);
      m.variance = var_L(n, p);
      m.mse = mse_L(n, p);
      m.mae = mae_L(n, p);
      m.has_mean = m.has_variance = m.has_mse = m.has_mae = true;
      break;
    case Estimator::R:  // mirror of L under p <-> 1-p
      m.mean = 1.0 - mean_L(n, 1.0 - p);
      m.variance = var_L(n, 1.0 - p);
      m.mse = mse_L(n, 1.0 - p);
      m.mae = mae_L(n, 1.0 - p);
      m.has_mean = m.has_variance = m.has_mse = m.has_mae = true;
      break;
    case Estimator::B:
      m.mean = mean_B(n, p);
      m.variance = var_B(n, p);
      m.mse = mse_B(n, p);
      m.mae = mae_B(n, p);
      m.has_mean = m.has_variance = m.has_mse = m.has_mae = true;
      break;
    case Estimator::RB:
      m.mean = p;  // unbiased
      m.has_mean = true;
      if (ni >= 2) {
        m.variance = m.mse = var_RB(ni, p);
        m.has_variance = m.has_mse = true;
      }
      break;
    case Estimator::SL:
      m.mean = mean_SL(n, p);
      m.variance = var_SL(n, p);
      m.mse = mse_SL(n, p);
      m.has_mean = m.has_variance = m.has_mse = true;
      break;
    case Estimator::SR:  // mirror of SL
      m.mean = mean_SR(n, p);
      m.variance = var_SL(n, 1.0 - p);
      m.mse = mse_SL(n, 1.0 - p);
      m.has_mean = m.has_variance = m.has_mse = true;
      break;
    case Estimator::SB:
      m.mean = mean_SB(n, p);
      m.variance = var_SB(n, p);
      m.mse = mse_SB(n, p);
      m.has_mean = m.has_variance = m.has_mse = true;
      break;
    case Estimator::XScale:
      throw DomainError("risk: X_SCALE has no distribution-free closed form");
  }
  return m;
}

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::Mean: return "mean";
    case Measure::Bias: return "bias";
    case Measure::Variance: return "variance";
    case Measure::Mse: return "mse";
    case Measure::Rmse: return "rmse";
    case Measure::Mae: return "mae";
    case Measure::RmseApprox: return "rmse_approx";
  }
  return "?";
}

Measure parse_measure(std::string_view token) {
  std::string t(token);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "mean") return Measure::Mean;
  if (t == "bias") return Measure::Bias;
  if (t == "variance" || t == "var") return Measure::Variance;
  if (t == "mse") return Measure::Mse;
  if (t == "rmse") return Measure::Rmse;
  if (t == "mae") return Measure::Mae;
  if (t == "rmse_approx") return Measure::RmseApprox;
  throw DomainError("unknown measure '" + std::string(token) + "'");
}

std::optional<double> risk(const RiskQuery& query) {
  if (!(query.p > 0.0 && query.p < 1.0))
    throw DomainError("risk: p must be strictly inside (0,1)");
  if (query.n < 1) throw DomainError("risk: n must be >= 1");
  if (query.kind == Estimator::RB && query.n < 2 &&
      (query.measure == Measure::Variance || query.measure == Measure::Mse ||
       query.measure == Measure::Rmse))
    throw DomainError("risk: RB variance requires n >= 2");
  if (query.measure == Measure::RmseApprox)
    return rmse_approx(query.kind, query.n, query.p);

  const Moments m = moments_for(query.kind, query.n, query.p);
  switch (query.measure) {
    case Measure::Mean:
      if (m.has_mean) return m.mean;
      break;
    case Measure::Bias:
      if (m.has_mean) return m.mean - query.p;
      break;
    case Measure::Variance:
      if (m.has_variance) return m.variance;
      break;
    case Measure::Mse:
      if (m.has_mse) return m.mse;
      break;
    case Measure::Rmse:
      if (m.has_mse) return std::sqrt(m.mse);
      break;
    case Measure::Mae:
      if (m.has_mae) return m.mae;
      break;
    case Measure::RmseApprox:
      break;
  }
  return std::nullopt;
}

double rmse_approx(Estimator kind, long n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("rmse_approx: p must be in (0,1)");
  if (n < 1) throw DomainError("rmse_approx: n must be >= 1");
  const auto nd = static_cast<double>(n);
  switch (kind) {
    case Estimator::RB:
      return std::sqrt(1.0 - 2.0 * p * (1.0 - p)) / nd;
    case Estimator::L:
    case Estimator::R:
      return std::sqrt(2.0) / nd;
    case Estimator::B:
      return 1.0 / (std::sqrt(2.0) * nd);
    default:
      throw DomainError("rmse_approx: supported kinds are RB, L, R, B");
  }
}

double completeness_witness(double l, double r) {
  if (!(l >= 0.0 && l < r && r <= 1.0))
    throw DomainError("completeness_witness: need 0 <= L < R <= 1");
  if (l == 0.0 && r == 1.0)
    throw DomainError(
        "completeness_witness: L=0 with R=1 cannot arise from a sample");
  if (l == 0.0) return 2.0 - 1.0 / (1.0 - r);
  if (r == 1.0) return 2.0 - 1.0 / l;
  return 2.0;
}

}  // namespace splitrisk
