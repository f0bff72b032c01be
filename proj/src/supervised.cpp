#include "splitrisk/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view estimator_name(Estimator kind) {
  switch (kind) {
    case Estimator::Y: return "Y";
    case Estimator::L: return "L";
    case Estimator::R: return "R";
    case Estimator::B: return "B";
    case Estimator::RB: return "RB";
    case Estimator::SL: return "SL";
    case Estimator::SR: return "SR";
    case Estimator::SB: return "SB";
    case Estimator::XScale: return "X_SCALE";
  }
  return "?";
}

Estimator parse_estimator(std::string_view token) {
  std::string t(token);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (t == "Y") return Estimator::Y;
  if (t == "L") return Estimator::L;
  if (t == "R") return Estimator::R;
  if (t == "B") return Estimator::B;
  if (t == "RB") return Estimator::RB;
  if (t == "SL") return Estimator::SL;
  if (t == "SR") return Estimator::SR;
  if (t == "SB") return Estimator::SB;
  if (t == "X_SCALE" || t == "X") return Estimator::XScale;
  throw DomainError("unknown estimator '" + std::string(token) + "'");
}

SupervisedSample generate_sample(const Dist& dist, double p, long n, Rng& rng) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("generate_sample: p must be in (0,1)");
  if (n < 1) throw DomainError("generate_sample: n must be >= 1");
  SupervisedSample s;
  s.dist = dist;
  s.x.resize(static_cast<std::size_t>(n));
  s.y.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double u = rng.next_double();
    s.x[static_cast<std::size_t>(i)] = dist.quantile(u);
    s.y[static_cast<std::size_t>(i)] = u < p ? 1 : 0;
  }
  return s;
}

SupervisedSample to_quantile_scale(const SupervisedSample& sample) {
  if (!sample.dist) return sample;
  SupervisedSample out;
  out.y = sample.y;
  out.x.reserve(sample.x.size());
  for (double v : sample.x) out.x.push_back(sample.dist->cdf(v));
  return out;
}

SufficientStat sufficient_stat(const SupervisedSample& sample) {
  if (sample.x.empty()) throw DomainError("sufficient_stat: empty sample");
  if (sample.x.size() != sample.y.size())
    throw DomainError("sufficient_stat: |x| != |y|");
  const bool quantile = !sample.dist.has_value();
  const double lo = quantile ? 0.0 : sample.dist->support_min();
  const double hi = quantile ? 1.0 : sample.dist->support_max();

  double l = -kInf, r = kInf;
  long k = 0;
  for (std::size_t i = 0; i < sample.x.size(); ++i) {
    const double v = sample.x[i];
    if (quantile && !(v >= 0.0 && v <= 1.0))
      throw DomainError("sufficient_stat: quantile-scale value outside [0,1]");
    if (sample.y[i]) {
      ++k;
      l = std::max(l, v);
    } else {
      r = std::min(r, v);
    }
  }
  const long n = static_cast<long>(sample.x.size());
  if (k > 0 && k < n && !(l < r))
    throw ModelViolationError(
        "labels are not consistent with a single threshold (class overlap)");
  SufficientStat stat;
  stat.k = k;
  stat.n = n;
  stat.quantile_scale = quantile;
  stat.l = k == 0 ? lo : l;
  stat.r = k == n ? hi : r;
  return stat;
}

double estimate(Estimator kind, const SufficientStat& stat, const Dist* cdf_dist) {
  if (stat.n < 1) throw DomainError("estimate: stat.n must be >= 1");
  if (kind == Estimator::XScale) {
    if (cdf_dist == nullptr)
      throw DomainError("estimate: X_SCALE requires a cdf");
    if (stat.quantile_scale)
      throw DomainError("estimate: X_SCALE requires a raw-scale stat");
    // Midpoint of an interval with an infinite endpoint degenerates to that
    // endpoint; cdf maps +-infinity to 1/0.
    double mid;
    if (std::isinf(stat.l) && std::isinf(stat.r))
      throw DomainError("estimate: X_SCALE stat has no finite endpoint");
    if (std::isinf(stat.l))
      mid = stat.l;
    else if (std::isinf(stat.r))
      mid = stat.r;
    else
      mid = 0.5 * (stat.l + stat.r);
    return cdf_dist->cdf(mid);
  }

  if (!stat.quantile_scale)
    throw DomainError("estimate: quantile-scale estimator needs a quantile-scale stat");
  const double l = stat.l, r = stat.r;
  const auto n = static_cast<double>(stat.n);
  switch (kind) {
    case Estimator::Y:
      return static_cast<double>(stat.k) / n;
    case Estimator::L:
      return l;
    case Estimator::R:
      return r;
    case Estimator::B:
      return 0.5 * (l + r);
    case Estimator::RB:
      if (l <= 0.0) return 0.0;
      if (r >= 1.0) return 1.0;
      return 1.0 / n + ((n - 2.0) / n) * l / (l + 1.0 - r);
    case Estimator::SL:
      return r >= 1.0 ? 1.0 : l;
    case Estimator::SR:
      return l <= 0.0 ? 0.0 : r;
    case Estimator::SB:
      if (r >= 1.0) return 1.0;
      if (l <= 0.0) return 0.0;
      return 0.5 * (l + r);
    default:
      break;
  }
  throw DomainError("estimate: unknown estimator kind");
}

}  // namespace splitrisk
