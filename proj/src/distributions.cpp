#include "splitrisk/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

// Acklam's rational approximation for the standard normal quantile,
// refined with one Halley step against the erfc-based cdf.
double acklam_ppf(double u) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double ulow = 0.02425;
  double z;
  if (u < ulow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - ulow) {
    const double q = u - 0.5;
    const double r = q * q;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(z) - u;
  const double f = normal_pdf(z);
  if (f > 0.0) z -= e / (f + 0.5 * e * (-z));  // Halley
  return z;
}

const boost::math::beta_distribution<double>& beta_dist(double a, double b) {
  thread_local boost::math::beta_distribution<double> cached(1.0, 1.0);
  if (cached.alpha() != a || cached.beta() != b)
    cached = boost::math::beta_distribution<double>(a, b);
  return cached;
}

}  // namespace

double normal_cdf(double z) {
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-z * M_SQRT1_2);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double normal_quantile(double u) {
  require(u > 0.0 && u < 1.0, "normal_quantile: u must be in (0,1)");
  return acklam_ppf(u);
}

Dist Dist::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform: need a < b");
  return Dist(Family::Uniform, {a, b});
}
Dist Dist::beta(double alpha, double beta) {
  require(alpha > 0 && beta > 0, "beta: need alpha > 0 and beta > 0");
  return Dist(Family::Beta, {alpha, beta});
}
Dist Dist::normal(double mu, double sigma) {
  require(std::isfinite(mu) && sigma > 0, "normal: need sigma > 0");
  return Dist(Family::Normal, {mu, sigma});
}
Dist Dist::cauchy(double loc, double scale) {
  require(std::isfinite(loc) && scale > 0, "cauchy: need scale > 0");
  return Dist(Family::Cauchy, {loc, scale});
}
Dist Dist::laplace(double loc, double scale) {
  require(std::isfinite(loc) && scale > 0, "laplace: need scale > 0");
  return Dist(Family::Laplace, {loc, scale});
}
Dist Dist::chi_squared(double df) {
  require(df > 0, "chi_squared: need df > 0");
  return Dist(Family::ChiSquared, {df});
}
Dist Dist::exponential(double rate) {
  require(rate > 0, "exponential: need rate > 0");
  return Dist(Family::Exponential, {rate});
}
Dist Dist::log_normal(double mu, double sigma) {
  require(std::isfinite(mu) && sigma > 0, "log_normal: need sigma > 0");
  return Dist(Family::LogNormal, {mu, sigma});
}
Dist Dist::normal_mixture(double w, double mu1, double sigma1, double mu2,
                          double sigma2) {
  require(w > 0 && w < 1, "normal_mixture: need 0 < w < 1");
  require(sigma1 > 0 && sigma2 > 0, "normal_mixture: need positive sigmas");
  return Dist(Family::NormalMixture, {w, mu1, sigma1, mu2, sigma2});
}
Dist Dist::bi_triangle(double p) {
  require(p > 0 && p < 1, "bi_triangle: need 0 < p < 1");
  return Dist(Family::BiTriangle, {p});
}
Dist Dist::two_point(double p0) {
  require(p0 > 0 && p0 < 1, "two_point: need 0 < p0 < 1");
  return Dist(Family::TwoPoint, {p0});
}

double Dist::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  switch (family_) {
    case Family::Uniform: {
      const double a = par_[0], b = par_[1];
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
    }
    case Family::Beta: {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return boost::math::cdf(beta_dist(par_[0], par_[1]), x);
    }
    case Family::Normal:
      return normal_cdf((x - par_[0]) / par_[1]);
    case Family::Cauchy:
      return 0.5 + std::atan((x - par_[0]) / par_[1]) / M_PI;
    case Family::Laplace: {
      const double z = (x - par_[0]) / par_[1];
      return z < 0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case Family::ChiSquared: {
      if (x <= 0.0) return 0.0;
      return boost::math::cdf(boost::math::chi_squared_distribution<double>(par_[0]), x);
    }
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-par_[0] * x);
    case Family::LogNormal:
      return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - par_[0]) / par_[1]);
    case Family::NormalMixture:
      return par_[0] * normal_cdf((x - par_[1]) / par_[2]) +
             (1.0 - par_[0]) * normal_cdf((x - par_[3]) / par_[4]);
    case Family::BiTriangle: {
      // F(x) = 2x - x^2/p on [0,p], p + (x-p)^2/(1-p) on [p,1].
      const double p = par_[0];
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      if (x < p) return x * (2.0 - x / p);
      return p + (x - p) * (x - p) / (1.0 - p);
    }
    case Family::TwoPoint:
      if (x < 0.0) return 0.0;
      if (x < 1.0) return par_[0];
      return 1.0;
  }
  throw NumericError("cdf: unreachable family");
}

double Dist::quantile(double u) const {
  require(u > 0.0 && u < 1.0, "quantile: u must be in (0,1)");
  switch (family_) {
    case Family::Uniform:
      return par_[0] + u * (par_[1] - par_[0]);
    case Family::Beta:
      return boost::math::quantile(beta_dist(par_[0], par_[1]), u);
    case Family::Normal:
      return par_[0] + par_[1] * normal_quantile(u);
    case Family::Cauchy:
      return par_[0] + par_[1] * std::tan(M_PI * (u - 0.5));
    case Family::Laplace:
      return u < 0.5 ? par_[0] + par_[1] * std::log(2.0 * u)
                     : par_[0] - par_[1] * std::log(2.0 * (1.0 - u));
    case Family::ChiSquared:
      return boost::math::quantile(
          boost::math::chi_squared_distribution<double>(par_[0]), u);
    case Family::Exponential:
      return -std::log1p(-u) / par_[0];
    case Family::LogNormal:
      return std::exp(par_[0] + par_[1] * normal_quantile(u));
    case Family::NormalMixture: {
      // No closed form; bisect the cdf on a bracket from component quantiles.
      const double z = normal_quantile(u);
      double lo = std::min(par_[1] + par_[2] * z, par_[3] + par_[4] * z);
      double hi = std::max(par_[1] + par_[2] * z, par_[3] + par_[4] * z);
      if (cdf(lo) > u) lo -= (hi - lo) + 1.0;
      if (cdf(hi) < u) hi += (hi - lo) + 1.0;
      int guard = 0;
      while (cdf(lo) > u && guard++ < 64) lo -= (hi - lo);
      while (cdf(hi) < u && guard++ < 128) hi += (hi - lo);
      if (guard >= 128) throw NumericError("normal_mixture quantile: bracket failed");
      for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (cdf(mid) < u ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    case Family::BiTriangle: {
      const double p = par_[0];
      if (u <= p) return p - std::sqrt(p * (p - u));
      return p + std::sqrt((u - p) * (1.0 - p));
    }
    case Family::TwoPoint:
      return u <= par_[0] ? 0.0 : 1.0;
  }
  throw NumericError("quantile: unreachable family");
}

double Dist::pdf(double x) const {
  if (std::isnan(x)) throw DomainError("pdf: x is NaN");
  switch (family_) {
    case Family::Uniform:
      return (x < par_[0] || x > par_[1]) ? 0.0 : 1.0 / (par_[1] - par_[0]);
    case Family::Beta:
      if (x < 0.0 || x > 1.0) return 0.0;
      return boost::math::pdf(beta_dist(par_[0], par_[1]), x);
    case Family::Normal:
      return normal_pdf((x - par_[0]) / par_[1]) / par_[1];
    case Family::Cauchy: {
      const double z = (x - par_[0]) / par_[1];
      return 1.0 / (M_PI * par_[1] * (1.0 + z * z));
    }
    case Family::Laplace:
      return 0.5 * std::exp(-std::abs(x - par_[0]) / par_[1]) / par_[1];
    case Family::ChiSquared:
      if (x < 0.0) return 0.0;
      return boost::math::pdf(boost::math::chi_squared_distribution<double>(par_[0]),
                              std::max(x, std::numeric_limits<double>::min()));
    case Family::Exponential:
      return x < 0.0 ? 0.0 : par_[0] * std::exp(-par_[0] * x);
    case Family::LogNormal:
      if (x <= 0.0) return 0.0;
      return normal_pdf((std::log(x) - par_[0]) / par_[1]) / (x * par_[1]);
    case Family::NormalMixture:
      return par_[0] * normal_pdf((x - par_[1]) / par_[2]) / par_[2] +
             (1.0 - par_[0]) * normal_pdf((x - par_[3]) / par_[4]) / par_[4];
    case Family::BiTriangle: {
      const double p = par_[0];
      if (x < 0.0 || x > 1.0) return 0.0;
      if (x < p) return 2.0 - 2.0 * x / p;
      return 2.0 * (x - p) / (1.0 - p);
    }
    case Family::TwoPoint:
      throw DomainError("pdf: two_point has no density");
  }
  throw NumericError("pdf: unreachable family");
}

double Dist::support_min() const {
  switch (family_) {
    case Family::Uniform: return par_[0];
    case Family::Beta: return 0.0;
    case Family::ChiSquared: return 0.0;
    case Family::Exponential: return 0.0;
    case Family::LogNormal: return 0.0;
    case Family::BiTriangle: return 0.0;
    case Family::TwoPoint: return 0.0;
    default: return -kInf;
  }
}

double Dist::support_max() const {
  switch (family_) {
    case Family::Uniform: return par_[1];
    case Family::Beta: return 1.0;
    case Family::BiTriangle: return 1.0;
    case Family::TwoPoint: return 1.0;
    default: return kInf;
  }
}

void Dist::sample(Rng& rng, std::span<double> out) const {
  for (double& v : out) v = quantile(rng.next_double());
}

std::vector<double> Dist::sample(Rng& rng, std::size_t n) const {
  std::vector<double> out(n);
  sample(rng, out);
  return out;
}

std::string Dist::name() const {
  std::ostringstream os;
  os.precision(12);
  switch (family_) {
    case Family::Uniform: os << "uniform(" << par_[0] << "," << par_[1] << ")"; break;
    case Family::Beta: os << "beta(" << par_[0] << "," << par_[1] << ")"; break;
    case Family::Normal: os << "normal(" << par_[0] << "," << par_[1] << ")"; break;
    case Family::Cauchy: os << "cauchy(" << par_[0] << "," << par_[1] << ")"; break;
    case Family::Laplace: os << "laplace(" << par_[0] << "," << par_[1] << ")"; break;
    case Family::ChiSquared: os << "chisq(" << par_[0] << ")"; break;
    case Family::Exponential: os << "exponential(" << par_[0] << ")"; break;
    case Family::LogNormal: os << "lognormal(" << par_[0] << "," << par_[1] << ")"; break;
    case Family::NormalMixture:
      os << "mixture(" << par_[0] << "," << par_[1] << "," << par_[2] << ","
         << par_[3] << "," << par_[4] << ")";
      break;
    case Family::BiTriangle: os << "bitriangle(" << par_[0] << ")"; break;
    case Family::TwoPoint: os << "twopoint(" << par_[0] << ")"; break;
  }
  return os.str();
}

Dist Dist::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  std::string head = s;
  std::vector<double> args;
  const auto open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')') throw DomainError("distribution parse: missing ')': " + s);
    head = s.substr(0, open);
    std::string body = s.substr(open + 1, s.size() - open - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw DomainError("distribution parse: empty argument in " + s);
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size())
        throw DomainError("distribution parse: bad number '" + tok + "'");
      args.push_back(v);
    }
  }
  std::transform(head.begin(), head.end(), head.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  auto arity = [&](std::size_t want) {
    if (args.size() != want)
      throw DomainError("distribution parse: " + head + " expects " +
                        std::to_string(want) + " parameters");
  };
  if (head == "uniform") {
    if (args.empty()) return uniform(0, 1);
    arity(2);
    return uniform(args[0], args[1]);
  }
  if (head == "beta") { arity(2); return beta(args[0], args[1]); }
  if (head == "normal") {
    if (args.empty()) return normal(0, 1);
    arity(2);
    return normal(args[0], args[1]);
  }
  if (head == "cauchy") {
    if (args.empty()) return cauchy(0, 1);
    arity(2);
    return cauchy(args[0], args[1]);
  }
  if (head == "laplace") {
    if (args.empty()) return laplace(0, 1);
    arity(2);
    return laplace(args[0], args[1]);
  }
  if (head == "chisq" || head == "chi_squared") {
    if (args.empty()) return chi_squared(1);
    arity(1);
    return chi_squared(args[0]);
  }
  if (head == "exponential" || head == "exp") {
    if (args.empty()) return exponential(1);
    arity(1);
    return exponential(args[0]);
  }
  if (head == "lognormal" || head == "log_normal") {
    if (args.empty()) return log_normal(0, 1);
    arity(2);
    return log_normal(args[0], args[1]);
  }
  if (head == "mixture" || head == "normal_mixture") {
    arity(5);
    return normal_mixture(args[0], args[1], args[2], args[3], args[4]);
  }
  if (head == "bitriangle" || head == "bi_triangle") {
    if (args.empty()) return bi_triangle(0.5);
    arity(1);
    return bi_triangle(args[0]);
  }
  if (head == "twopoint" || head == "two_point") {
    if (args.empty()) return two_point(0.5);
    arity(1);
    return two_point(args[0]);
  }
  throw DomainError("distribution parse: unknown family '" + head + "'");
}

NormalFit fit_normal(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("fit_normal: need at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  if (!(var > 0.0)) throw DomainError("fit_normal: degenerate fit (zero variance)");
  return NormalFit{mean, std::sqrt(var), values.size()};
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw DomainError("EmpiricalCdf: need at least 1 value");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double u) const {
  require(u > 0.0 && u <= 1.0, "EmpiricalCdf::quantile: u must be in (0,1]");
  const auto n = static_cast<double>(sorted_.size());
  auto idx = static_cast<std::size_t>(std::ceil(u * n));
  idx = std::min(std::max<std::size_t>(idx, 1), sorted_.size());
  return sorted_[idx - 1];
}

}  // namespace splitrisk
