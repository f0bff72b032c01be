#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splitrisk/rng.hpp"

namespace splitrisk {

enum class Family {
  Uniform,
  Beta,
  Normal,
  Cauchy,
  Laplace,
  ChiSquared,
  Exponential,
  LogNormal,
  NormalMixture,
  BiTriangle,
  TwoPoint,
};

// Standard normal helpers shared across the library.
double normal_cdf(double z);
double normal_quantile(double u);  // u in (0,1)
double normal_pdf(double z);

// A tagged distribution family with exact cdf/quantile/density and inverse
// transform sampling. Value type; parameters validated at construction.
class Dist {
 public:
  static Dist uniform(double a, double b);
  static Dist beta(double alpha, double beta);
  static Dist normal(double mu, double sigma);
  static Dist cauchy(double loc, double scale);
  static Dist laplace(double loc, double scale);
  static Dist chi_squared(double df);
  static Dist exponential(double rate);
  static Dist log_normal(double mu, double sigma);
  static Dist normal_mixture(double w, double mu1, double sigma1, double mu2,
                             double sigma2);
  static Dist bi_triangle(double p);
  static Dist two_point(double p0);  // P(X=0)=p0, P(X=1)=1-p0

  // Parses "beta(2,10)", "normal(0,1)", "uniform", "mixture(0.5,0,1,5,1)", ...
  static Dist parse(std::string_view text);

  Family family() const { return family_; }
  double param(std::size_t i) const { return par_[i]; }

  // x may be +-infinity (maps to 1/0).
  double cdf(double x) const;
  // u must be strictly inside (0,1).
  double quantile(double u) const;
  double pdf(double x) const;

  double support_min() const;  // may be -infinity
  double support_max() const;  // may be +infinity
  bool continuous() const { return family_ != Family::TwoPoint; }

  // Inverse transform sampling: quantile applied to uniform draws, so every
  // family shares one deterministic sampling path.
  void sample(Rng& rng, std::span<double> out) const;
  std::vector<double> sample(Rng& rng, std::size_t n) const;

  std::string name() const;

  bool operator==(const Dist& other) const = default;

 private:
  Dist(Family family, std::array<double, 5> par) : family_(family), par_(par) {}
  Family family_;
  std::array<double, 5> par_{};
};

struct NormalFit {
  double mu = 0.0;
  double sigma = 1.0;
  std::size_t n = 0;
};

// Sample mean and standard deviation (n-1 divisor). Requires >= 2 values with
// positive variance; throws DomainError otherwise.
NormalFit fit_normal(std::span<const double> values);

// Right-continuous step ECDF: eval(x) = #(values <= x) / N.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values);

  double operator()(double x) const;
  // Generalized inverse min{v in sample : eF(v) >= u}, u in (0,1].
  double quantile(double u) const;
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

}  // namespace splitrisk
