#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "quadrature.hpp"
#include "splitrisk/distributions.hpp"
#include "splitrisk/errors.hpp"
#include "splitrisk/rng.hpp"

using namespace splitrisk;

namespace {

std::vector<Dist> continuous_grid() {
  return {
      Dist::uniform(0, 1),
      Dist::uniform(-2, 5),
      Dist::beta(2, 2),
      Dist::beta(2, 10),
      Dist::beta(0.5, 0.5),
      Dist::normal(0, 1),
      Dist::normal(3, 2),
      Dist::cauchy(0, 1),
      Dist::laplace(0, 1),
      Dist::chi_squared(1),
      Dist::chi_squared(4),
      Dist::exponential(1),
      Dist::log_normal(0, 1),
      Dist::normal_mixture(0.5, 0, 1, 5, 1),
      Dist::normal_mixture(0.75, 0, 1, 5, 2),
      Dist::bi_triangle(0.3),
      Dist::bi_triangle(0.7),
  };
}

}  // namespace

TEST_CASE("cdf spot values") {
  CHECK(Dist::uniform(0, 1).cdf(0.3) == doctest::Approx(0.3));
  CHECK(Dist::normal(0, 1).cdf(0.0) == doctest::Approx(0.5));
  // integral of 2 - (2/p)x over [0, 0.3] with p = 0.3: the left triangle
  // carries mass p
  CHECK(Dist::bi_triangle(0.3).cdf(0.3) == doctest::Approx(0.3));
  CHECK(Dist::bi_triangle(0.3).cdf(-1) == 0.0);
  CHECK(Dist::bi_triangle(0.3).cdf(2) == 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(Dist::normal(0, 1).cdf(-inf) == 0.0);
  CHECK(Dist::normal(0, 1).cdf(inf) == 1.0);
}

TEST_CASE("pdf spot values") {
  CHECK(Dist::uniform(0, 1).pdf(0.5) == doctest::Approx(1.0));
  CHECK(Dist::bi_triangle(0.3).pdf(0.0) == doctest::Approx(2.0));
  CHECK(Dist::bi_triangle(0.3).pdf(0.3) == doctest::Approx(0.0));
  CHECK(Dist::bi_triangle(0.3).pdf(1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Dist::two_point(0.4).pdf(0.0), DomainError);
}

TEST_CASE("quantile spot values") {
  CHECK(Dist::uniform(0, 1).quantile(0.25) == doctest::Approx(0.25));
  CHECK(Dist::exponential(1).quantile(0.5) ==
        doctest::Approx(0.69314718055994531).epsilon(1e-12));
  // equal-weight mixture of N(0,1) and N(5,1) is symmetric about 2.5
  CHECK(Dist::normal_mixture(0.5, 0, 1, 5, 1).quantile(0.5) ==
        doctest::Approx(2.5).epsilon(1e-9));
  CHECK_THROWS_AS(Dist::uniform(0, 1).quantile(0.0), DomainError);
  CHECK_THROWS_AS(Dist::uniform(0, 1).quantile(1.0), DomainError);
}

TEST_CASE("parameter domain errors") {
  CHECK_THROWS_AS(Dist::uniform(1, 1), DomainError);
  CHECK_THROWS_AS(Dist::beta(0, 1), DomainError);
  CHECK_THROWS_AS(Dist::normal(0, 0), DomainError);
  CHECK_THROWS_AS(Dist::chi_squared(-1), DomainError);
  CHECK_THROWS_AS(Dist::normal_mixture(1.0, 0, 1, 5, 1), DomainError);
  CHECK_THROWS_AS(Dist::bi_triangle(1.0), DomainError);
}

TEST_CASE("cdf nondecreasing and quantile round trip on the family grid") {
  for (const Dist& d : continuous_grid()) {
    CAPTURE(d.name());
    double prev = -0.1;
    for (int i = 1; i <= 200; ++i) {
      const double u = i / 201.0;
      const double x = d.quantile(u);
      const double c = d.cdf(x);
      CHECK(c >= prev - 1e-12);
      prev = c;
    }
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      CHECK(std::abs(d.cdf(d.quantile(u)) - u) <= 1e-8);
    }
  }
}

TEST_CASE("pdf integrates to one over the effective support") {
  static const oracle::GaussLegendre gl(64);
  const double eps = 1e-6;
  for (const Dist& d : continuous_grid()) {
    CAPTURE(d.name());
    // Quantile-spaced panels handle heavy tails; the outermost panels are
    // refined geometrically for densities with edge singularities.
    std::vector<double> edges;
    const int panels = 200;
    for (int i = 0; i <= panels; ++i)
      edges.push_back(d.quantile(eps + (1.0 - 2.0 * eps) * i / panels));
    auto refine = [&](double a, double b) {
      // geometric sub-panels toward both ends: covers edge singularities
      // (beta, chi-squared) and the sharp inner side of heavy tails (cauchy)
      std::vector<double> sub{a, b};
      const int steps = 30;
      for (int k = 1; k < steps; ++k) {
        const double t = std::pow(2.0, -k);
        sub.push_back(a + (b - a) * t);
        sub.push_back(b - (b - a) * t);
      }
      std::sort(sub.begin(), sub.end());
      double s = 0.0;
      for (std::size_t k = 0; k + 1 < sub.size(); ++k)
        if (sub[k + 1] > sub[k])
          s += gl.integrate([&](double x) { return d.pdf(x); }, sub[k], sub[k + 1]);
      return s;
    };
    double mass = refine(edges[0], edges[1]) + refine(edges[panels - 1], edges[panels]);
    for (int i = 1; i < panels - 1; ++i)
      mass += gl.integrate([&](double x) { return d.pdf(x); }, edges[i], edges[i + 1]);
    CHECK(std::abs(mass - (1.0 - 2.0 * eps)) <= 1e-4);
  }
}

TEST_CASE("sampling through the cdf is uniform (KS bound)") {
  const std::size_t n = 100000;
  for (const Dist& d : continuous_grid()) {
    CAPTURE(d.name());
    Rng rng(4242);
    std::vector<double> v = d.sample(rng, n);
    for (double& x : v) x = d.cdf(x);
    std::sort(v.begin(), v.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n;
      ks = std::max(ks, std::max(v[i] - lo, hi - v[i]));
    }
    CHECK(ks <= 1.63 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("sampling is deterministic given the seed") {
  const Dist d = Dist::beta(2, 10);
  Rng a(7), b(7);
  CHECK(d.sample(a, 50) == d.sample(b, 50));
  CHECK(d.sample(a, 0).empty());
}

TEST_CASE("uniform sample mean matches within the CLT bound") {
  Rng rng(11);
  const auto v = Dist::uniform(0, 1).sample(rng, 100000);
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("fit_normal") {
  const std::vector<double> two{0.0, 2.0};
  const NormalFit f = fit_normal(two);
  CHECK(f.mu == doctest::Approx(1.0));
  CHECK(f.sigma == doctest::Approx(std::sqrt(2.0)));
  const std::vector<double> flat{5.0, 5.0, 5.0};
  CHECK_THROWS_AS(fit_normal(flat), DomainError);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(fit_normal(one), DomainError);

  Rng rng(3);
  const auto big = Dist::normal(3, 2).sample(rng, 10000);
  const NormalFit g = fit_normal(big);
  CHECK(std::abs(g.mu - 3.0) < 3.0 * 2.0 / 100.0);
  CHECK(std::abs(g.sigma - 2.0) < 0.1);
}

TEST_CASE("empirical cdf") {
  EmpiricalCdf e({1.0, 2.0, 3.0});
  CHECK(e(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(e(0.5) == 0.0);
  CHECK(e(3.0) == 1.0);
  CHECK(e(99.0) == 1.0);
  CHECK_THROWS_AS(EmpiricalCdf({}), DomainError);

  // eF at the k-th smallest sample point is k/N
  Rng rng(5);
  const auto v = Dist::normal(0, 1).sample(rng, 257);
  EmpiricalCdf ec(v);
  const auto& sorted = ec.sorted();
  for (std::size_t k = 0; k < sorted.size(); ++k)
    CHECK(ec(sorted[k]) ==
          doctest::Approx(static_cast<double>(k + 1) / static_cast<double>(sorted.size())));

  Rng rng2(6);
  EmpiricalCdf big(Dist::uniform(0, 1).sample(rng2, 10000));
  CHECK(std::abs(big(0.5) - 0.5) < 0.02);  // DKW
}

TEST_CASE("distribution parsing") {
  CHECK(Dist::parse("beta(2,10)") == Dist::beta(2, 10));
  CHECK(Dist::parse("uniform") == Dist::uniform(0, 1));
  CHECK(Dist::parse(" normal( 0 , 1 ) ") == Dist::normal(0, 1));
  CHECK(Dist::parse("mixture(0.5,0,1,5,1)") == Dist::normal_mixture(0.5, 0, 1, 5, 1));
  CHECK_THROWS_AS(Dist::parse("gamma(2)"), DomainError);
  CHECK_THROWS_AS(Dist::parse("beta(2)"), DomainError);
}

TEST_CASE("two point distribution") {
  const Dist d = Dist::two_point(0.3);
  CHECK(d.cdf(-0.1) == 0.0);
  CHECK(d.cdf(0.0) == doctest::Approx(0.3));
  CHECK(d.cdf(0.5) == doctest::Approx(0.3));
  CHECK(d.cdf(1.0) == 1.0);
  CHECK(d.quantile(0.2) == 0.0);
  CHECK(d.quantile(0.9) == 1.0);
}
