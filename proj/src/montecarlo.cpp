#include "splitrisk/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxFitRetries = 1000;

struct Accum {
  double abs_err = 0.0;
  double err = 0.0;
  double err2 = 0.0;
  double err4 = 0.0;
  void add(double e) {
    abs_err += std::abs(e);
    err += e;
    err2 += e * e;
    err4 += (e * e) * (e * e);
  }
};

struct CellTask {
  long n = 0;
  double p = 0.0;
  std::size_t cell_index = 0;
};

void validate(const ExperimentConfig& cfg) {
  if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (cfg.n_list.empty()) throw ConfigError("n list must be nonempty");
  if (cfg.p_grid.empty()) throw ConfigError("p grid must be nonempty");
  if (cfg.kinds.empty()) throw ConfigError("estimator list must be nonempty");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.unlabeled < 0) throw ConfigError("unlabeled count must be >= 0");
  for (long n : cfg.n_list)
    if (n < 1) throw ConfigError("every n must be >= 1");
  for (double p : cfg.p_grid)
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("every p must be inside (0,1)");
  switch (cfg.transform) {
    case Transform::None:
      for (Estimator k : cfg.kinds)
        if (k == Estimator::RB)
          throw ConfigError("RB requires the true-cdf transform (quantile scale)");
      break;
    case Transform::TrueCdf:
      break;
    case Transform::ParametricNormal:
      if (cfg.kinds != std::vector<Estimator>{Estimator::B})
        throw ConfigError("parametric transform supports only the B estimator");
      if (cfg.distribution.family() != Family::Normal)
        throw ConfigError("parametric transform requires a normal distribution");
      if (cfg.train_distribution)
        throw ConfigError("parametric transform does not combine with a train override");
      for (long n : cfg.n_list)
        if (n < 2) throw ConfigError("parametric transform requires n >= 2");
      break;
    case Transform::Ecdf:
      if (cfg.kinds != std::vector<Estimator>{Estimator::B})
        throw ConfigError("ecdf transform supports only the B estimator");
      if (cfg.train_distribution)
        throw ConfigError("ecdf transform does not combine with a train override");
      break;
  }
  if (cfg.train_distribution) {
    if (!cfg.distribution.continuous())
      throw ConfigError("test distribution must be continuous");
  }
}

// Quantile-scale estimate from (L,R,K) with 0/1 endpoint conventions.
double quantile_estimate(Estimator kind, double l, double r, long k, long n) {
  switch (kind) {
    case Estimator::Y: return static_cast<double>(k) / static_cast<double>(n);
    case Estimator::L: return l;
    case Estimator::R: return r;
    case Estimator::B: return 0.5 * (l + r);
    case Estimator::RB:
      if (k == 0) return 0.0;
      if (k == n) return 1.0;
      return 1.0 / static_cast<double>(n) +
             ((n - 2.0) / static_cast<double>(n)) * l / (l + 1.0 - r);
    case Estimator::SL: return k == n ? 1.0 : l;
    case Estimator::SR: return k == 0 ? 0.0 : r;
    case Estimator::SB:
      if (k == n) return 1.0;
      if (k == 0) return 0.0;
      return 0.5 * (l + r);
    default:
      throw ConfigError("estimator not valid on the quantile scale");
  }
}

class Engine {
 public:
  explicit Engine(const ExperimentConfig& cfg) : cfg_(cfg) {
    identity_uniform_ = cfg_.distribution == Dist::uniform(0.0, 1.0) &&
                        !cfg_.train_distribution;
  }

  RiskCurve run() {
    validate(cfg_);
    const std::size_t num_p = cfg_.p_grid.size();
    const std::size_t cells = cfg_.n_list.size() * num_p;
    const std::size_t kinds = cfg_.kinds.size();

    std::vector<RiskPoint> points(cells * kinds);
    std::atomic<std::size_t> next{0};
    const int workers =
        static_cast<int>(std::min<std::size_t>(cells, cfg_.workers));

    auto work = [&]() {
      Scratch scratch;
      for (;;) {
        const std::size_t g = next.fetch_add(1);
        if (g >= cells) break;
        const long n = cfg_.n_list[g / num_p];
        const double p = cfg_.p_grid[g % num_p];
        run_cell(CellTask{n, p, g}, scratch, &points[g * kinds]);
      }
    };

    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    RiskCurve curve;
    curve.distribution = cfg_.distribution.name();
    if (cfg_.train_distribution) curve.train = cfg_.train_distribution->name();
    curve.transform = cfg_.transform;
    curve.unlabeled = cfg_.transform == Transform::Ecdf ? cfg_.unlabeled : 0;
    curve.replicates = cfg_.replicates;
    curve.seed = cfg_.seed;
    curve.points = std::move(points);
    return curve;
  }

 private:
  struct Scratch {
    std::vector<double> u;       // labeled draws (train quantile scale)
    std::vector<double> pooled;  // labeled + unlabeled for the ecdf transform
    std::vector<double> x;       // raw values for the parametric fit
    std::vector<double> nth;     // selection buffer
    std::vector<Accum> acc;
  };

  // The train family follows the grid cutoff in mismatch experiments when it
  // is parameterized by p itself.
  Dist train_for(double p) const {
    if (!cfg_.train_distribution) return cfg_.distribution;
    const Dist& t = *cfg_.train_distribution;
    if (t.family() == Family::BiTriangle) return Dist::bi_triangle(p);
    if (t.family() == Family::TwoPoint) return Dist::two_point(p);
    return t;
  }

  void run_cell(const CellTask& task, Scratch& s, RiskPoint* out) const {
    const long n = task.n;
    const double p = task.p;
    const std::size_t kinds = cfg_.kinds.size();
    const Dist train = train_for(p);
    const Dist& test = cfg_.distribution;
    const bool mismatch = cfg_.train_distribution.has_value();
    // Cutoff of the labels on the train quantile scale: labels are assigned
    // by x < quantile(test, p) in raw space.
    const double p_train = mismatch ? train.cdf(test.quantile(p)) : p;

    s.u.resize(static_cast<std::size_t>(n));
    s.acc.assign(kinds, Accum{});
    long retries = 0;

    for (long rep = 0; rep < cfg_.replicates; ++rep) {
      Rng rng(mix_seed(cfg_.seed, task.cell_index, static_cast<std::uint64_t>(rep)));
      double lu = -1.0, ru = 2.0;
      long k = 0;
      for (double& v : s.u) {
        v = rng.next_double();
        if (v < p_train) {
          ++k;
          lu = std::max(lu, v);
        } else {
          ru = std::min(ru, v);
        }
      }
      const double l = k == 0 ? 0.0 : lu;
      const double r = k == n ? 1.0 : ru;

      switch (cfg_.transform) {
        case Transform::TrueCdf:
        case Transform::None: {
          double lx = 0.0, rx = 0.0, mid_cdf = -1.0;
          const bool need_raw =
              cfg_.transform == Transform::None ||
              std::find(cfg_.kinds.begin(), cfg_.kinds.end(), Estimator::XScale) !=
                  cfg_.kinds.end();
          if (need_raw) {
            if (identity_uniform_) {
              lx = l;
              rx = r;
            } else {
              lx = k == 0 ? train.support_min() : train.quantile(lu);
              rx = k == n ? train.support_max() : train.quantile(ru);
            }
            double mid;
            if (std::isinf(lx))
              mid = lx;
            else if (std::isinf(rx))
              mid = rx;
            else
              mid = 0.5 * (lx + rx);
            mid_cdf = identity_uniform_ ? mid : test.cdf(mid);
          }
          for (std::size_t j = 0; j < kinds; ++j) {
            const Estimator kind = cfg_.kinds[j];
            double est;
            if (kind == Estimator::XScale) {
              est = mid_cdf;
            } else if (cfg_.transform == Transform::TrueCdf) {
              est = quantile_estimate(kind, l, r, k, n);
            } else {
              est = raw_estimate(kind, lx, rx, k, n, test);
            }
            s.acc[j].add(est - p);
          }
          break;
        }
        case Transform::ParametricNormal: {
          double est = parametric_estimate(rng, s, n, p_train, train, test, retries);
          s.acc[0].add(est - p);
          break;
        }
        case Transform::Ecdf: {
          double est = ecdf_estimate(rng, s, n, k, lu, ru, train, test);
          s.acc[0].add(est - p);
          break;
        }
      }
    }

    const auto reps = static_cast<double>(cfg_.replicates);
    for (std::size_t j = 0; j < kinds; ++j) {
      const Accum& a = s.acc[j];
      RiskPoint& pt = out[j];
      pt.n = n;
      pt.p = p;
      pt.kind = cfg_.kinds[j];
      pt.reps = cfg_.replicates;
      pt.retries = retries;
      pt.mae = a.abs_err / reps;
      pt.mse = a.err2 / reps;
      pt.bias = a.err / reps;
      pt.se_mae = std::sqrt(std::max(0.0, a.err2 / reps - pt.mae * pt.mae) / reps);
      pt.se_mse = std::sqrt(std::max(0.0, a.err4 / reps - pt.mse * pt.mse) / reps);
      pt.se_bias = std::sqrt(std::max(0.0, a.err2 / reps - pt.bias * pt.bias) / reps);
    }
  }

  // Raw-scale estimate deployed as an x threshold and read on the test
  // quantile scale. Sweeping falls back to the labels when a class is absent.
  double raw_estimate(Estimator kind, double lx, double rx, long k, long n,
                      const Dist& test) const {
    auto tq = [&](double x) {
      if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
      return identity_uniform_ ? std::clamp(x, 0.0, 1.0) : test.cdf(x);
    };
    switch (kind) {
      case Estimator::Y: return static_cast<double>(k) / static_cast<double>(n);
      case Estimator::L: return tq(lx);
      case Estimator::R: return tq(rx);
      case Estimator::B: {
        double mid;
        if (std::isinf(lx))
          mid = lx;
        else if (std::isinf(rx))
          mid = rx;
        else
          mid = 0.5 * (lx + rx);
        return tq(mid);
      }
      case Estimator::SL: return k == n ? 1.0 : tq(lx);
      case Estimator::SR: return k == 0 ? 0.0 : tq(rx);
      case Estimator::SB: {
        if (k == n) return 1.0;
        if (k == 0) return 0.0;
        return tq(0.5 * (lx + rx));
      }
      default:
        throw ConfigError("estimator not valid on the raw scale");
    }
  }

  double parametric_estimate(Rng& rng, Scratch& s, long n, double p_train,
                             const Dist& train, const Dist& test,
                             long& retries) const {
    s.x.resize(static_cast<std::size_t>(n));
    double lu = -1.0, ru = 2.0;
    long k = 0;
    for (int attempt = 0;; ++attempt) {
      if (attempt > kMaxFitRetries)
        throw NumericError("parametric transform: degenerate fits persist");
      lu = -1.0;
      ru = 2.0;
      k = 0;
      double sum = 0.0;
      for (long i = 0; i < n; ++i) {
        const double u = rng.next_double();
        const double v = train.quantile(u);
        s.x[static_cast<std::size_t>(i)] = v;
        sum += v;
        if (u < p_train) {
          ++k;
          lu = std::max(lu, u);
        } else {
          ru = std::min(ru, u);
        }
      }
      const double mean = sum / static_cast<double>(n);
      double ss = 0.0;
      for (double v : s.x) ss += (v - mean) * (v - mean);
      if (ss > 0.0) {
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        const double lx = k == 0 ? -kInf : train.quantile(lu);
        const double rx = k == n ? kInf : train.quantile(ru);
        const double fl = normal_cdf((lx - mean) / sd);
        const double fr = normal_cdf((rx - mean) / sd);
        const double ph = 0.5 * (fl + fr);
        if (ph <= 0.0) return 0.0;
        if (ph >= 1.0) return 1.0;
        const double xstar = mean + sd * normal_quantile(ph);
        return test.cdf(xstar);
      }
      ++retries;  // all values tied; redraw deterministically from the stream
    }
  }

  double ecdf_estimate(Rng& rng, Scratch& s, long n, long k, double lu, double ru,
                       const Dist& train, const Dist& test) const {
    const long m = cfg_.unlabeled;
    const std::size_t total = static_cast<std::size_t>(n + m);
    s.pooled.resize(total);
    std::copy(s.u.begin(), s.u.end(), s.pooled.begin());
    for (long i = 0; i < m; ++i)
      s.pooled[static_cast<std::size_t>(n + i)] = rng.next_double();

    // Counts of pooled values <= L_X and <= R_X; ranks are identical in u
    // space and x space because the quantile map is monotone.
    long cl = 0, cr = 0;
    if (k == 0) {
      cl = 0;
    } else {
      for (double v : s.pooled) cl += v <= lu ? 1 : 0;
    }
    if (k == n) {
      cr = static_cast<long>(total);
    } else {
      for (double v : s.pooled) cr += v <= ru ? 1 : 0;
    }
    // phat = (cl + cr) / (2N); deployed threshold = pooled order statistic of
    // rank ceil(N * phat) = ceil((cl+cr)/2).
    const long rank = std::max<long>(1, (cl + cr + 1) / 2);
    s.nth.assign(s.pooled.begin(), s.pooled.end());
    std::nth_element(s.nth.begin(), s.nth.begin() + (rank - 1), s.nth.end());
    const double ustar = s.nth[static_cast<std::size_t>(rank - 1)];
    if (&train == &test || !cfg_.train_distribution) return ustar;
    return test.cdf(train.quantile(ustar));
  }

  ExperimentConfig cfg_;
  bool identity_uniform_ = false;
};

}  // namespace

std::string_view transform_name(Transform t) {
  switch (t) {
    case Transform::None: return "none";
    case Transform::TrueCdf: return "true-cdf";
    case Transform::ParametricNormal: return "parametric-normal";
    case Transform::Ecdf: return "ecdf";
  }
  return "?";
}

Transform parse_transform(std::string_view token) {
  std::string t(token);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "none" || t == "raw" || t == "x") return Transform::None;
  if (t == "true-cdf" || t == "truecdf" || t == "cdf") return Transform::TrueCdf;
  if (t == "parametric-normal" || t == "parametric") return Transform::ParametricNormal;
  if (t == "ecdf") return Transform::Ecdf;
  throw ConfigError("unknown transform '" + std::string(token) + "'");
}

std::vector<double> default_p_grid() {
  std::vector<double> grid;
  grid.reserve(99);
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

RiskCurve simulate_risk(const ExperimentConfig& config) {
  return Engine(config).run();
}

RiskCurve simulate_ecdf_transform(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.transform = Transform::Ecdf;
  cfg.kinds = {Estimator::B};
  return Engine(cfg).run();
}

RiskCurve simulate_parametric_transform(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.transform = Transform::ParametricNormal;
  cfg.kinds = {Estimator::B};
  return Engine(cfg).run();
}

RiskCurve simulate_mismatch(const Dist& train, const Dist& test,
                            const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.distribution = test;
  cfg.train_distribution = train;
  return Engine(cfg).run();
}

}  // namespace splitrisk
