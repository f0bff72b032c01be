#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "splitrisk/rng.hpp"

namespace splitrisk {

// Which point inside the optimal gap a stump uses as its threshold.
enum class SplitRule : std::uint8_t { SweepLeft, SweepRight, Midpoint };

// One-dimensional decision stump. The boundary point stays with the class it
// carried in training: sweep-left keeps x == threshold below, sweep-right
// keeps it above.
struct Stump {
  double threshold = 0.0;
  int below_label = 0;
  int above_label = 0;
  bool boundary_above = false;  // true for sweep-right
  double gap_low = 0.0;         // last training value below the cut (L_X)
  double gap_high = 0.0;        // first training value above the cut (R_X)

  int classify(double x) const {
    const bool above = boundary_above ? x >= threshold : x > threshold;
    return above ? above_label : below_label;
  }
};

// Exhaustive search over gaps between adjacent distinct values, minimizing
// training misclassification; ties resolve to the leftmost gap. Returns
// nullopt for single-class input (constant predictor).
std::optional<Stump> fit_stump(std::span<const double> x,
                               std::span<const std::uint8_t> y, SplitRule rule);

// Dyadic alternating label of order k: 1 iff floor(u * 2^(k+1)) is even.
int splitting_set_label(int order, double u);

// Measure of {u in [0, t] : splitting_set_label(order, u) = 1}.
double splitting_set_mass(int order, double t);

// Axis-aligned binary tree with midpoint thresholds, Gini split search
// (leftmost feature/gap tie-break) and majority leaves.
class Tree {
 public:
  struct Node {
    int feature = -1;      // -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
  };

  // points: row-major, n rows of `dims` features.
  static Tree fit(std::span<const double> points, std::size_t dims,
                  std::span<const std::uint8_t> labels, int max_depth);

  int predict(std::span<const double> point) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t dims() const { return dims_; }
  std::size_t leaf_count() const;

  // Visits every leaf with its axis-aligned box (+-infinity at the borders).
  struct Box {
    std::vector<double> low, high;
  };
  void visit_leaves(const std::function<void(const Box&, int label)>& fn) const;

 private:
  std::vector<Node> nodes_;
  std::size_t dims_ = 1;
};

struct SplitSetsConfig {
  std::vector<int> orders{0, 1, 2, 3};
  std::vector<long> n_list{10, 20, 100};
  long replicates = 100000;
  std::uint64_t seed = 20240501;
  int workers = 1;
};

struct SplitSetsRow {
  int order = 0;
  long n = 0;
  double mae_raw = 0.0;       // fit on the standard-normal scale
  double mae_quantile = 0.0;  // fit on the quantile (uniform) scale
  double ratio = 0.0;         // raw / quantile
  double se_raw = 0.0;
  double se_quantile = 0.0;
  double se_ratio = 0.0;
  long reps = 0;
};

// Labels Phi(x) by the order-k splitting set, fits depth-2(k+1) trees on the
// raw and quantile scales, and scores the exact misclassification measure of
// each fitted rule against the true set.
std::vector<SplitSetsRow> simulate_splitting_sets(const SplitSetsConfig& config);

struct CircleConfig {
  std::vector<long> n_list{10, 20, 50, 100, 250, 500, 750, 1000};
  long replicates = 100000;
  int grid = 400;       // evaluation grid is grid x grid cell centers
  int max_depth = 8;
  std::uint64_t seed = 20240501;
  int workers = 1;
};

struct CircleRow {
  long n = 0;
  double mae_raw = 0.0;       // normal-scale fit
  double mae_quantile = 0.0;  // unit-square fit
  double ratio = 0.0;
  double se_raw = 0.0;
  double se_quantile = 0.0;
  double se_ratio = 0.0;      // delta method with the paired covariance
  long reps = 0;
};

// Uniform points in the unit square labeled by a centered circle of area 1/2;
// trees are fit in the unit square and in its coordinate-wise normal preimage
// and evaluated on the grid of cell centers.
std::vector<CircleRow> simulate_circle(const CircleConfig& config);

}  // namespace splitrisk
