#include "splitrisk/tree.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "splitrisk/distributions.hpp"
#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::optional<Stump> fit_stump(std::span<const double> x,
                               std::span<const std::uint8_t> y, SplitRule rule) {
  if (x.size() != y.size()) throw DomainError("fit_stump: |x| != |y|");
  if (x.empty()) throw DomainError("fit_stump: empty input");
  const std::size_t n = x.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  long total_ones = 0;
  for (auto v : y) total_ones += v;
  if (total_ones == 0 || total_ones == static_cast<long>(n)) return std::nullopt;

  long best_mis = std::numeric_limits<long>::max();
  std::size_t best_gap = 0;  // split between order[best_gap] and order[best_gap+1]
  long ones_prefix = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    ones_prefix += y[order[j]];
    if (x[order[j]] == x[order[j + 1]]) continue;
    const long left_n = static_cast<long>(j + 1);
    const long left_ones = ones_prefix;
    const long left_zeros = left_n - left_ones;
    const long right_ones = total_ones - left_ones;
    const long right_zeros = static_cast<long>(n) - left_n - right_ones;
    const long mis = std::min(left_zeros, left_ones) + std::min(right_zeros, right_ones);
    if (mis < best_mis) {
      best_mis = mis;
      best_gap = j;
    }
  }
  if (best_mis == std::numeric_limits<long>::max())
    return std::nullopt;  // all values identical, no usable gap

  const double lo = x[order[best_gap]];
  const double hi = x[order[best_gap + 1]];

  long left_n = static_cast<long>(best_gap + 1), left_ones = 0;
  for (std::size_t j = 0; j <= best_gap; ++j) left_ones += y[order[j]];
  const long right_n = static_cast<long>(n) - left_n;
  const long right_ones = total_ones - left_ones;

  Stump s;
  s.gap_low = lo;
  s.gap_high = hi;
  s.below_label = 2 * left_ones > left_n ? 1 : 0;
  s.above_label = 2 * right_ones > right_n ? 1 : 0;
  switch (rule) {
    case SplitRule::SweepLeft:
      s.threshold = lo;
      s.boundary_above = false;
      break;
    case SplitRule::SweepRight:
      s.threshold = hi;
      s.boundary_above = true;
      break;
    case SplitRule::Midpoint:
      s.threshold = 0.5 * (lo + hi);
      s.boundary_above = false;
      break;
  }
  return s;
}

int splitting_set_label(int order, double u) {
  if (order < 0) throw DomainError("splitting_set_label: order must be >= 0");
  if (!(u >= 0.0 && u <= 1.0))
    throw DomainError("splitting_set_label: u must be in [0,1]");
  const double cells = std::ldexp(1.0, order + 1);  // 2^(k+1)
  const auto idx = static_cast<long long>(std::floor(u * cells));
  return (idx % 2 == 0) ? 1 : 0;
}

double splitting_set_mass(int order, double t) {
  if (order < 0) throw DomainError("splitting_set_mass: order must be >= 0");
  t = std::clamp(t, 0.0, 1.0);
  const double cells = std::ldexp(1.0, order + 1);
  const double f = t * cells;
  const auto full = static_cast<long long>(std::floor(f));
  double ones = static_cast<double>((full + 1) / 2);  // even-indexed full cells
  if (full % 2 == 0) ones += f - static_cast<double>(full);
  return ones / cells;
}

namespace {

struct SplitCandidate {
  double impurity = kInf;  // weighted child Gini (scaled)
  int feature = -1;
  double threshold = 0.0;
  bool valid() const { return feature >= 0; }
};

// Returns the lowest-impurity split of the given rows; (feature, threshold)
// lexicographic tie-break keeps fitting deterministic.
SplitCandidate best_split(std::span<const double> points, std::size_t dims,
                          std::span<const std::uint8_t> labels,
                          const std::vector<std::size_t>& rows,
                          std::vector<std::size_t>& order) {
  SplitCandidate best;
  const std::size_t m = rows.size();
  for (std::size_t f = 0; f < dims; ++f) {
    order = rows;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[a * dims + f] < points[b * dims + f];
    });
    long total_ones = 0;
    for (std::size_t i : order) total_ones += labels[i];
    long ones = 0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      ones += labels[order[j]];
      const double va = points[order[j] * dims + f];
      const double vb = points[order[j + 1] * dims + f];
      if (va == vb) continue;
      const double ln = static_cast<double>(j + 1);
      const double rn = static_cast<double>(m - j - 1);
      const double l1 = static_cast<double>(ones);
      const double r1 = static_cast<double>(total_ones - ones);
      const double impurity =
          l1 * (ln - l1) / ln + r1 * (rn - r1) / rn;  // sum n_c * gini_c / 2
      if (impurity < best.impurity) {
        best.impurity = impurity;
        best.feature = static_cast<int>(f);
        best.threshold = 0.5 * (va + vb);
      }
    }
  }
  return best;
}

}  // namespace

Tree Tree::fit(std::span<const double> points, std::size_t dims,
               std::span<const std::uint8_t> labels, int max_depth) {
  if (dims == 0) throw DomainError("Tree::fit: dims must be >= 1");
  if (labels.empty()) throw DomainError("Tree::fit: empty input");
  if (points.size() != labels.size() * dims)
    throw DomainError("Tree::fit: points/labels size mismatch");
  if (max_depth < 0) throw DomainError("Tree::fit: max_depth must be >= 0");

  Tree tree;
  tree.dims_ = dims;
  std::vector<std::size_t> scratch;

  struct Frame {
    std::vector<std::size_t> rows;
    int depth;
    int node;
  };

  auto majority = [&](const std::vector<std::size_t>& rows) {
    long ones = 0;
    for (std::size_t i : rows) ones += labels[i];
    return 2 * ones > static_cast<long>(rows.size()) ? 1 : 0;
  };

  std::vector<std::size_t> all(labels.size());
  std::iota(all.begin(), all.end(), 0);
  tree.nodes_.emplace_back();
  std::vector<Frame> stack;
  stack.push_back({std::move(all), 0, 0});

  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    Node& node = tree.nodes_[static_cast<std::size_t>(fr.node)];

    long ones = 0;
    for (std::size_t i : fr.rows) ones += labels[i];
    const long zeros = static_cast<long>(fr.rows.size()) - ones;
    const double node_impurity =
        static_cast<double>(ones) * static_cast<double>(zeros) /
        static_cast<double>(fr.rows.size());

    if (ones == 0 || zeros == 0 || fr.depth >= max_depth) {
      node.label = majority(fr.rows);
      continue;
    }
    const SplitCandidate split =
        best_split(points, dims, labels, fr.rows, scratch);
    if (!split.valid() || split.impurity >= node_impurity) {
      node.label = majority(fr.rows);
      continue;
    }

    std::vector<std::size_t> left, right;
    left.reserve(fr.rows.size());
    right.reserve(fr.rows.size());
    for (std::size_t i : fr.rows) {
      const double v = points[i * dims + static_cast<std::size_t>(split.feature)];
      (v <= split.threshold ? left : right).push_back(i);
    }

    node.feature = split.feature;
    node.threshold = split.threshold;
    const int li = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    const int ri = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    tree.nodes_[static_cast<std::size_t>(fr.node)].left = li;
    tree.nodes_[static_cast<std::size_t>(fr.node)].right = ri;
    stack.push_back({std::move(right), fr.depth + 1, ri});
    stack.push_back({std::move(left), fr.depth + 1, li});
  }
  return tree;
}

int Tree::predict(std::span<const double> point) const {
  if (point.size() != dims_) throw DomainError("Tree::predict: wrong dimension");
  int idx = 0;
  for (;;) {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    if (node.feature < 0) return node.label;
    idx = point[static_cast<std::size_t>(node.feature)] <= node.threshold
              ? node.left
              : node.right;
  }
}

std::size_t Tree::leaf_count() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += n.feature < 0 ? 1 : 0;
  return count;
}

void Tree::visit_leaves(
    const std::function<void(const Box&, int label)>& fn) const {
  Box box;
  box.low.assign(dims_, -kInf);
  box.high.assign(dims_, kInf);
  const std::function<void(int)> walk = [&](int idx) {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    if (node.feature < 0) {
      fn(box, node.label);
      return;
    }
    const auto f = static_cast<std::size_t>(node.feature);
    const double saved_high = box.high[f];
    box.high[f] = node.threshold;
    walk(node.left);
    box.high[f] = saved_high;
    const double saved_low = box.low[f];
    box.low[f] = node.threshold;
    walk(node.right);
    box.low[f] = saved_low;
  };
  walk(0);
}

namespace {

// Shared parallel-cell runner for the tree experiments.
template <typename CellFn>
void run_cells(std::size_t cells, int workers, const CellFn& fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t g = next.fetch_add(1);
      if (g >= cells) break;
      fn(g);
    }
  };
  const int count = static_cast<int>(
      std::min<std::size_t>(cells, static_cast<std::size_t>(std::max(workers, 1))));
  if (count <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(count));
  for (int w = 0; w < count; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

// Misclassified measure of a fitted 1-d rule against the order-k set, exact:
// leaf intervals are mapped to the quantile scale and integrated.
double splitset_error(const Tree& tree, int order, bool normal_scale) {
  double err = 0.0;
  tree.visit_leaves([&](const Tree::Box& box, int label) {
    double a = box.low[0], b = box.high[0];
    if (normal_scale) {
      a = normal_cdf(a);
      b = normal_cdf(b);
    }
    a = std::clamp(a, 0.0, 1.0);
    b = std::clamp(b, 0.0, 1.0);
    if (b <= a) return;
    const double ones = splitting_set_mass(order, b) - splitting_set_mass(order, a);
    err += label == 0 ? ones : (b - a) - ones;
  });
  return err;
}

}  // namespace

std::vector<SplitSetsRow> simulate_splitting_sets(const SplitSetsConfig& config) {
  if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (config.orders.empty() || config.n_list.empty())
    throw ConfigError("orders and n list must be nonempty");
  for (int k : config.orders)
    if (k < 0) throw ConfigError("orders must be >= 0");
  for (long n : config.n_list)
    if (n < 1) throw ConfigError("every n must be >= 1");

  const std::size_t cells = config.orders.size() * config.n_list.size();
  std::vector<SplitSetsRow> rows(cells);

  run_cells(cells, config.workers, [&](std::size_t g) {
    const int order = config.orders[g / config.n_list.size()];
    const long n = config.n_list[g % config.n_list.size()];
    const int depth = 2 * (order + 1);
    std::vector<double> u(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> y(static_cast<std::size_t>(n));
    double sr = 0.0, sq = 0.0, sr2 = 0.0, sq2 = 0.0, srq = 0.0;
    for (long rep = 0; rep < config.replicates; ++rep) {
      Rng rng(mix_seed(config.seed, g, static_cast<std::uint64_t>(rep)));
      for (long i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i);
        u[j] = rng.next_double();
        z[j] = normal_quantile(u[j]);
        y[j] = static_cast<std::uint8_t>(splitting_set_label(order, u[j]));
      }
      const Tree tq_tree = Tree::fit(u, 1, y, depth);
      const Tree tz_tree = Tree::fit(z, 1, y, depth);
      const double eq = splitset_error(tq_tree, order, false);
      const double er = splitset_error(tz_tree, order, true);
      sr += er;
      sq += eq;
      sr2 += er * er;
      sq2 += eq * eq;
      srq += er * eq;
    }
    const auto reps = static_cast<double>(config.replicates);
    SplitSetsRow& row = rows[g];
    row.order = order;
    row.n = n;
    row.reps = config.replicates;
    row.mae_raw = sr / reps;
    row.mae_quantile = sq / reps;
    row.ratio = row.mae_raw / row.mae_quantile;
    const double vr = std::max(0.0, sr2 / reps - row.mae_raw * row.mae_raw);
    const double vq = std::max(0.0, sq2 / reps - row.mae_quantile * row.mae_quantile);
    const double cov = srq / reps - row.mae_raw * row.mae_quantile;
    row.se_raw = std::sqrt(vr / reps);
    row.se_quantile = std::sqrt(vq / reps);
    const double rel = vr / (row.mae_raw * row.mae_raw) +
                       vq / (row.mae_quantile * row.mae_quantile) -
                       2.0 * cov / (row.mae_raw * row.mae_quantile);
    row.se_ratio = row.ratio * std::sqrt(std::max(0.0, rel) / reps);
  });
  return rows;
}

namespace {

// Circle membership intervals per grid column, in row-index units.
struct CircleGrid {
  int g = 0;
  std::vector<double> centers;
  std::vector<int> row_lo, row_hi;  // half-open [lo, hi)

  explicit CircleGrid(int grid) : g(grid) {
    const double r2 = 0.5 / M_PI;
    centers.resize(static_cast<std::size_t>(g));
    row_lo.resize(static_cast<std::size_t>(g));
    row_hi.resize(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i)
      centers[static_cast<std::size_t>(i)] = (i + 0.5) / g;
    for (int i = 0; i < g; ++i) {
      const double dx = centers[static_cast<std::size_t>(i)] - 0.5;
      const double d = r2 - dx * dx;
      if (d <= 0.0) {
        row_lo[static_cast<std::size_t>(i)] = 0;
        row_hi[static_cast<std::size_t>(i)] = 0;
        continue;
      }
      const double h = std::sqrt(d);
      row_lo[static_cast<std::size_t>(i)] = first_center_at_or_above(0.5 - h);
      row_hi[static_cast<std::size_t>(i)] = first_center_above(0.5 + h);
    }
  }

  // index of the first cell center > v
  int first_center_above(double v) const {
    const auto it = std::upper_bound(centers.begin(), centers.end(), v);
    return static_cast<int>(it - centers.begin());
  }
  // index of the first cell center >= v
  int first_center_at_or_above(double v) const {
    const auto it = std::lower_bound(centers.begin(), centers.end(), v);
    return static_cast<int>(it - centers.begin());
  }

  bool inside(int col, int row) const {
    return row >= row_lo[static_cast<std::size_t>(col)] &&
           row < row_hi[static_cast<std::size_t>(col)];
  }

  // Leaves partition the unit square; counting per column keeps the exact
  // 160,000-point evaluation at O(leaves x grid).
  long misclassified_cells(const Tree& tree, bool normal_scale) const {
    long err = 0;
    tree.visit_leaves([&](const Tree::Box& box, int label) {
      double x0 = box.low[0], x1 = box.high[0];
      double y0 = box.low[1], y1 = box.high[1];
      if (normal_scale) {
        x0 = normal_cdf(x0);
        x1 = normal_cdf(x1);
        y0 = normal_cdf(y0);
        y1 = normal_cdf(y1);
      }
      // centers c with x0 < c <= x1 (left child owns its threshold)
      const int c0 = first_center_above(x0);
      const int c1 = first_center_above(x1);
      const int r0 = first_center_above(y0);
      const int r1 = first_center_above(y1);
      if (c1 <= c0 || r1 <= r0) return;
      long inside_cells = 0;
      for (int c = c0; c < c1; ++c) {
        const int lo = std::max(r0, row_lo[static_cast<std::size_t>(c)]);
        const int hi = std::min(r1, row_hi[static_cast<std::size_t>(c)]);
        if (hi > lo) inside_cells += hi - lo;
      }
      const long cells = static_cast<long>(c1 - c0) * (r1 - r0);
      err += label == 1 ? cells - inside_cells : inside_cells;
    });
    return err;
  }
};

}  // namespace

std::vector<CircleRow> simulate_circle(const CircleConfig& config) {
  if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (config.n_list.empty()) throw ConfigError("n list must be nonempty");
  if (config.grid < 2) throw ConfigError("grid must be >= 2");
  if (config.max_depth < 1) throw ConfigError("max_depth must be >= 1");
  for (long n : config.n_list)
    if (n < 1) throw ConfigError("every n must be >= 1");

  const CircleGrid grid(config.grid);
  const double r2 = 0.5 / M_PI;
  const double total_cells = static_cast<double>(config.grid) * config.grid;
  const std::size_t cells = config.n_list.size();
  std::vector<CircleRow> rows(cells);

  run_cells(cells, config.workers, [&](std::size_t g) {
    const long n = config.n_list[g];
    std::vector<double> pu(static_cast<std::size_t>(2 * n));
    std::vector<double> pz(static_cast<std::size_t>(2 * n));
    std::vector<std::uint8_t> y(static_cast<std::size_t>(n));
    double sr = 0.0, sq = 0.0, sr2 = 0.0, sq2 = 0.0, srq = 0.0;
    for (long rep = 0; rep < config.replicates; ++rep) {
      Rng rng(mix_seed(config.seed, g, static_cast<std::uint64_t>(rep)));
      for (long i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i);
        const double ux = rng.next_double();
        const double uy = rng.next_double();
        pu[2 * j] = ux;
        pu[2 * j + 1] = uy;
        pz[2 * j] = normal_quantile(ux);
        pz[2 * j + 1] = normal_quantile(uy);
        const double dx = ux - 0.5, dy = uy - 0.5;
        y[j] = dx * dx + dy * dy < r2 ? 1 : 0;
      }
      const Tree tu = Tree::fit(pu, 2, y, config.max_depth);
      const Tree tz = Tree::fit(pz, 2, y, config.max_depth);
      const double eq = grid.misclassified_cells(tu, false) / total_cells;
      const double er = grid.misclassified_cells(tz, true) / total_cells;
      sr += er;
      sq += eq;
      sr2 += er * er;
      sq2 += eq * eq;
      srq += er * eq;
    }
    const auto reps = static_cast<double>(config.replicates);
    CircleRow& row = rows[g];
    row.n = n;
    row.reps = config.replicates;
    row.mae_raw = sr / reps;
    row.mae_quantile = sq / reps;
    row.ratio = row.mae_raw / row.mae_quantile;
    const double vr = std::max(0.0, sr2 / reps - row.mae_raw * row.mae_raw);
    const double vq = std::max(0.0, sq2 / reps - row.mae_quantile * row.mae_quantile);
    const double cov = srq / reps - row.mae_raw * row.mae_quantile;
    row.se_raw = std::sqrt(vr / reps);
    row.se_quantile = std::sqrt(vq / reps);
    const double rel = vr / (row.mae_raw * row.mae_raw) +
                       vq / (row.mae_quantile * row.mae_quantile) -
                       2.0 * cov / (row.mae_raw * row.mae_quantile);
    row.se_ratio = row.ratio * std::sqrt(std::max(0.0, rel) / reps);
  });
  return rows;
}

}  // namespace splitrisk
