#include "splitrisk/casestudy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "splitrisk/errors.hpp"
#include "splitrisk/rng.hpp"

namespace splitrisk {

namespace {

constexpr long kMaxRetriesPerReplicate = 100000;

// Minimal CSV line splitter with double-quote support.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool is_missing(const std::string& field) { return field.empty() || field == "NA"; }

}  // namespace

LabeledDataset load_labeled_csv(const std::string& path,
                                const std::string& value_column,
                                const std::string& label_column,
                                const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file '" + path + "'");
  const auto header = split_csv_line(line);
  long value_idx = -1, label_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == value_column) value_idx = static_cast<long>(i);
    if (header[i] == label_column) label_idx = static_cast<long>(i);
  }
  if (value_idx < 0) throw DataError("column '" + value_column + "' not found");
  if (label_idx < 0) throw DataError("column '" + label_column + "' not found");

  LabeledDataset data;
  data.value_column = value_column;
  data.label_column = label_column;
  data.positive_label = positive_label;
  std::set<std::string> other_labels;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<long>(fields.size()) <= std::max(value_idx, label_idx))
      throw DataError("line " + std::to_string(lineno) + ": too few fields");
    const std::string& vf = fields[static_cast<std::size_t>(value_idx)];
    const std::string& lf = fields[static_cast<std::size_t>(label_idx)];
    if (is_missing(vf) || is_missing(lf)) {
      ++data.dropped_rows;
      continue;
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(vf, &used);
      if (used != vf.size()) throw std::invalid_argument(vf);
    } catch (const std::exception&) {
      throw DataError("line " + std::to_string(lineno) + ": bad number '" + vf + "'");
    }
    if (!std::isfinite(v))
      throw DataError("line " + std::to_string(lineno) + ": non-finite value");
    std::uint8_t y = 0;
    if (lf == positive_label) {
      y = 1;
    } else {
      other_labels.insert(lf);
      y = 0;
    }
    data.value.push_back(v);
    data.label.push_back(y);
  }
  if (other_labels.size() > 1) {
    std::ostringstream os;
    os << "label column has more than two categories: ";
    bool first = true;
    for (const auto& s : other_labels) {
      if (!first) os << ", ";
      os << "'" << s << "'";
      first = false;
    }
    throw DataError(os.str());
  }
  if (data.value.empty()) throw DataError("no usable rows in '" + path + "'");
  return data;
}

namespace {

// Sorted view of the dataset with prefix positive counts so that the
// misclassification of any threshold costs one binary search.
struct SortedData {
  std::vector<double> values;      // ascending
  std::vector<long> prefix_pos;    // prefix_pos[i] = positives among first i
  long total_pos = 0;
  long size = 0;

  explicit SortedData(const LabeledDataset& d) {
    size = static_cast<long>(d.value.size());
    std::vector<std::size_t> order(d.value.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d.value[a] < d.value[b];
    });
    values.reserve(order.size());
    prefix_pos.assign(order.size() + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      values.push_back(d.value[order[i]]);
      prefix_pos[i + 1] = prefix_pos[i] + d.label[order[i]];
    }
    total_pos = prefix_pos.back();
  }

  long count_le(double t) const {
    return static_cast<long>(
        std::upper_bound(values.begin(), values.end(), t) - values.begin());
  }

  long count_lt(double t) const {
    return static_cast<long>(
        std::lower_bound(values.begin(), values.end(), t) - values.begin());
  }

  // Classify high (=1) iff value > t, mirroring the rain rule. The R scale
  // keeps its boundary with the high class (value >= t), the sweep-right
  // convention; otherwise the point at R itself would stay misclassified no
  // matter how large the subsample grows.
  double error_rate(double t, bool boundary_high = false) const {
    const long low_count = boundary_high ? count_lt(t) : count_le(t);
    const long pos_low = prefix_pos[static_cast<std::size_t>(low_count)];
    const long neg_high = (size - low_count) - (total_pos - pos_low);
    return static_cast<double>(pos_low + neg_high) / static_cast<double>(size);
  }

  double ecdf(double x) const {
    return static_cast<double>(count_le(x)) / static_cast<double>(size);
  }

  // min{v in data : eF(v) >= u}
  double ecdf_quantile(double u) const {
    auto idx = static_cast<long>(std::ceil(u * static_cast<double>(size)));
    idx = std::clamp<long>(idx, 1, size);
    return values[static_cast<std::size_t>(idx - 1)];
  }

  // sup{v : eF(v) <= u}; classification threshold of the U scale.
  double u_threshold(double u) const {
    // largest rank c with c/size <= u
    auto c = static_cast<long>(std::floor(u * static_cast<double>(size)));
    c = std::clamp<long>(c, 0, size);
    if (c == 0) return -std::numeric_limits<double>::infinity();
    return values[static_cast<std::size_t>(c - 1)];
  }
};

}  // namespace

std::vector<CaseStudyRow> resample_experiment(const LabeledDataset& data,
                                              std::span<const long> n_list,
                                              long replicates,
                                              std::uint64_t seed, int workers) {
  const long dsize = static_cast<long>(data.value.size());
  if (dsize < 2) throw ConfigError("dataset must have at least 2 rows");
  if (replicates < 1) throw ConfigError("replicates must be >= 1");
  if (n_list.empty()) throw ConfigError("n list must be nonempty");
  long pos = 0;
  for (auto y : data.label) pos += y;
  if (pos == 0 || pos == dsize)
    throw ConfigError("both classes must be present in the dataset");
  for (long n : n_list) {
    if (n < 2) throw ConfigError("every n must be >= 2");
    if (n > dsize) throw ConfigError("n exceeds dataset size");
  }

  const SortedData sorted(data);
  std::vector<CaseStudyRow> rows(n_list.size());
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    std::vector<long> index(static_cast<std::size_t>(dsize));
    std::iota(index.begin(), index.end(), 0);
    std::vector<long> swapped;
    for (;;) {
      const std::size_t g = next.fetch_add(1);
      if (g >= n_list.size()) break;
      const long n = n_list[g];
      swapped.resize(static_cast<std::size_t>(n));

      double sx = 0, su = 0, sl = 0, sr = 0;
      double ex = 0, eu = 0, el = 0, er = 0;
      double ex2 = 0, eu2 = 0, el2 = 0, er2 = 0;
      long retries = 0;

      for (long rep = 0; rep < replicates; ++rep) {
        Rng rng(mix_seed(seed, g, static_cast<std::uint64_t>(rep)));
        double lx = 0, rx = 0;
        for (long attempt = 0;; ++attempt) {
          if (attempt > kMaxRetriesPerReplicate)
            throw NumericError("resample_experiment: cannot draw a two-class sample");
          // Partial Fisher-Yates; touched entries are restored afterwards so
          // the index array stays the identity permutation.
          double max0 = -std::numeric_limits<double>::infinity();
          double min0 = std::numeric_limits<double>::infinity();
          double max1 = max0, min1 = min0;
          long ones = 0;
          for (long i = 0; i < n; ++i) {
            const long j =
                i + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(dsize - i)));
            std::swap(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
            swapped[static_cast<std::size_t>(i)] = j;
            const long row = index[static_cast<std::size_t>(i)];
            const double v = data.value[static_cast<std::size_t>(row)];
            if (data.label[static_cast<std::size_t>(row)]) {
              ++ones;
              max1 = std::max(max1, v);
              min1 = std::min(min1, v);
            } else {
              max0 = std::max(max0, v);
              min0 = std::min(min0, v);
            }
          }
          // undo the partial shuffle so index stays the identity permutation
          for (long i = n - 1; i >= 0; --i)
            std::swap(index[static_cast<std::size_t>(i)],
                      index[static_cast<std::size_t>(swapped[static_cast<std::size_t>(i)])]);
          if (ones == 0 || ones == n) {
            ++retries;
            continue;
          }
          // Orientation: the class entirely below the gap supplies L_X.
          if (max0 < min1) {
            lx = max0;
            rx = min1;
          } else if (max1 < min0) {
            lx = max1;
            rx = min0;
          } else {
            throw ModelViolationError(
                "subsample labels are not consistent with a single threshold");
          }
          break;
        }

        const double tx = 0.5 * (lx + rx);
        const double ustar = 0.5 * (sorted.ecdf(lx) + sorted.ecdf(rx));
        const double tu = sorted.u_threshold(ustar);

        const double vx = sorted.error_rate(tx);
        const double vu = sorted.error_rate(tu);
        const double vl = sorted.error_rate(lx);
        const double vr = sorted.error_rate(rx, /*boundary_high=*/true);
        sx += tx;
        su += sorted.ecdf_quantile(ustar);
        sl += lx;
        sr += rx;
        ex += vx;
        eu += vu;
        el += vl;
        er += vr;
        ex2 += vx * vx;
        eu2 += vu * vu;
        el2 += vl * vl;
        er2 += vr * vr;
      }

      const auto reps = static_cast<double>(replicates);
      CaseStudyRow& row = rows[g];
      row.n = n;
      row.reps = replicates;
      row.retries = retries;
      row.split_x = sx / reps;
      row.split_u = su / reps;
      row.split_l = sl / reps;
      row.split_r = sr / reps;
      row.err_x = ex / reps;
      row.err_u = eu / reps;
      row.err_l = el / reps;
      row.err_r = er / reps;
      row.se_x = std::sqrt(std::max(0.0, ex2 / reps - row.err_x * row.err_x) / reps);
      row.se_u = std::sqrt(std::max(0.0, eu2 / reps - row.err_u * row.err_u) / reps);
      row.se_l = std::sqrt(std::max(0.0, el2 / reps - row.err_l * row.err_l) / reps);
      row.se_r = std::sqrt(std::max(0.0, er2 / reps - row.err_r * row.err_r) / reps);
    }
  };

  const int count = static_cast<int>(std::min<std::size_t>(
      n_list.size(), static_cast<std::size_t>(std::max(workers, 1))));
  if (count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace splitrisk
