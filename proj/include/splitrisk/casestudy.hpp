#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace splitrisk {

struct LabeledDataset {
  std::vector<double> value;
  std::vector<std::uint8_t> label;  // 1 = positive/high class
  long dropped_rows = 0;            // rows removed for missing fields
  std::string value_column;
  std::string label_column;
  std::string positive_label;
};

// Loads (value, label) columns from a CSV file. Rows with a missing value in
// either column (empty field or "NA") are dropped and counted. The label
// column must contain exactly the positive string and one other value.
LabeledDataset load_labeled_csv(const std::string& path,
                                const std::string& value_column,
                                const std::string& label_column,
                                const std::string& positive_label);

struct CaseStudyRow {
  long n = 0;
  // Average estimated split point per interpolation scale.
  double split_x = 0.0;
  double split_u = 0.0;
  double split_l = 0.0;
  double split_r = 0.0;
  // Average misclassification over the full dataset per scale.
  double err_x = 0.0;
  double err_u = 0.0;
  double err_l = 0.0;
  double err_r = 0.0;
  double se_x = 0.0;
  double se_u = 0.0;
  double se_l = 0.0;
  double se_r = 0.0;
  long reps = 0;
  long retries = 0;  // one-class subsamples redrawn
};

// Resampling protocol: subsample n rows without replacement (redrawing
// one-class subsamples), form the gap (L_X, R_X), classify the full dataset
// with the threshold of each scale (X midpoint, full-data ECDF midpoint, L,
// R; high class strictly above the threshold) and average split point and
// error over replicates.
std::vector<CaseStudyRow> resample_experiment(const LabeledDataset& data,
                                              std::span<const long> n_list,
                                              long replicates,
                                              std::uint64_t seed,
                                              int workers = 1);

}  // namespace splitrisk
