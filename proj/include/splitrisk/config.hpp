#pragma once

#include <map>
#include <string>

#include "splitrisk/montecarlo.hpp"

namespace splitrisk {

// Flat key = value configuration, '#' comments. Unknown keys are rejected.
//
// Recognized keys:
//   distribution        e.g. uniform, beta(2,10), normal(0,1), mixture(w,m1,s1,m2,s2)
//   train_distribution  mismatch experiments; bitriangle/twopoint follow the grid p
//   estimators          comma list of Y,L,R,B,RB,SL,SR,SB,X_SCALE
//   transform           none | true-cdf | parametric-normal | ecdf
//   n                   comma list of sample sizes
//   p                   comma list and/or a:b:step ranges, values in (0,1)
//   replicates          Monte Carlo replicates per grid point
//   unlabeled           unlabeled count m for the ecdf transform
//   unlabeled_ratio     alternative to `unlabeled`: m = round(ratio * n)
//   seed                master seed (uint64)
//   workers             worker threads
class KeyValueFile {
 public:
  static KeyValueFile parse_file(const std::string& path);
  static KeyValueFile parse_text(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct SimulationSpec {
  ExperimentConfig config;
  bool unlabeled_is_ratio = false;
  double unlabeled_ratio = 0.0;
};

// Builds an experiment configuration from a parsed key-value file.
SimulationSpec simulation_from_config(const KeyValueFile& file);

// "0.1,0.2" and "0.05:0.95:0.05" forms, also mixed with ';'-free commas.
std::vector<double> parse_double_list(const std::string& text);
std::vector<long> parse_long_list(const std::string& text);

}  // namespace splitrisk
