#include "splitrisk/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "splitrisk/errors.hpp"
#include "splitrisk/supervised.hpp"

namespace splitrisk {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_long(long v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string risk_curve_csv(const RiskCurve& curve) {
  std::ostringstream os;
  os << "distribution,transform,kind,n,p,mae,mse,bias,se,reps\n";
  const std::string dist_field =
      curve.train.empty() ? curve.distribution
                          : curve.train + "->" + curve.distribution;
  for (const RiskPoint& pt : curve.points) {
    os << dist_field << ',' << transform_name(curve.transform) << ','
       << estimator_name(pt.kind) << ',' << format_long(pt.n) << ','
       << format_double(pt.p) << ',' << format_double(pt.mae) << ','
       << format_double(pt.mse) << ',' << format_double(pt.bias) << ','
       << format_double(pt.se_mae) << ',' << format_long(pt.reps) << '\n';
  }
  return os.str();
}

std::string split_sets_csv(const std::vector<SplitSetsRow>& rows) {
  std::ostringstream os;
  os << "order,n,scale,mae,se,ratio,se_ratio,reps\n";
  for (const SplitSetsRow& r : rows) {
    os << r.order << ',' << format_long(r.n) << ",raw,"
       << format_double(r.mae_raw) << ',' << format_double(r.se_raw) << ','
       << format_double(r.ratio) << ',' << format_double(r.se_ratio) << ','
       << format_long(r.reps) << '\n';
    os << r.order << ',' << format_long(r.n) << ",quantile,"
       << format_double(r.mae_quantile) << ',' << format_double(r.se_quantile)
       << ',' << format_double(r.ratio) << ',' << format_double(r.se_ratio)
       << ',' << format_long(r.reps) << '\n';
  }
  return os.str();
}

std::string circle_csv(const std::vector<CircleRow>& rows) {
  std::ostringstream os;
  os << "n,scale,mae,se,ratio,se_ratio,reps\n";
  for (const CircleRow& r : rows) {
    os << format_long(r.n) << ",raw," << format_double(r.mae_raw) << ','
       << format_double(r.se_raw) << ',' << format_double(r.ratio) << ','
       << format_double(r.se_ratio) << ',' << format_long(r.reps) << '\n';
    os << format_long(r.n) << ",quantile," << format_double(r.mae_quantile)
       << ',' << format_double(r.se_quantile) << ',' << format_double(r.ratio)
       << ',' << format_double(r.se_ratio) << ',' << format_long(r.reps) << '\n';
  }
  return os.str();
}

std::string case_study_csv(const std::vector<CaseStudyRow>& rows) {
  std::ostringstream os;
  os << "n,split_x,split_u,split_l,split_r,err_x,err_u,err_l,err_r,"
        "se_x,se_u,se_l,se_r,reps,retries\n";
  for (const CaseStudyRow& r : rows) {
    os << format_long(r.n) << ',' << format_double(r.split_x) << ','
       << format_double(r.split_u) << ',' << format_double(r.split_l) << ','
       << format_double(r.split_r) << ',' << format_double(r.err_x) << ','
       << format_double(r.err_u) << ',' << format_double(r.err_l) << ','
       << format_double(r.err_r) << ',' << format_double(r.se_x) << ','
       << format_double(r.se_u) << ',' << format_double(r.se_l) << ','
       << format_double(r.se_r) << ',' << format_long(r.reps) << ','
       << format_long(r.retries) << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace splitrisk
