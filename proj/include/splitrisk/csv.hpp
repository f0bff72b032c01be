#pragma once

#include <string>
#include <vector>

#include "splitrisk/casestudy.hpp"
#include "splitrisk/montecarlo.hpp"
#include "splitrisk/tree.hpp"

namespace splitrisk {

// Shortest round-trip decimal form of a double (std::to_chars), '.' decimal
// separator; bit-stable across platforms.
std::string format_double(double v);
std::string format_long(long v);

// All writers emit a header row, comma separators and LF line endings.
std::string risk_curve_csv(const RiskCurve& curve);
std::string split_sets_csv(const std::vector<SplitSetsRow>& rows);
std::string circle_csv(const std::vector<CircleRow>& rows);
std::string case_study_csv(const std::vector<CaseStudyRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace splitrisk
