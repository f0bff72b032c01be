#pragma once

#include <string>

#include "splitrisk/montecarlo.hpp"

namespace splitrisk {

// Static SVG of MAE against p, one polyline per (kind, n). A pure view of the
// curve data: emitting it never alters CSV content.
std::string risk_curve_svg(const RiskCurve& curve, int width = 900,
                           int height = 560);

}  // namespace splitrisk
