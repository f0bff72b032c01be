#include "splitrisk/svg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "splitrisk/csv.hpp"

namespace splitrisk {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string risk_curve_svg(const RiskCurve& curve, int width, int height) {
  const double margin_l = 60, margin_r = 160, margin_t = 24, margin_b = 42;
  const double plot_w = width - margin_l - margin_r;
  const double plot_h = height - margin_t - margin_b;

  double max_mae = 0.0;
  for (const RiskPoint& pt : curve.points) max_mae = std::max(max_mae, pt.mae);
  if (max_mae <= 0.0) max_mae = 1.0;

  // series keyed by (kind, n), points ordered by p
  std::map<std::pair<int, long>, std::vector<const RiskPoint*>> series;
  for (const RiskPoint& pt : curve.points)
    series[{static_cast<int>(pt.kind), pt.n}].push_back(&pt);

  auto sx = [&](double p) { return margin_l + p * plot_w; };
  auto sy = [&](double v) { return margin_t + (1.0 - v / max_mae) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << margin_l << "\" y=\"16\" font-size=\"13\">"
     << "MAE vs p (" << (curve.train.empty() ? curve.distribution
                                             : curve.train + "->" + curve.distribution)
     << ", " << transform_name(curve.transform) << ")</text>\n";

  // axes
  os << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1)
     << "\" y2=\"" << sy(0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0)
     << "\" y2=\"" << sy(max_mae) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    os << "<text x=\"" << sx(p) - 8 << "\" y=\"" << sy(0) + 16
       << "\" font-size=\"10\">" << format_double(p) << "</text>\n";
    const double v = max_mae * i / 5.0;
    os << "<text x=\"4\" y=\"" << sy(v) + 4 << "\" font-size=\"10\">"
       << format_double(v).substr(0, 7) << "</text>\n";
  }

  int color = 0, legend_y = 0;
  for (const auto& [key, pts] : series) {
    const char* stroke = kPalette[color % 8];
    std::ostringstream path;
    for (std::size_t i = 0; i < pts.size(); ++i)
      path << (i == 0 ? "M" : "L") << sx(pts[i]->p) << ' ' << sy(pts[i]->mae);
    os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << width - margin_r + 12 << "\" y=\""
       << margin_t + 14 + 16 * legend_y << "\" font-size=\"11\" fill=\"" << stroke
       << "\">" << estimator_name(static_cast<Estimator>(key.first))
       << " n=" << key.second << "</text>\n";
    ++color;
    ++legend_y;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace splitrisk
