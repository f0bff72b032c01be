#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitrisk/montecarlo.hpp"

namespace splitrisk {

// Replicate budget: paper = 1e5 per grid point, desk = 1e4.
enum class Profile : std::uint8_t { Paper, Desk };

Profile parse_profile(std::string_view token);
long profile_replicates(Profile profile);

// Valid ids: rmse, mae, beta, common, mixture, parametric, ecdf, splitsets,
// circle, bitriangle.
const std::vector<std::string>& figure_ids();

struct FigureRequest {
  std::string id;
  Profile profile = Profile::Desk;
  std::uint64_t seed = 20240501;
  int workers = 1;
  std::string out_dir = ".";
  bool plot = false;
};

// Runs the preconfigured experiment behind one figure id and writes its CSV
// bundle (and SVGs with plot=true). Returns the paths written.
std::vector<std::string> run_figure(const FigureRequest& request);

std::string risk_curves_csv(const std::vector<RiskCurve>& curves);

}  // namespace splitrisk
