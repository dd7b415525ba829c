#pragma once

#include "simim/alpha_solver.hpp"
#include "simim/config.hpp"

namespace simim {

inline constexpr const char* kVersion = "simim 0.1.0";

/// CVA of one trade against one rating under the three collateralization
/// schemes (none / VM only / VM + IM).
struct SchemeCva {
  Rating rating = Rating::AAA;
  double pd_1y_bps = 0.0;
  double uncollateralized = 0.0;
  double vm_only = 0.0;
  double vm_im = 0.0;
};

struct TradeResult {
  TradeConfig trade;
  std::string label;
  double fixed_rate = 0.0;  // resolved strike (par / forward par when ATM)
  double im_today = 0.0;    // IM_general at t = 0
  std::vector<SchemeCva> schemes;           // per rating, table order
  std::vector<AlphaSurfaceCell> alphas;     // per rating, table order
};

struct PhaseTimings {
  double simulate_s = 0.0;
  double value_s = 0.0;
  double margin_s = 0.0;
  double cva_s = 0.0;
  double alpha_s = 0.0;
  double total_s = 0.0;
};

struct RunReport {
  std::vector<Rating> ratings;
  Rating reference = Rating::AAA;
  std::vector<TradeResult> trades;
  std::uint64_t seed = 0;
  std::size_t n_paths = 0;
  std::string version = kVersion;
  bool any_solver_failure = false;
  PhaseTimings timings;  // reported separately from the deterministic files
};

/// Full batch: simulate -> value -> margin -> CVA -> alpha calibration.
/// Deterministic for a fixed (config, seed) at any thread count.
RunReport run(const RunConfig& config);

}  // namespace simim
