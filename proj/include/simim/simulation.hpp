#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "simim/hull_white.hpp"

namespace simim {

/// Exposure dates t0 = 0 < t1 < ... < tN, plus the margin period of risk.
struct TimeGrid {
  std::vector<double> times;
  double mpor = 10.0 / 365.0;

  TimeGrid(std::vector<double> dates, double mpor_years);
  static TimeGrid monthly(double horizon, double mpor_years);
  /// Monthly exposure dates plus each date's margin date (t - mpor), so the
  /// lagged collateral lookup always lands on a simulated state.
  static TimeGrid monthly_with_margin_dates(double horizon, double mpor_years);

  std::size_t n_dates() const { return times.size(); }
  double horizon() const { return times.back(); }
  /// Largest index j with times[j] <= t (t must not precede the grid).
  std::size_t index_at_or_before(double t) const;

  bool operator==(const TimeGrid&) const = default;
};

/// Simulated short-rate states on a (path x date) grid, together with the
/// pathwise integrated short rate (the log money-market account), which makes
/// martingale checks exact rather than quadrature-approximate.
class PathCube {
 public:
  PathCube(TimeGrid grid, std::size_t n_paths, HullWhiteParams params, std::uint64_t seed);

  std::size_t n_paths() const { return n_paths_; }
  const TimeGrid& grid() const { return grid_; }
  const HullWhiteParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }

  double short_rate(std::size_t path, std::size_t date) const {
    return rates_[path * grid_.n_dates() + date];
  }
  /// int_0^{t_k} r ds along the path; exp(-.) discounts pathwise.
  double log_money_market(std::size_t path, std::size_t date) const {
    return log_mm_[path * grid_.n_dates() + date];
  }

  double& short_rate_at(std::size_t path, std::size_t date) {
    return rates_[path * grid_.n_dates() + date];
  }
  double& log_money_market_at(std::size_t path, std::size_t date) {
    return log_mm_[path * grid_.n_dates() + date];
  }

  bool operator==(const PathCube&) const = default;

 private:
  TimeGrid grid_;
  std::size_t n_paths_;
  HullWhiteParams params_;
  std::uint64_t seed_;
  std::vector<double> rates_;
  std::vector<double> log_mm_;
};

/// Exact-in-distribution Hull-White path sampling. Draws are indexed by
/// (seed, path, step), so the cube is identical for any worker count.
PathCube simulate_paths(const HullWhiteModel& model, const TimeGrid& grid, std::size_t n_paths,
                        std::uint64_t seed, unsigned n_threads = 1);

/// Run fn(path) over [0, n_paths) on n_threads workers with a static split.
void parallel_over_paths(std::size_t n_paths, unsigned n_threads,
                         const std::function<void(std::size_t)>& fn);

}  // namespace simim
