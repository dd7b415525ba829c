#include "simim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "simim/rng.hpp"

namespace simim {

TimeGrid::TimeGrid(std::vector<double> dates, double mpor_years)
    : times(std::move(dates)), mpor(mpor_years) {
  if (times.size() < 2) {
    throw std::invalid_argument("TimeGrid: need at least two dates");
  }
  if (times.front() != 0.0) {
    throw std::invalid_argument("TimeGrid: first date must be 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("TimeGrid: dates must be strictly increasing");
    }
  }
  if (!(mpor > 0.0)) {
    throw std::invalid_argument("TimeGrid: MPoR must be > 0");
  }
}

TimeGrid TimeGrid::monthly(double horizon, double mpor_years) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("TimeGrid::monthly: horizon must be > 0");
  }
  const auto n_months = static_cast<std::size_t>(std::floor(horizon * 12.0 + 1e-9));
  std::vector<double> dates;
  dates.reserve(n_months + 2);
  for (std::size_t k = 0; k <= n_months; ++k) {
    dates.push_back(static_cast<double>(k) / 12.0);
  }
  if (dates.back() < horizon - 1e-12) {
    dates.push_back(horizon);
  } else {
    dates.back() = horizon;  // pin the last date to the exact horizon
  }
  return TimeGrid(std::move(dates), mpor_years);
}

TimeGrid TimeGrid::monthly_with_margin_dates(double horizon, double mpor_years) {
  TimeGrid base = monthly(horizon, mpor_years);
  // Insert each date's margin date t - mpor so the lagged collateral state is
  // a simulated state rather than an interpolated one; the realized V - VM
  // gap then carries the full MPoR variance that the IM quantile assumes.
  std::vector<double> dates = base.times;
  for (double t : base.times) {
    const double s = t - mpor_years;
    if (s > 1e-12) dates.push_back(s);
  }
  std::sort(dates.begin(), dates.end());
  std::vector<double> merged;
  merged.reserve(dates.size());
  for (double t : dates) {
    if (merged.empty() || t - merged.back() > 1e-9) merged.push_back(t);
  }
  return TimeGrid(std::move(merged), mpor_years);
}

std::size_t TimeGrid::index_at_or_before(double t) const {
  if (t < times.front() - 1e-12) {
    throw std::domain_error("TimeGrid: time precedes the grid");
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

PathCube::PathCube(TimeGrid grid, std::size_t n_paths, HullWhiteParams params,
                   std::uint64_t seed)
    : grid_(std::move(grid)),
      n_paths_(n_paths),
      params_(params),
      seed_(seed),
      rates_(n_paths * grid_.n_dates(), 0.0),
      log_mm_(n_paths * grid_.n_dates(), 0.0) {
  if (n_paths_ == 0) {
    throw std::invalid_argument("PathCube: need at least one path");
  }
}

void parallel_over_paths(std::size_t n_paths, unsigned n_threads,
                         const std::function<void(std::size_t)>& fn) {
  if (n_threads <= 1 || n_paths < 2) {
    for (std::size_t p = 0; p < n_paths; ++p) fn(p);
    return;
  }
  const unsigned workers = std::min<unsigned>(n_threads, static_cast<unsigned>(n_paths));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t p = w; p < n_paths; p += workers) fn(p);
    });
  }
  for (auto& th : pool) th.join();
}

PathCube simulate_paths(const HullWhiteModel& model, const TimeGrid& grid, std::size_t n_paths,
                        std::uint64_t seed, unsigned n_threads) {
  if (n_paths < 1) {
    throw std::invalid_argument("simulate_paths: need at least one path");
  }
  if (grid.horizon() > model.curve().max_time()) {
    throw std::invalid_argument("simulate_paths: grid extends beyond the discount curve");
  }
  const std::size_t n_dates = grid.n_dates();

  // Per-step coefficients are path independent; precompute once.
  std::vector<HullWhiteModel::Transition> steps;
  std::vector<double> phis(n_dates), phi_ints(n_dates);
  steps.reserve(n_dates - 1);
  for (std::size_t k = 0; k + 1 < n_dates; ++k) {
    steps.push_back(model.transition(grid.times[k + 1] - grid.times[k]));
  }
  for (std::size_t k = 0; k < n_dates; ++k) {
    phis[k] = model.phi(grid.times[k]);
    phi_ints[k] = model.phi_integral(grid.times[k]);
  }

  PathCube cube(grid, n_paths, model.params(), seed);
  const double r0 = model.initial_short_rate();

  parallel_over_paths(n_paths, n_threads, [&](std::size_t p) {
    double x = 0.0;  // r - phi, zero at t=0
    double y = 0.0;  // int_0^t x ds
    cube.short_rate_at(p, 0) = r0;
    cube.log_money_market_at(p, 0) = 0.0;
    for (std::size_t k = 0; k + 1 < n_dates; ++k) {
      const auto& tr = steps[k];
      const NormalPair z = normal_pair(seed, 0, p, k);
      y += x * tr.b + tr.coef_yx * z.z0 + tr.sd_y_res * z.z1;
      x = x * tr.decay + tr.sd_x * z.z0;
      cube.short_rate_at(p, k + 1) = x + phis[k + 1];
      cube.log_money_market_at(p, k + 1) = y + phi_ints[k + 1];
    }
  });
  return cube;
}

}  // namespace simim
