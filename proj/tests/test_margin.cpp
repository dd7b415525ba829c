#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "simim/margin.hpp"
#include "simim/rng.hpp"

using namespace simim;

namespace {

HullWhiteModel flat_model(double a = 0.05, double sigma = 0.01, double rate = 0.02) {
  return HullWhiteModel(HullWhiteParams{a, sigma}, DiscountCurve::flat(rate));
}

SwapSpec atm_swap(const HullWhiteModel& model, double maturity, bool payer = true) {
  SwapSpec spec;
  spec.pay_fixed = payer;
  spec.maturity = maturity;
  spec.fixed_rate = par_rate(model, spec);
  return spec;
}

/// Hand cube on an explicit grid with per-path value rows.
ValueCube hand_cube(const TimeGrid& grid, const std::vector<std::vector<double>>& rows) {
  ValueCube cube(grid, rows.size());
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (std::size_t k = 0; k < grid.n_dates(); ++k) {
      cube.at(p, k) = rows[p][k];
    }
  }
  return cube;
}

PathCube zero_paths(const TimeGrid& grid, std::size_t n_paths, const HullWhiteModel& model) {
  PathCube paths(grid, n_paths, model.params(), 0);
  return paths;  // all states zero; only used where revaluation never happens
}

NodeValueFn must_not_revalue() {
  return [](double, double) -> double {
    throw std::logic_error("revaluation must not be reached when the lag is on-grid");
  };
}

}  // namespace

TEST_CASE("vm lag on a hand-built grid") {
  // Values {100, 130, 90} with the MPoR equal to one grid step: the margin
  // date of each node is the previous one, clamped at t=0.
  const HullWhiteModel model = flat_model();
  const TimeGrid grid({0.0, 0.5, 1.0}, 0.5);
  const ValueCube values = hand_cube(grid, {{100.0, 130.0, 90.0}});
  const PathCube paths = zero_paths(grid, 1, model);
  const auto vm = compute_vm(values, paths, model, must_not_revalue(), grid.mpor);
  CHECK(vm[0] == 100.0);
  CHECK(vm[1] == 100.0);
  CHECK(vm[2] == 130.0);
}

TEST_CASE("vm lag property: random sequences against a reference shift") {
  const HullWhiteModel model = flat_model();
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> value_dist(-500.0, 500.0);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n_dates = 4 + rep % 7;
    const std::size_t lag_steps = 1 + rep % 3;
    std::vector<double> dates(n_dates);
    for (std::size_t k = 0; k < n_dates; ++k) dates[k] = 0.25 * k;
    if (lag_steps >= n_dates) continue;
    const TimeGrid grid(dates, 0.25 * lag_steps);
    std::vector<std::vector<double>> rows(3, std::vector<double>(n_dates));
    for (auto& row : rows) {
      for (auto& v : row) v = value_dist(gen);
    }
    const ValueCube values = hand_cube(grid, rows);
    const PathCube paths = zero_paths(grid, rows.size(), model);
    const auto vm = compute_vm(values, paths, model, must_not_revalue(), grid.mpor);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      for (std::size_t k = 0; k < n_dates; ++k) {
        const std::size_t lagged = k >= lag_steps ? k - lag_steps : 0;
        CHECK(vm[p * n_dates + k] == rows[p][lagged]);
      }
    }
  }
}

TEST_CASE("vanishing mpor makes vm track the value cube") {
  const HullWhiteModel model = flat_model();
  const TimeGrid grid = TimeGrid::monthly(5.0, 1e-9);
  const PathCube paths = simulate_paths(model, grid, 200, 42, 4);
  const NettingSet set{atm_swap(model, 5.0), "swap"};
  const ValueCube values = build_value_cube(model, set, paths, 4);
  const NodePricer pricer(model, set);
  const auto vm = compute_vm(values, paths, pricer, grid.mpor);
  for (std::size_t p = 0; p < values.n_paths(); ++p) {
    for (std::size_t k = 0; k < grid.n_dates(); ++k) {
      CHECK(std::abs(values.value(p, k) - vm[p * grid.n_dates() + k]) < 1e-6 * 1e6);
    }
  }
}

TEST_CASE("zero volatility: no gap beyond deterministic drift, no initial margin") {
  const HullWhiteModel model = flat_model(0.05, 1e-12);
  const TimeGrid grid = TimeGrid::monthly(5.0, 10.0 / 365.0);
  const PathCube paths = simulate_paths(model, grid, 4, 1, 1);
  const NettingSet set{atm_swap(model, 5.0), "swap"};
  const ValueCube values = build_value_cube(model, set, paths, 1);
  const NodePricer pricer(model, set);
  const MarginProfile profile =
      build_margin_profile(pricer, paths, values, 0.99, grid.mpor, 1);
  // With continuous accrual on both legs the deterministic drift is the
  // small intra-period compounding mismatch, well under 5e-4 x notional/year.
  const double drift_bound = 5e-4 * 1e6 * grid.mpor;
  const auto diffusion_im =
      compute_im_general(pricer, paths, 0.99, grid.mpor, ImScheme::diffusion_only);
  for (std::size_t p = 0; p < values.n_paths(); ++p) {
    for (std::size_t k = 0; k < grid.n_dates(); ++k) {
      const double gap = values.value(p, k) - profile.vm_at(p, k);
      CHECK(std::abs(gap) <= drift_bound);
      // Diffusion IM collapses with the vol; the loss-quantile scheme keeps
      // only the deterministic settlement pull, bounded by the same drift.
      CHECK(diffusion_im[p * grid.n_dates() + k] <= 1e-5);
      CHECK(profile.im_at(p, k) <= drift_bound + 1e-5);
      CHECK(profile.im_at(p, k) >= 0.0);
    }
  }
}

TEST_CASE("initial margin is nonnegative and vanishes after expiry") {
  const HullWhiteModel model = flat_model();
  const TimeGrid grid = TimeGrid::monthly(4.0, 10.0 / 365.0);
  for (std::uint64_t seed : {3u, 17u}) {
    const PathCube paths = simulate_paths(model, grid, 300, seed, 4);
    SwapSpec fwd;
    fwd.start = 3.0;
    fwd.maturity = 8.0;
    const SwaptionSpec spec = SwaptionSpec::make(1e6, 3.0, 5.0, par_rate(model, fwd), true);
    const NettingSet set{spec, "swaption"};
    const ValueCube values = build_value_cube(model, set, paths, 4);
    const NodePricer pricer(model, set);
    const MarginProfile profile =
        build_margin_profile(pricer, paths, values, 0.99, grid.mpor, 4);
    for (std::size_t p = 0; p < values.n_paths(); ++p) {
      for (std::size_t k = 0; k < grid.n_dates(); ++k) {
        CHECK(profile.im_at(p, k) >= 0.0);
        // Margin state past expiry carries no risk.
        if (grid.times[k] - grid.mpor >= spec.expiry) {
          CHECK(profile.im_at(p, k) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("delta-normal IM at t=0 agrees with a brute-force quantile") {
  // 100k-sample 99% quantile of the exact MPoR value change at the initial
  // node, against z * |dV/dr| * sd(r over the MPoR).
  const HullWhiteModel model = flat_model();
  const NettingSet set{atm_swap(model, 5.0), "swap"};
  const NodePricer pricer(model, set);
  const double mpor = 10.0 / 365.0;
  const double r0 = model.initial_short_rate();
  const double v0 = pricer.value(0.0, r0);

  const double analytic_im =
      normal_quantile(0.99) * std::abs(pricer.delta(0.0, r0)) *
      model.conditional_short_rate_sd(mpor);

  const std::size_t n = 100'000;
  std::vector<double> changes(n);
  const double sd = model.conditional_short_rate_sd(mpor);
  const double mean_shift = model.phi(mpor);  // x(0)=0: E[r(mpor)] = phi(mpor)
  for (std::size_t i = 0; i < n; ++i) {
    const NormalPair z = normal_pair(5555, 9, i, 0);
    const double r_lagged = mean_shift + sd * z.z0;
    changes[i] = pricer.value(mpor, r_lagged) - v0;
  }
  std::sort(changes.begin(), changes.end());
  const double quantile = changes[static_cast<std::size_t>(0.99 * n)];
  CHECK(std::abs(analytic_im - quantile) < 0.05 * quantile);
}

TEST_CASE("apply alpha scales IM linearly and leaves VM alone") {
  const HullWhiteModel model = flat_model();
  const TimeGrid grid = TimeGrid::monthly(2.0, 10.0 / 365.0);
  const PathCube paths = simulate_paths(model, grid, 64, 9, 2);
  const NettingSet set{atm_swap(model, 2.0), "swap"};
  const ValueCube values = build_value_cube(model, set, paths, 2);
  const NodePricer pricer(model, set);
  const MarginProfile base = build_margin_profile(pricer, paths, values, 0.99, grid.mpor, 2);

  const MarginProfile same = apply_alpha(base, 0.0);
  CHECK(same == base);

  const MarginProfile doubled = apply_alpha(base, 1.0);
  CHECK(doubled.vm == base.vm);
  for (std::size_t i = 0; i < base.im.size(); ++i) {
    CHECK(doubled.im[i] == 2.0 * base.im[i]);
  }

  CHECK_THROWS_AS(apply_alpha(base, -0.1), std::domain_error);

  // Composition multiplies the factors: (1+a)(1+b), not 1+(a+b).
  const MarginProfile composed = apply_alpha(apply_alpha(base, 0.5), 0.2);
  for (std::size_t i = 0; i < base.im.size(); ++i) {
    CHECK(composed.im[i] == doctest::Approx(1.5 * 1.2 * base.im[i]).epsilon(1e-14));
  }
}

TEST_CASE("alpha scaling magnitude example") {
  // A node with IM = 100 scaled by alpha = 0.655038 carries 165.5038.
  MarginProfile profile = MarginProfile::zero(1, 1);
  profile.im[0] = 100.0;
  const MarginProfile scaled = apply_alpha(profile, 0.655038);
  CHECK(scaled.im[0] == doctest::Approx(165.5038).epsilon(1e-12));
}

TEST_CASE("margin profile construction validates inputs") {
  const HullWhiteModel model = flat_model();
  const TimeGrid grid = TimeGrid::monthly(1.0, 10.0 / 365.0);
  const PathCube paths = simulate_paths(model, grid, 8, 2, 1);
  const NettingSet set{atm_swap(model, 1.0), "swap"};
  const ValueCube values = build_value_cube(model, set, paths, 1);
  const NodePricer pricer(model, set);
  CHECK_THROWS_AS(build_margin_profile(pricer, paths, values, 0.4, grid.mpor, 1),
                  std::domain_error);
  CHECK_THROWS_AS(build_margin_profile(pricer, paths, values, 0.99, -1.0, 1),
                  std::domain_error);
  const TimeGrid other = TimeGrid::monthly(2.0, 10.0 / 365.0);
  const PathCube mismatched = simulate_paths(model, other, 8, 2, 1);
  CHECK_THROWS_AS(build_margin_profile(pricer, mismatched, values, 0.99, grid.mpor, 1),
                  std::domain_error);
}
