#include "simim/engine.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "simim/margin.hpp"
#include "simim/rng.hpp"

namespace simim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

NettingSet resolve_trade(const HullWhiteModel& model, const TradeConfig& trade) {
  if (trade.type == TradeConfig::Type::swap) {
    SwapSpec swap;
    swap.notional = trade.notional;
    swap.pay_fixed = trade.pay_fixed;
    swap.start = 0.0;
    swap.maturity = trade.maturity_years;
    swap.fixed_rate = trade.strike ? *trade.strike : 0.0;
    if (!trade.strike) {
      swap.fixed_rate = par_rate(model, swap);
    }
    return NettingSet{swap, trade.label()};
  }
  SwapSpec forward;
  forward.notional = trade.notional;
  forward.pay_fixed = trade.pay_fixed;
  forward.start = trade.expiry_years;
  forward.maturity = trade.expiry_years + trade.underlying_tenor_years;
  const double strike = trade.strike ? *trade.strike : par_rate(model, forward);
  return NettingSet{SwaptionSpec::make(trade.notional, trade.expiry_years,
                                       trade.underlying_tenor_years, strike, trade.pay_fixed),
                    trade.label()};
}

TimeGrid grid_for(const SimulationConfig& sim, const MarginConfig& margin, double horizon) {
  if (!sim.explicit_dates.empty()) {
    std::vector<double> dates = sim.explicit_dates;
    if (dates.empty() || dates.front() != 0.0) {
      dates.insert(dates.begin(), 0.0);
    }
    return TimeGrid(std::move(dates), margin.mpor_years());
  }
  return TimeGrid::monthly_with_margin_dates(horizon, margin.mpor_years());
}

}  // namespace

RunReport run(const RunConfig& config) {
  validate(config);
  const auto run_start = Clock::now();

  const MarketData market = build_market_data(config.market);
  const HullWhiteModel model(HullWhiteParams{config.model.a, config.model.sigma}, market.curve);
  const unsigned threads =
      config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());

  RunReport report;
  report.reference = market.ratings.reference();
  report.seed = config.simulation.seed;
  report.n_paths = config.simulation.n_paths;
  for (const CreditCurve& c : market.ratings.curves()) {
    report.ratings.push_back(c.rating());
  }

  for (const TradeConfig& trade : config.trades) {
    TradeResult result;
    result.trade = trade;
    result.label = trade.label();

    const NettingSet netting_set = resolve_trade(model, trade);
    result.fixed_rate = std::holds_alternative<SwapSpec>(netting_set.trade)
                            ? std::get<SwapSpec>(netting_set.trade).fixed_rate
                            : std::get<SwaptionSpec>(netting_set.trade).strike;

    auto t0 = Clock::now();
    const TimeGrid grid = grid_for(config.simulation, config.margin, netting_set.final_time());
    const PathCube paths =
        simulate_paths(model, grid, config.simulation.n_paths, config.simulation.seed, threads);
    report.timings.simulate_s += seconds_since(t0);

    t0 = Clock::now();
    const NodePricer pricer(model, netting_set);
    const ValueCube values = build_value_cube(model, netting_set, paths, threads);
    report.timings.value_s += seconds_since(t0);

    t0 = Clock::now();
    const MarginProfile margins = build_margin_profile(pricer, paths, values,
                                                       config.margin.confidence,
                                                       config.margin.mpor_years(), threads);
    report.timings.margin_s += seconds_since(t0);
    result.im_today = margins.im_at(0, 0);

    t0 = Clock::now();
    const MarginProfile vm_profile = margins.vm_only();
    for (const CreditCurve& credit : market.ratings.curves()) {
      SchemeCva scheme;
      scheme.rating = credit.rating();
      scheme.pd_1y_bps = -std::expm1(-credit.hazard()) * 10'000.0;
      scheme.uncollateralized =
          compute_cva_uncollateralized(values, credit, market.lgd, market.curve).cva;
      scheme.vm_only = compute_cva(values, vm_profile, 0.0, credit, market.lgd, market.curve).cva;
      scheme.vm_im = compute_cva(values, margins, 0.0, credit, market.lgd, market.curve).cva;
      result.schemes.push_back(scheme);
    }
    report.timings.cva_s += seconds_since(t0);

    t0 = Clock::now();
    SolverSettings settings;
    settings.tolerance = config.solver.tolerance_per_notional * trade.notional;
    settings.max_iterations = config.solver.max_iterations;
    const TradeCubes cubes{result.label, &values, &margins};
    const AlphaSurface surface =
        solve_alpha_surface(std::span(&cubes, 1), market.ratings, market.lgd, market.curve,
                            settings);
    result.alphas = surface.cells.front();
    report.any_solver_failure |= surface.any_failed;
    report.timings.alpha_s += seconds_since(t0);

    report.trades.push_back(std::move(result));
  }

  report.timings.total_s = seconds_since(run_start);
  return report;
}

}  // namespace simim
