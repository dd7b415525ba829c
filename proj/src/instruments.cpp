#include "simim/instruments.hpp"

#include <cmath>
#include <stdexcept>

namespace simim {

namespace {

constexpr double kDeltaBump = 1e-4;  // 1bp central-difference step

/// Fixed-leg cashflow amounts per unit notional, principal included at the
/// end: c_i = K tau for i < n, c_n = K tau + 1.
std::vector<double> unit_cashflows(const SwapSpec& spec) {
  const auto times = spec.payment_times();
  std::vector<double> flows(times.size(), spec.fixed_rate * spec.accrual_fraction());
  flows.back() += 1.0;
  return flows;
}

}  // namespace

void SwapSpec::validate() const {
  if (!(notional > 0.0)) {
    throw std::invalid_argument("SwapSpec: notional must be > 0");
  }
  if (!(start >= 0.0 && maturity > start)) {
    throw std::invalid_argument("SwapSpec: need maturity > start >= 0");
  }
  if (payments_per_year < 1) {
    throw std::invalid_argument("SwapSpec: payment frequency must be >= 1");
  }
  const double periods = (maturity - start) * payments_per_year;
  if (std::abs(periods - std::round(periods)) > 1e-9 || std::round(periods) < 1.0) {
    throw std::invalid_argument("SwapSpec: tenor must be a whole number of periods");
  }
}

std::vector<double> SwapSpec::payment_times() const {
  const auto n = static_cast<std::size_t>(std::llround((maturity - start) * payments_per_year));
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = start + static_cast<double>(i + 1) / payments_per_year;
  }
  times.back() = maturity;
  return times;
}

SwaptionSpec SwaptionSpec::make(double notional, double expiry, double underlying_tenor,
                                double strike, bool payer, int payments_per_year) {
  SwaptionSpec spec;
  spec.expiry = expiry;
  spec.strike = strike;
  spec.underlying.notional = notional;
  spec.underlying.fixed_rate = strike;
  spec.underlying.pay_fixed = payer;
  spec.underlying.start = expiry;
  spec.underlying.maturity = expiry + underlying_tenor;
  spec.underlying.payments_per_year = payments_per_year;
  spec.validate();
  return spec;
}

void SwaptionSpec::validate() const {
  if (!(expiry > 0.0)) {
    throw std::invalid_argument("SwaptionSpec: expiry must be > 0");
  }
  underlying.validate();
  if (std::abs(underlying.start - expiry) > 1e-12) {
    throw std::invalid_argument("SwaptionSpec: underlying must start at expiry");
  }
  if (std::abs(underlying.fixed_rate - strike) > 1e-12) {
    throw std::invalid_argument("SwaptionSpec: underlying fixed rate must equal the strike");
  }
  if (!cash_settled) {
    throw std::invalid_argument("SwaptionSpec: only cash settlement is supported");
  }
}

double NettingSet::final_time() const {
  if (std::holds_alternative<SwapSpec>(trade)) {
    return std::get<SwapSpec>(trade).maturity;
  }
  return std::get<SwaptionSpec>(trade).expiry;
}

double par_rate(const HullWhiteModel& model, const SwapSpec& spec) {
  spec.validate();
  const double r0 = model.initial_short_rate();
  double annuity = 0.0;
  for (double ti : spec.payment_times()) {
    annuity += spec.accrual_fraction() * model.bond(0.0, ti, r0);
  }
  if (annuity < 1e-12) {
    throw std::domain_error("par_rate: degenerate annuity");
  }
  return (model.bond(0.0, spec.start, r0) - model.bond(0.0, spec.maturity, r0)) / annuity;
}

double value_swap(const HullWhiteModel& model, const SwapSpec& spec, double r, double t) {
  if (t >= spec.maturity) return 0.0;
  // Both legs settle continuously: the float leg through the telescoped
  // P(t, start) - P(t, maturity) representation, the fixed leg by netting the
  // accrued share of the running coupon. Keeps V continuous in t, so the
  // V - VM gap carries no payment-date spikes.
  const double float_leg =
      (t <= spec.start ? model.bond(t, spec.start, r) : 1.0) - model.bond(t, spec.maturity, r);
  const double coupon = spec.fixed_rate * spec.accrual_fraction();
  double fixed_leg = 0.0;
  double next_payment = spec.maturity;
  for (double ti : spec.payment_times()) {
    if (ti > t) {
      fixed_leg += coupon * model.bond(t, ti, r);
      next_payment = std::min(next_payment, ti);
    }
  }
  if (t > spec.start) {
    // Accrued share of the running coupon, keyed to the next included
    // payment so inclusion and accrual always refer to the same period.
    const double period_start = next_payment - spec.accrual_fraction();
    const double accrued = (t - period_start) * spec.payments_per_year;
    if (accrued > 0.0) {
      fixed_leg -= coupon * accrued * model.bond(t, next_payment, r);
    }
  }
  const double payer_value = spec.notional * (float_leg - fixed_leg);
  return spec.pay_fixed ? payer_value : -payer_value;
}

ValueCube::ValueCube(TimeGrid grid, std::size_t n_paths)
    : grid_(std::move(grid)), n_paths_(n_paths), values_(n_paths * grid_.n_dates(), 0.0) {
  if (n_paths_ == 0) {
    throw std::invalid_argument("ValueCube: need at least one path");
  }
}

NodePricer::NodePricer(const HullWhiteModel& model, NettingSet netting_set)
    : model_(&model), netting_set_(std::move(netting_set)) {
  if (const auto* swap = std::get_if<SwapSpec>(&netting_set_.trade)) {
    swap->validate();
    return;
  }
  const auto& swaption = std::get<SwaptionSpec>(netting_set_.trade);
  swaption.validate();

  // Jamshidian decomposition: find the critical rate r* at which the fixed
  // leg (with principal) prices to par at expiry, then strike each cashflow's
  // ZCB option at its bond price in that state. State independent, so done once.
  const SwapSpec& swap = swaption.underlying;
  pay_times_ = swap.payment_times();
  cashflows_ = unit_cashflows(swap);

  const auto basket_value = [&](double r) {
    double pv = 0.0;
    for (std::size_t i = 0; i < pay_times_.size(); ++i) {
      pv += cashflows_[i] * model_->bond(swaption.expiry, pay_times_[i], r);
    }
    return pv - 1.0;
  };
  double lo = -1.0, hi = 1.0;
  while (basket_value(lo) < 0.0 && lo > -64.0) lo *= 2.0;  // pv decreasing in r
  while (basket_value(hi) > 0.0 && hi < 64.0) hi *= 2.0;
  if (basket_value(lo) < 0.0 || basket_value(hi) > 0.0) {
    throw std::runtime_error("NodePricer: failed to bracket the Jamshidian critical rate");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (basket_value(mid) >= 0.0 ? lo : hi) = mid;
  }
  const double r_star = 0.5 * (lo + hi);
  strikes_.resize(pay_times_.size());
  for (std::size_t i = 0; i < pay_times_.size(); ++i) {
    strikes_[i] = model_->bond(swaption.expiry, pay_times_[i], r_star);
  }
}

double NodePricer::swaption_value(const SwaptionSpec& spec, double t, double r) const {
  if (t >= spec.expiry) {
    // Intrinsic cash settlement exactly at expiry.
    return std::max(value_swap(*model_, spec.underlying, r, t), 0.0);
  }
  // Payer swaption = basket of puts on the fixed-leg ZCBs, receiver = calls.
  const bool puts = spec.underlying.pay_fixed;
  double value = 0.0;
  for (std::size_t i = 0; i < pay_times_.size(); ++i) {
    value += cashflows_[i] *
             model_->bond_option(t, r, spec.expiry, pay_times_[i], strikes_[i], !puts);
  }
  return spec.underlying.notional * value;
}

double NodePricer::value(double t, double r) const {
  if (const auto* swap = std::get_if<SwapSpec>(&netting_set_.trade)) {
    return value_swap(*model_, *swap, r, t);
  }
  const auto& swaption = std::get<SwaptionSpec>(netting_set_.trade);
  if (t > swaption.expiry) return 0.0;
  return swaption_value(swaption, t, r);
}

double NodePricer::delta(double t, double r) const {
  return (value(t, r + kDeltaBump) - value(t, r - kDeltaBump)) / (2.0 * kDeltaBump);
}

double value_swaption(const HullWhiteModel& model, const SwaptionSpec& spec, double r, double t) {
  if (t > spec.expiry) {
    throw std::domain_error("value_swaption: past expiry the position has no value");
  }
  NodePricer pricer(model, NettingSet{spec, "swaption"});
  return pricer.value(t, r);
}

ValueCube build_value_cube(const HullWhiteModel& model, const NettingSet& netting_set,
                           const PathCube& paths, unsigned n_threads) {
  ValueCube cube(paths.grid(), paths.n_paths());
  const NodePricer pricer(model, netting_set);
  const auto& times = paths.grid().times;
  parallel_over_paths(paths.n_paths(), n_threads, [&](std::size_t p) {
    for (std::size_t k = 0; k < times.size(); ++k) {
      cube.at(p, k) = pricer.value(times[k], paths.short_rate(p, k));
    }
  });
  return cube;
}

}  // namespace simim
