#pragma once

#include <string>
#include <variant>
#include <vector>

#include "simim/simulation.hpp"

namespace simim {

/// Fixed-for-float interest-rate swap with matching annual-style legs and
/// unit accrual fractions per period (tenor multiples of 1/frequency).
struct SwapSpec {
  double notional = 1'000'000.0;
  double fixed_rate = 0.0;
  bool pay_fixed = true;
  double start = 0.0;
  double maturity = 5.0;
  int payments_per_year = 1;

  void validate() const;
  /// Payment dates start + i/freq, i = 1..n (both legs share them).
  std::vector<double> payment_times() const;
  double accrual_fraction() const { return 1.0 / payments_per_year; }

  bool operator==(const SwapSpec&) const = default;
};

/// Cash-settled European swaption: at expiry the holder receives the positive
/// part of the underlying swap's value in cash and the position terminates.
struct SwaptionSpec {
  double expiry = 5.0;
  SwapSpec underlying;  // start == expiry, fixed_rate == strike
  double strike = 0.0;
  bool cash_settled = true;

  static SwaptionSpec make(double notional, double expiry, double underlying_tenor,
                           double strike, bool payer, int payments_per_year = 1);
  void validate() const;

  bool operator==(const SwaptionSpec&) const = default;
};

/// Single-trade netting set.
struct NettingSet {
  std::variant<SwapSpec, SwaptionSpec> trade;
  std::string label;

  /// Last date with unsettled cashflows: swap maturity or swaption expiry.
  double final_time() const;
};

/// Fixed rate that makes the swap worth zero at t=0.
double par_rate(const HullWhiteModel& model, const SwapSpec& spec);

/// Swap value at state (t, r): float leg as P(t, max(t, start)) - P(t, maturity),
/// fixed leg as the annuity over unpaid coupons; zero at/after maturity.
double value_swap(const HullWhiteModel& model, const SwapSpec& spec, double r, double t);

/// European swaption value at state (t, r) for t <= expiry: Jamshidian
/// decomposition into zero-coupon-bond options before expiry, the intrinsic
/// cash payoff at expiry. t > expiry is a domain error (the position is gone).
double value_swaption(const HullWhiteModel& model, const SwaptionSpec& spec, double r, double t);

/// Netting-set values aligned with a PathCube.
class ValueCube {
 public:
  ValueCube(TimeGrid grid, std::size_t n_paths);

  std::size_t n_paths() const { return n_paths_; }
  const TimeGrid& grid() const { return grid_; }
  double value(std::size_t path, std::size_t date) const {
    return values_[path * grid_.n_dates() + date];
  }
  double& at(std::size_t path, std::size_t date) {
    return values_[path * grid_.n_dates() + date];
  }

  bool operator==(const ValueCube&) const = default;

 private:
  TimeGrid grid_;
  std::size_t n_paths_;
  std::vector<double> values_;
};

/// Values one netting set at (time, short rate) nodes. Caches the Jamshidian
/// strike decomposition for swaptions, which is state independent.
class NodePricer {
 public:
  NodePricer(const HullWhiteModel& model, NettingSet netting_set);

  /// Node value, zero at/after the last cashflow date.
  double value(double t, double r) const;
  /// dV/dr by central difference with a 1bp step.
  double delta(double t, double r) const;
  double final_time() const { return netting_set_.final_time(); }
  const NettingSet& netting_set() const { return netting_set_; }
  const HullWhiteModel& model() const { return *model_; }

 private:
  const HullWhiteModel* model_;
  NettingSet netting_set_;
  // Jamshidian basket for swaptions: cashflows at pay_times with ZCB strikes.
  std::vector<double> pay_times_;
  std::vector<double> cashflows_;
  std::vector<double> strikes_;

  double swaption_value(const SwaptionSpec& spec, double t, double r) const;
};

ValueCube build_value_cube(const HullWhiteModel& model, const NettingSet& netting_set,
                           const PathCube& paths, unsigned n_threads = 1);

}  // namespace simim
