#pragma once

#include "simim/market_data.hpp"

namespace simim {

struct HullWhiteParams {
  double mean_reversion = 0.05;  // a, 1/years
  double sigma = 0.01;           // absolute short-rate vol per sqrt(year)

  bool operator==(const HullWhiteParams&) const = default;
};

/// One-factor Hull-White short rate fitted to an initial discount curve:
///
///   dr = (theta(t) - a r) dt + sigma dW
///   r(t) = x(t) + phi(t),   dx = -a x dt + sigma dW,  x(0) = 0
///   phi(t) = f(0,t) + sigma^2/(2 a^2) (1 - e^{-a t})^2
///
/// Bond prices are affine in r and reproduce the input curve exactly at t=0.
/// Transitions of (x, int x dt) are jointly Gaussian with closed-form moments,
/// which gives exact-in-distribution path sampling on any date grid.
class HullWhiteModel {
 public:
  HullWhiteModel(HullWhiteParams params, DiscountCurve curve);

  double a() const { return params_.mean_reversion; }
  double sigma() const { return params_.sigma; }
  const HullWhiteParams& params() const { return params_; }
  const DiscountCurve& curve() const { return curve_; }
  double initial_short_rate() const { return r0_; }

  /// B(t,T) = (1 - e^{-a (T-t)}) / a.
  double b_factor(double t, double T) const;
  double phi(double t) const;
  /// I(t) = int_0^t (1 - e^{-a s})^2 ds.
  double fitting_integral(double t) const;
  /// int_0^t phi(s) ds, the deterministic part of the money-market exponent.
  double phi_integral(double t) const;

  /// P(t,T | r), the zero-coupon bond price at state (t, r). Requires t <= T.
  double bond(double t, double T, double r) const;
  double log_bond(double t, double T, double r) const;

  /// European option on P(expiry, bond_maturity), valued at state (t, r) with
  /// t <= expiry <= bond_maturity. Degenerates to the forward intrinsic when
  /// the bond-price volatility vanishes.
  double bond_option(double t, double r, double expiry, double bond_maturity, double strike,
                     bool call) const;

  /// Stdev of r(t + dt) conditional on r(t).
  double conditional_short_rate_sd(double dt) const;

  /// Conditional sampling coefficients for (x, int x) over a step dt:
  ///   x'    = x * decay + sd_x * z1
  ///   int x = x * b     + coef_yx * z1 + sd_y_res * z2
  struct Transition {
    double decay;
    double b;
    double sd_x;
    double coef_yx;
    double sd_y_res;
  };
  Transition transition(double dt) const;

 private:
  HullWhiteParams params_;
  DiscountCurve curve_;
  double r0_;
};

}  // namespace simim
