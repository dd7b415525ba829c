#include "simim/hull_white.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "simim/rng.hpp"

namespace simim {

HullWhiteModel::HullWhiteModel(HullWhiteParams params, DiscountCurve curve)
    : params_(params), curve_(std::move(curve)), r0_(0.0) {
  if (!(params_.mean_reversion > 0.0)) {
    throw std::invalid_argument("HullWhiteModel: mean reversion must be > 0");
  }
  if (!(params_.sigma > 0.0)) {
    throw std::invalid_argument("HullWhiteModel: sigma must be > 0");
  }
  r0_ = curve_.instantaneous_forward(0.0);
}

double HullWhiteModel::b_factor(double t, double T) const {
  return -std::expm1(-a() * (T - t)) / a();
}

double HullWhiteModel::phi(double t) const {
  const double one_minus_exp = -std::expm1(-a() * t);
  const double kappa = sigma() * sigma() / (2.0 * a() * a());
  return curve_.instantaneous_forward(t) + kappa * one_minus_exp * one_minus_exp;
}

double HullWhiteModel::fitting_integral(double t) const {
  const double b = b_factor(0.0, t);
  const double one_minus_exp2 = -std::expm1(-2.0 * a() * t);
  return t - 2.0 * b + one_minus_exp2 / (2.0 * a());
}

double HullWhiteModel::phi_integral(double t) const {
  const double kappa = sigma() * sigma() / (2.0 * a() * a());
  return -curve_.log_discount(t) + kappa * fitting_integral(t);
}

double HullWhiteModel::log_bond(double t, double T, double r) const {
  if (T < t) {
    throw std::domain_error("HullWhiteModel::bond: maturity before valuation time");
  }
  // Exact conditional expectation of exp(-int_t^T r) given r(t):
  //   ln P = ln P0(T) - ln P0(t) - kappa [I(T) - I(t) - I(T-t)] - B(T-t) (r - phi(t))
  const double kappa = sigma() * sigma() / (2.0 * a() * a());
  const double b = b_factor(t, T);
  return curve_.log_discount(T) - curve_.log_discount(t) -
         kappa * (fitting_integral(T) - fitting_integral(t) - fitting_integral(T - t)) -
         b * (r - phi(t));
}

double HullWhiteModel::bond(double t, double T, double r) const {
  return std::exp(log_bond(t, T, r));
}

double HullWhiteModel::conditional_short_rate_sd(double dt) const {
  return sigma() * std::sqrt(-std::expm1(-2.0 * a() * dt) / (2.0 * a()));
}

double HullWhiteModel::bond_option(double t, double r, double expiry, double bond_maturity,
                                   double strike, bool call) const {
  if (!(t <= expiry && expiry <= bond_maturity)) {
    throw std::domain_error("HullWhiteModel::bond_option: need t <= expiry <= bond maturity");
  }
  if (!(strike > 0.0)) {
    throw std::domain_error("HullWhiteModel::bond_option: strike must be > 0");
  }
  const double p_bond = bond(t, bond_maturity, r);
  const double p_exp = bond(t, expiry, r);
  // Lognormal bond-price vol over [t, expiry].
  const double sigma_p = conditional_short_rate_sd(expiry - t) * b_factor(expiry, bond_maturity);
  if (sigma_p < 1e-14) {
    const double fwd_intrinsic = p_bond - strike * p_exp;
    return call ? std::max(fwd_intrinsic, 0.0) : std::max(-fwd_intrinsic, 0.0);
  }
  const double h = std::log(p_bond / (p_exp * strike)) / sigma_p + 0.5 * sigma_p;
  if (call) {
    return p_bond * normal_cdf(h) - strike * p_exp * normal_cdf(h - sigma_p);
  }
  return strike * p_exp * normal_cdf(sigma_p - h) - p_bond * normal_cdf(-h);
}

HullWhiteModel::Transition HullWhiteModel::transition(double dt) const {
  if (!(dt > 0.0)) {
    throw std::domain_error("HullWhiteModel::transition: dt must be > 0");
  }
  Transition tr{};
  tr.decay = std::exp(-a() * dt);
  tr.b = b_factor(0.0, dt);
  const double var_x = sigma() * sigma() * -std::expm1(-2.0 * a() * dt) / (2.0 * a());
  tr.sd_x = std::sqrt(var_x);
  // Cov(x(t+dt), int x) = sigma^2 B(dt)^2 / 2; Var(int x) = sigma^2/a^2 I(dt).
  const double cov_xy = 0.5 * sigma() * sigma() * tr.b * tr.b;
  const double var_y = sigma() * sigma() / (a() * a()) * fitting_integral(dt);
  tr.coef_yx = cov_xy / tr.sd_x;
  tr.sd_y_res = std::sqrt(std::max(var_y - tr.coef_yx * tr.coef_yx, 0.0));
  return tr;
}

}  // namespace simim
