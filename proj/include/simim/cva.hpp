#pragma once

#include "simim/instruments.hpp"
#include "simim/margin.hpp"
#include "simim/market_data.hpp"

namespace simim {

/// Collateralized CVA with its per-date discounted expected-exposure profile.
struct ExposureResult {
  double cva = 0.0;
  /// DF(t_k) * mean positive exposure at t_k, one entry per grid date.
  std::vector<double> discounted_ee;
  std::size_t n_paths = 0;
  double alpha = 0.0;
  Rating rating = Rating::AAA;
};

/// Split of CVA(alpha) into the unscaled-IM CVA and the two (nonpositive)
/// terms contributed by the scaled add-on collateral.
struct RhoDecomposition {
  double rho1 = 0.0;  // CVA with IM_general only
  double rho2 = 0.0;  // exposure-set shrinkage, <= 0
  double rho3 = 0.0;  // add-on collateral in the surviving set, <= 0
  double reconstructed_cva = 0.0;  // rho1 + rho2 + rho3 == CVA(alpha)
};

/// CVA = sum_k DF(t_k) E[((V - VM - IM) - alpha IM)^+] * LGD * (S(t_k) - S(t_{k+1})),
/// exposures floored pathwise before averaging, left-endpoint exposure with
/// the exact default mass of each grid interval.
ExposureResult compute_cva(const ValueCube& values, const MarginProfile& margins, double alpha,
                           const CreditCurve& credit, const LgdAssumption& lgd,
                           const DiscountCurve& curve);

/// CVA with VM = IM = 0.
ExposureResult compute_cva_uncollateralized(const ValueCube& values, const CreditCurve& credit,
                                            const LgdAssumption& lgd, const DiscountCurve& curve);

RhoDecomposition compute_rho_decomposition(const ValueCube& values, const MarginProfile& margins,
                                           double alpha, const CreditCurve& credit,
                                           const LgdAssumption& lgd, const DiscountCurve& curve);

namespace detail {

/// Compensated (Kahan) accumulator; keeps CVA sums deterministic and the
/// decomposition identity tight at any path count.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/// Floored scaled exposure ((v - vm - im) - alpha*im)^+, written so the CVA
/// and the rho terms share one arithmetic path node by node.
inline double scaled_exposure(double v, double vm, double im, double alpha) {
  const double x = v - vm - im;
  const double e = x - alpha * im;
  return e > 0.0 ? e : 0.0;
}

}  // namespace detail

}  // namespace simim
