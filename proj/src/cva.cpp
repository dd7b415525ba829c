#include "simim/cva.hpp"

#include <stdexcept>

namespace simim {

namespace {

void check_alignment(const ValueCube& values, const MarginProfile& margins) {
  if (values.n_paths() != margins.n_paths || values.grid().n_dates() != margins.n_dates) {
    throw std::domain_error("compute_cva: value cube and margin profile are misaligned");
  }
}

}  // namespace

ExposureResult compute_cva(const ValueCube& values, const MarginProfile& margins, double alpha,
                           const CreditCurve& credit, const LgdAssumption& lgd,
                           const DiscountCurve& curve) {
  if (!(alpha >= 0.0)) {
    throw std::domain_error("compute_cva: alpha must be >= 0");
  }
  check_alignment(values, margins);

  const auto& times = values.grid().times;
  const std::size_t n_dates = times.size();
  const std::size_t n_paths = values.n_paths();
  const double inv_paths = 1.0 / static_cast<double>(n_paths);

  ExposureResult result;
  result.n_paths = n_paths;
  result.alpha = alpha;
  result.rating = credit.rating();
  result.discounted_ee.resize(n_dates, 0.0);

  detail::KahanSum cva;
  for (std::size_t k = 0; k < n_dates; ++k) {
    detail::KahanSum exposure;
    for (std::size_t p = 0; p < n_paths; ++p) {
      exposure.add(detail::scaled_exposure(values.value(p, k), margins.vm_at(p, k),
                                           margins.im_at(p, k), alpha));
    }
    const double dee = curve.discount(times[k]) * exposure.value() * inv_paths;
    result.discounted_ee[k] = dee;
    if (k + 1 < n_dates) {
      cva.add(dee * lgd.lgd() * credit.marginal_default_prob(times[k], times[k + 1]));
    }
  }
  result.cva = cva.value();
  return result;
}

ExposureResult compute_cva_uncollateralized(const ValueCube& values, const CreditCurve& credit,
                                            const LgdAssumption& lgd,
                                            const DiscountCurve& curve) {
  const MarginProfile no_collateral =
      MarginProfile::zero(values.n_paths(), values.grid().n_dates(), 0.99, values.grid().mpor);
  return compute_cva(values, no_collateral, 0.0, credit, lgd, curve);
}

RhoDecomposition compute_rho_decomposition(const ValueCube& values, const MarginProfile& margins,
                                           double alpha, const CreditCurve& credit,
                                           const LgdAssumption& lgd, const DiscountCurve& curve) {
  if (!(alpha >= 0.0)) {
    throw std::domain_error("compute_rho_decomposition: alpha must be >= 0");
  }
  check_alignment(values, margins);

  const auto& times = values.grid().times;
  const std::size_t n_dates = times.size();
  const std::size_t n_paths = values.n_paths();
  const double inv_paths = 1.0 / static_cast<double>(n_paths);

  detail::KahanSum rho1, rho2, rho3;
  for (std::size_t k = 0; k + 1 < n_dates; ++k) {
    const double weight = curve.discount(times[k]) * inv_paths * lgd.lgd() *
                          credit.marginal_default_prob(times[k], times[k + 1]);
    detail::KahanSum s1, s2, s3;
    for (std::size_t p = 0; p < n_paths; ++p) {
      const double im = margins.im_at(p, k);
      const double x = values.value(p, k) - margins.vm_at(p, k) - im;
      const double theta_x = x > 0.0 ? 1.0 : 0.0;
      const double theta_scaled = x - alpha * im > 0.0 ? 1.0 : 0.0;
      s1.add(x * theta_x);
      s2.add(x * (theta_scaled - theta_x));
      s3.add(-alpha * im * theta_scaled);
    }
    rho1.add(weight * s1.value());
    rho2.add(weight * s2.value());
    rho3.add(weight * s3.value());
  }
  RhoDecomposition rho;
  rho.rho1 = rho1.value();
  rho.rho2 = rho2.value();
  rho.rho3 = rho3.value();
  rho.reconstructed_cva = rho.rho1 + rho.rho2 + rho.rho3;
  return rho;
}

}  // namespace simim
