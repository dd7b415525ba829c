#include "simim/margin.hpp"

#include <cmath>
#include <stdexcept>

#include "simim/rng.hpp"

namespace simim {

namespace {

constexpr double kGridSnap = 1e-12;

void check_alignment(const ValueCube& values, const PathCube& paths) {
  if (values.n_paths() != paths.n_paths() || values.grid().times != paths.grid().times) {
    throw std::domain_error("margin: value cube and path cube are misaligned");
  }
}

}  // namespace

MarginProfile MarginProfile::zero(std::size_t n_paths, std::size_t n_dates, double confidence,
                                  double mpor) {
  MarginProfile profile;
  profile.n_paths = n_paths;
  profile.n_dates = n_dates;
  profile.confidence = confidence;
  profile.mpor = mpor;
  profile.vm.assign(n_paths * n_dates, 0.0);
  profile.im.assign(n_paths * n_dates, 0.0);
  return profile;
}

MarginProfile MarginProfile::vm_only() const {
  MarginProfile copy = *this;
  copy.im.assign(copy.im.size(), 0.0);
  return copy;
}

LaggedState lagged_state(const HullWhiteModel& model, const PathCube& paths, std::size_t path,
                         std::size_t date, double mpor) {
  const auto& times = paths.grid().times;
  const double s = times[date] - mpor;
  LaggedState state;
  if (s <= 0.0) {
    state.t = 0.0;
    state.r = paths.short_rate(path, 0);
    state.grid_index = 0;
    state.on_grid = true;
    return state;
  }
  const std::size_t j = paths.grid().index_at_or_before(s);
  if (std::abs(times[j] - s) <= kGridSnap) {
    state.t = times[j];
    state.r = paths.short_rate(path, j);
    state.grid_index = j;
    state.on_grid = true;
    return state;
  }
  // Exact conditional mean of the OU state given the bracketing grid states
  // (the bridge mean, no extra sampling): weights collapse to the endpoints
  // as s approaches either grid date.
  const double a = model.a();
  const double u = s - times[j];
  const double v = times[j + 1] - s;
  const double span = times[j + 1] - times[j];
  const double denom = -std::expm1(-2.0 * a * span);
  const double w_left = std::exp(-a * u) * -std::expm1(-2.0 * a * v) / denom;
  const double w_right = std::exp(-a * v) * -std::expm1(-2.0 * a * u) / denom;
  const double x_left = paths.short_rate(path, j) - model.phi(times[j]);
  const double x_right = paths.short_rate(path, j + 1) - model.phi(times[j + 1]);
  state.t = s;
  state.r = model.phi(s) + w_left * x_left + w_right * x_right;
  state.grid_index = j;
  state.on_grid = false;
  return state;
}

std::vector<double> compute_vm(const ValueCube& values, const PathCube& paths,
                               const HullWhiteModel& model, const NodeValueFn& revalue,
                               double mpor) {
  if (!(mpor > 0.0)) {
    throw std::domain_error("compute_vm: MPoR must be > 0");
  }
  check_alignment(values, paths);
  const std::size_t n_dates = values.grid().n_dates();
  std::vector<double> vm(values.n_paths() * n_dates, 0.0);
  for (std::size_t p = 0; p < values.n_paths(); ++p) {
    for (std::size_t k = 0; k < n_dates; ++k) {
      const LaggedState state = lagged_state(model, paths, p, k, mpor);
      vm[p * n_dates + k] =
          state.on_grid ? values.value(p, state.grid_index) : revalue(state.t, state.r);
    }
  }
  return vm;
}

std::vector<double> compute_vm(const ValueCube& values, const PathCube& paths,
                               const NodePricer& pricer, double mpor) {
  return compute_vm(values, paths, pricer.model(),
                    [&pricer](double t, double r) { return pricer.value(t, r); }, mpor);
}

namespace {

/// IM at one node: quantile of the conditional MPoR value-change
/// distribution, linearized in the rate move; the loss-quantile scheme adds
/// the conditional-mean change (settlement pull) before flooring.
double node_im(const NodePricer& pricer, const HullWhiteModel& model, const LaggedState& state,
               double node_time, double z, double rate_sd, ImScheme scheme, double vm) {
  const double diffusion = z * std::abs(pricer.delta(state.t, state.r)) * rate_sd;
  if (scheme == ImScheme::diffusion_only) {
    return diffusion;
  }
  const double mean_rate =
      model.phi(node_time) +
      (state.r - model.phi(state.t)) * std::exp(-model.a() * (node_time - state.t));
  const double drift = pricer.value(node_time, mean_rate) - vm;
  return std::max(drift + diffusion, 0.0);
}

}  // namespace

std::vector<double> compute_im_general(const NodePricer& pricer, const PathCube& paths,
                                       double confidence, double mpor, ImScheme scheme) {
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw std::domain_error("compute_im_general: confidence must lie in (0.5, 1)");
  }
  if (!(mpor > 0.0)) {
    throw std::domain_error("compute_im_general: MPoR must be > 0");
  }
  const HullWhiteModel& model = pricer.model();
  const double z = normal_quantile(confidence);
  const double rate_sd = model.conditional_short_rate_sd(mpor);
  const auto& times = paths.grid().times;
  const std::size_t n_dates = times.size();
  std::vector<double> im(paths.n_paths() * n_dates, 0.0);
  for (std::size_t p = 0; p < paths.n_paths(); ++p) {
    for (std::size_t k = 0; k < n_dates; ++k) {
      const LaggedState state = lagged_state(model, paths, p, k, mpor);
      const double vm = pricer.value(state.t, state.r);
      im[p * n_dates + k] = node_im(pricer, model, state, times[k], z, rate_sd, scheme, vm);
    }
  }
  return im;
}

MarginProfile build_margin_profile(const NodePricer& pricer, const PathCube& paths,
                                   const ValueCube& values, double confidence, double mpor,
                                   unsigned n_threads, ImScheme scheme) {
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw std::domain_error("build_margin_profile: confidence must lie in (0.5, 1)");
  }
  if (!(mpor > 0.0)) {
    throw std::domain_error("build_margin_profile: MPoR must be > 0");
  }
  check_alignment(values, paths);
  const HullWhiteModel& model = pricer.model();
  const double z = normal_quantile(confidence);
  const double rate_sd = model.conditional_short_rate_sd(mpor);
  const std::size_t n_dates = values.grid().n_dates();

  MarginProfile profile = MarginProfile::zero(values.n_paths(), n_dates, confidence, mpor);
  const auto& times = values.grid().times;
  parallel_over_paths(values.n_paths(), n_threads, [&](std::size_t p) {
    for (std::size_t k = 0; k < n_dates; ++k) {
      const LaggedState state = lagged_state(model, paths, p, k, mpor);
      const std::size_t node = p * n_dates + k;
      const double vm =
          state.on_grid ? values.value(p, state.grid_index) : pricer.value(state.t, state.r);
      profile.vm[node] = vm;
      profile.im[node] = node_im(pricer, model, state, times[k], z, rate_sd, scheme, vm);
    }
  });
  return profile;
}

MarginProfile apply_alpha(const MarginProfile& profile, double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::domain_error("apply_alpha: alpha must be >= 0 (floor negatives upstream)");
  }
  MarginProfile scaled = profile;
  const double factor = 1.0 + alpha;
  for (double& x : scaled.im) x *= factor;
  return scaled;
}

}  // namespace simim
