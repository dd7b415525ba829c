#pragma once

#include <functional>
#include <vector>

#include "simim/instruments.hpp"

namespace simim {

/// Per-node variation and (counterparty-agnostic) initial margin, aligned to
/// a ValueCube. IM is nonnegative everywhere.
struct MarginProfile {
  std::vector<double> vm;
  std::vector<double> im;
  std::size_t n_paths = 0;
  std::size_t n_dates = 0;
  double confidence = 0.99;
  double mpor = 10.0 / 365.0;

  double vm_at(std::size_t path, std::size_t date) const { return vm[path * n_dates + date]; }
  double im_at(std::size_t path, std::size_t date) const { return im[path * n_dates + date]; }

  static MarginProfile zero(std::size_t n_paths, std::size_t n_dates, double confidence = 0.99,
                            double mpor = 10.0 / 365.0);
  /// Copy with the IM layer zeroed (VM-only collateralization).
  MarginProfile vm_only() const;

  bool operator==(const MarginProfile&) const = default;
};

/// Revalues the netting set at an off-grid (t, r) state.
using NodeValueFn = std::function<double(double t, double r)>;

/// State at the last margin date t - mpor: grid lookup when the lag lands on
/// a grid date, otherwise the conditional-mean short rate from the preceding
/// grid date (dates earlier than one MPoR collapse to t=0).
struct LaggedState {
  double t = 0.0;
  double r = 0.0;
  std::size_t grid_index = 0;
  bool on_grid = true;
};
LaggedState lagged_state(const HullWhiteModel& model, const PathCube& paths, std::size_t path,
                         std::size_t date, double mpor);

/// VM layer: VM[p][k] = V(t_k - mpor), from the cube on grid hits and from
/// `revalue` at interpolated states otherwise.
std::vector<double> compute_vm(const ValueCube& values, const PathCube& paths,
                               const HullWhiteModel& model, const NodeValueFn& revalue,
                               double mpor);
std::vector<double> compute_vm(const ValueCube& values, const PathCube& paths,
                               const NodePricer& pricer, double mpor);

/// Analytic form of the 99-percentile MPoR loss backing IM_general.
enum class ImScheme {
  /// z_confidence * |dV/dr| * stdev of the short rate over the MPoR: the
  /// diffusion term alone.
  diffusion_only,
  /// Conditional-mean value change over the MPoR plus the diffusion term,
  /// floored at zero. Also covers the deterministic pull of settling flows,
  /// which otherwise dominates the collateralized exposure near maturity.
  mpor_loss_quantile,
};

/// IM layer at the same lagged margin state as VM.
std::vector<double> compute_im_general(const NodePricer& pricer, const PathCube& paths,
                                       double confidence, double mpor,
                                       ImScheme scheme = ImScheme::mpor_loss_quantile);

/// One-pass VM + IM construction (shares the lagged-state work).
MarginProfile build_margin_profile(const NodePricer& pricer, const PathCube& paths,
                                   const ValueCube& values, double confidence, double mpor,
                                   unsigned n_threads = 1,
                                   ImScheme scheme = ImScheme::mpor_loss_quantile);

/// Scale IM by (1 + alpha) pointwise; VM unchanged. alpha must be >= 0
/// (flooring negative roots is the solver's responsibility).
MarginProfile apply_alpha(const MarginProfile& profile, double alpha);

}  // namespace simim
