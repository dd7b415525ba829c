#pragma once

#include <span>
#include <string>
#include <vector>

#include "simim/cva.hpp"

namespace simim {

/// Calibrated IM multiplier for one (netting set, counterparty) pair.
struct AlphaSolution {
  Rating rating = Rating::AAA;
  double alpha = 0.0;
  double cva_reference = 0.0;
  double cva_at_alpha = 0.0;
  double residual = 0.0;  // cva_at_alpha - cva_reference, from a fresh pass
  int iterations = 0;     // CVA evaluations of the candidate counterparty
  bool converged = false;
  bool floored = false;
  /// |d alpha| equivalent of the residual tolerance at the root (local slope).
  double alpha_tolerance = 0.0;
};

struct SolverSettings {
  enum class Method { safeguarded_newton, bisection };

  double tolerance = 1.0;  // currency units on the CVA residual (1e-6 x default notional)
  int max_iterations = 100;
  double bracket_initial = 10.0;
  double bracket_cap = 1e4;
  /// Root localization width in alpha; the residual tolerance alone would
  /// under-determine alpha because collateralized CVA is far below notional.
  double alpha_xtol = 1e-7;
  Method method = Method::safeguarded_newton;
};

/// Solve for alpha >= 0 such that CVA_j(alpha) equals the reference
/// counterparty's CVA at alpha = 0, on the same cubes (common random
/// numbers). Returns alpha = 0 with floored = true when the candidate's CVA
/// already sits at or below the reference. Throws when the bracket cap is
/// exceeded (IM never covers the gap) or max_iterations is hit.
AlphaSolution solve_alpha(const ValueCube& values, const MarginProfile& margins,
                          const CreditCurve& credit_j, const CreditCurve& credit_ref,
                          const LgdAssumption& lgd, const DiscountCurve& curve,
                          const SolverSettings& settings = {});

struct AlphaSurfaceCell {
  AlphaSolution solution;
  bool failed = false;
  std::string error;
};

/// Immutable per-trade cubes shared by every rating's solve.
struct TradeCubes {
  std::string label;
  const ValueCube* values = nullptr;
  const MarginProfile* margins = nullptr;
};

struct AlphaSurface {
  std::vector<std::string> trade_labels;
  std::vector<Rating> ratings;
  std::vector<std::vector<AlphaSurfaceCell>> cells;  // [trade][rating]
  bool any_failed = false;
};

/// Alpha per (trade, rating); per-cell failures are recorded, not propagated.
AlphaSurface solve_alpha_surface(std::span<const TradeCubes> trades, const RatingTable& table,
                                 const LgdAssumption& lgd, const DiscountCurve& curve,
                                 const SolverSettings& settings = {});

}  // namespace simim
