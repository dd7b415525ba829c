#include "simim/alpha_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace simim {

namespace {

struct Objective {
  const ValueCube& values;
  const MarginProfile& margins;
  const CreditCurve& credit_j;
  const LgdAssumption& lgd;
  const DiscountCurve& curve;
  double cva_ref;
  int evaluations = 0;

  double cva(double alpha) {
    ++evaluations;
    return compute_cva(values, margins, alpha, credit_j, lgd, curve).cva;
  }
  // Root target: F(alpha) = cva_ref - CVA_j(alpha), nondecreasing in alpha.
  double operator()(double alpha) { return cva_ref - cva(alpha); }
};

double estimate_alpha_tolerance(Objective& f, double alpha, double tolerance) {
  const double h = 1e-3;
  const double lo = std::max(alpha - h, 0.0);
  const double slope = (f(alpha + h) - f(lo)) / (alpha + h - lo);
  if (!(slope > 0.0)) return 0.0;
  return tolerance / slope;
}

}  // namespace

AlphaSolution solve_alpha(const ValueCube& values, const MarginProfile& margins,
                          const CreditCurve& credit_j, const CreditCurve& credit_ref,
                          const LgdAssumption& lgd, const DiscountCurve& curve,
                          const SolverSettings& settings) {
  if (!(settings.tolerance > 0.0)) {
    throw std::invalid_argument("solve_alpha: tolerance must be > 0");
  }

  AlphaSolution sol;
  sol.rating = credit_j.rating();
  sol.cva_reference = compute_cva(values, margins, 0.0, credit_ref, lgd, curve).cva;

  Objective f{values, margins, credit_j, lgd, curve, sol.cva_reference};

  const double f0 = f(0.0);
  if (f0 >= 0.0) {
    // Candidate CVA already at or below the reference; Eq. 5's root would be
    // nonpositive, floor it to zero.
    sol.alpha = 0.0;
    sol.floored = true;
    sol.cva_at_alpha = sol.cva_reference - f0;
    sol.residual = -f0;
    sol.converged = std::abs(sol.residual) <= settings.tolerance;
    sol.iterations = f.evaluations;
    sol.alpha_tolerance = estimate_alpha_tolerance(f, 0.0, settings.tolerance);
    return sol;
  }

  // Bracket [lo, hi] with F(lo) < 0 <= F(hi), expanding geometrically.
  double lo = 0.0, flo = f0;
  double hi = settings.bracket_initial;
  double fhi = f(hi);
  while (fhi < 0.0 && hi < settings.bracket_cap) {
    lo = hi;
    flo = fhi;
    hi = std::min(hi * 2.0, settings.bracket_cap);
    fhi = f(hi);
  }
  if (fhi < 0.0) {
    throw std::runtime_error(
        "solve_alpha: bracket cap " + std::to_string(settings.bracket_cap) +
        " exceeded; IM never covers the CVA gap (rating " + to_string(credit_j.rating()) + ")");
  }

  const bool use_secant = settings.method == SolverSettings::Method::safeguarded_newton;
  double alpha = lo;
  double f_alpha = flo;
  double prev_alpha = hi;
  double prev_f = fhi;
  int secant_streak = 0;
  while (hi - lo > settings.alpha_xtol && f_alpha != 0.0) {
    if (f.evaluations > settings.max_iterations) {
      throw std::runtime_error("solve_alpha: no convergence within max_iterations; bracket [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    // Secant step as the Newton derivative estimate, with bisection whenever
    // the step leaves the bracket or fails to shrink it (the target is
    // piecewise linear, so safeguarding handles the kinks). At most two
    // secant steps in a row guarantees progress.
    double candidate = 0.5 * (lo + hi);
    bool bisected = true;
    if (use_secant && prev_f != f_alpha && secant_streak < 2) {
      const double secant = alpha - f_alpha * (prev_alpha - alpha) / (prev_f - f_alpha);
      if (secant > lo + 0.01 * settings.alpha_xtol && secant < hi - 0.01 * settings.alpha_xtol) {
        candidate = secant;
        bisected = false;
      }
    }
    secant_streak = bisected ? 0 : secant_streak + 1;
    prev_alpha = alpha;
    prev_f = f_alpha;
    alpha = candidate;
    f_alpha = f(alpha);
    if (f_alpha < 0.0) {
      lo = alpha;
      flo = f_alpha;
    } else {
      hi = alpha;
      fhi = f_alpha;
    }
  }
  if (f_alpha != 0.0) {
    // Report the bracket end on the covered side (F >= 0: CVA at or below the
    // reference), keeping the residual one-sided and tiny.
    alpha = hi;
  }

  sol.alpha = alpha;
  sol.iterations = f.evaluations;
  sol.cva_at_alpha = f.cva(alpha);  // fresh verification pass
  sol.residual = sol.cva_at_alpha - sol.cva_reference;
  sol.converged = std::abs(sol.residual) <= settings.tolerance;
  sol.alpha_tolerance = estimate_alpha_tolerance(f, alpha, settings.tolerance);
  return sol;
}

AlphaSurface solve_alpha_surface(std::span<const TradeCubes> trades, const RatingTable& table,
                                 const LgdAssumption& lgd, const DiscountCurve& curve,
                                 const SolverSettings& settings) {
  AlphaSurface surface;
  surface.ratings.reserve(table.curves().size());
  for (const CreditCurve& c : table.curves()) {
    surface.ratings.push_back(c.rating());
  }
  const CreditCurve& reference = table.reference_curve();
  for (const TradeCubes& trade : trades) {
    surface.trade_labels.push_back(trade.label);
    std::vector<AlphaSurfaceCell> row;
    row.reserve(surface.ratings.size());
    for (Rating rating : surface.ratings) {
      AlphaSurfaceCell cell;
      try {
        cell.solution = solve_alpha(*trade.values, *trade.margins, table.curve(rating),
                                    reference, lgd, curve, settings);
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
        surface.any_failed = true;
      }
      row.push_back(std::move(cell));
    }
    surface.cells.push_back(std::move(row));
  }
  return surface;
}

}  // namespace simim
