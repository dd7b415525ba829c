#pragma once

#include <array>
#include <string>
#include <vector>

namespace simim {

/// Deterministic discount curve: continuously-compounded zero rates on time
/// pillars (ACT/365 year fractions), linearly interpolated in the zero rate.
class DiscountCurve {
 public:
  struct Pillar {
    double t;
    double zero_rate;
    bool operator==(const Pillar&) const = default;
  };

  explicit DiscountCurve(std::vector<Pillar> pillars);

  static DiscountCurve flat(double zero_rate, double horizon = 100.0);

  double zero_rate(double t) const;
  /// DF(t) = exp(-z(t) * t); DF(0) = 1 exactly.
  double discount(double t) const;
  double log_discount(double t) const;
  /// f(0,t) = z(t) + t * z'(t) with z' taken on the segment containing t.
  double instantaneous_forward(double t) const;
  double max_time() const { return pillars_.back().t; }
  const std::vector<Pillar>& pillars() const { return pillars_; }

  bool operator==(const DiscountCurve&) const = default;

 private:
  std::vector<Pillar> pillars_;
  std::size_t segment_index(double t) const;
};

enum class Rating { AAA, AA, A, BBB, BB, B, CCC };

inline constexpr std::array<Rating, 7> kRatingOrder = {
    Rating::AAA, Rating::AA, Rating::A, Rating::BBB, Rating::BB, Rating::B, Rating::CCC};

std::string to_string(Rating rating);
Rating rating_from_string(const std::string& label);

/// Flat-intensity credit curve: survival S(t) = exp(-lambda * t).
class CreditCurve {
 public:
  CreditCurve(Rating rating, double hazard);

  /// Calibrate the flat hazard from a one-year default probability:
  /// lambda = -ln(1 - pd_1y).
  static CreditCurve from_one_year_pd(Rating rating, double pd_1y);

  Rating rating() const { return rating_; }
  double hazard() const { return hazard_; }
  double survival(double t) const;
  /// S(t1) - S(t2), the default mass on [t1, t2) given survival to 0.
  double marginal_default_prob(double t1, double t2) const;

  bool operator==(const CreditCurve&) const = default;

 private:
  Rating rating_;
  double hazard_;
};

/// Credit curves keyed by rating, ordered AAA -> CCC, with a designated
/// reference (best) rating. Hazards must weakly increase as ratings worsen.
class RatingTable {
 public:
  RatingTable(std::vector<CreditCurve> curves, Rating reference);

  const CreditCurve& curve(Rating rating) const;
  const CreditCurve& reference_curve() const { return curve(reference_); }
  Rating reference() const { return reference_; }
  bool contains(Rating rating) const;
  const std::vector<CreditCurve>& curves() const { return curves_; }

  bool operator==(const RatingTable&) const = default;

 private:
  std::vector<CreditCurve> curves_;  // canonical rating order
  Rating reference_;
};

class LgdAssumption {
 public:
  explicit LgdAssumption(double lgd);
  double lgd() const { return lgd_; }

  bool operator==(const LgdAssumption&) const = default;

 private:
  double lgd_;
};

}  // namespace simim
