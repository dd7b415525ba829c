#include "simim/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace simim {

DiscountCurve::DiscountCurve(std::vector<Pillar> pillars) : pillars_(std::move(pillars)) {
  if (pillars_.empty()) {
    throw std::invalid_argument("DiscountCurve: at least one pillar required");
  }
  if (pillars_.front().t < 0.0) {
    throw std::invalid_argument("DiscountCurve: first pillar time must be >= 0");
  }
  for (std::size_t i = 1; i < pillars_.size(); ++i) {
    if (!(pillars_[i].t > pillars_[i - 1].t)) {
      throw std::invalid_argument("DiscountCurve: pillar times must be strictly increasing");
    }
  }
}

DiscountCurve DiscountCurve::flat(double zero_rate, double horizon) {
  return DiscountCurve({{0.0, zero_rate}, {horizon, zero_rate}});
}

std::size_t DiscountCurve::segment_index(double t) const {
  // Index i such that t lies in [t_i, t_{i+1}]; clamps to the last segment.
  if (pillars_.size() == 1) return 0;
  auto it = std::upper_bound(pillars_.begin(), pillars_.end(), t,
                             [](double x, const Pillar& p) { return x < p.t; });
  if (it == pillars_.begin()) return 0;
  std::size_t idx = static_cast<std::size_t>(it - pillars_.begin()) - 1;
  return std::min(idx, pillars_.size() - 2);
}

double DiscountCurve::zero_rate(double t) const {
  if (t < 0.0) {
    throw std::domain_error("DiscountCurve: negative time");
  }
  if (t > pillars_.back().t) {
    throw std::domain_error("DiscountCurve: time beyond last pillar");
  }
  if (pillars_.size() == 1 || t <= pillars_.front().t) {
    return pillars_.front().zero_rate;
  }
  const std::size_t i = segment_index(t);
  const Pillar& lo = pillars_[i];
  const Pillar& hi = pillars_[i + 1];
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.zero_rate + w * (hi.zero_rate - lo.zero_rate);
}

double DiscountCurve::log_discount(double t) const { return -zero_rate(t) * t; }

double DiscountCurve::discount(double t) const { return std::exp(log_discount(t)); }

double DiscountCurve::instantaneous_forward(double t) const {
  if (t < 0.0 || t > pillars_.back().t) {
    throw std::domain_error("DiscountCurve: forward time out of range");
  }
  if (pillars_.size() == 1 || t < pillars_.front().t) {
    return pillars_.front().zero_rate;
  }
  const std::size_t i = segment_index(t);
  const Pillar& lo = pillars_[i];
  const Pillar& hi = pillars_[i + 1];
  const double slope = (hi.zero_rate - lo.zero_rate) / (hi.t - lo.t);
  return zero_rate(t) + t * slope;
}

std::string to_string(Rating rating) {
  switch (rating) {
    case Rating::AAA: return "AAA";
    case Rating::AA: return "AA";
    case Rating::A: return "A";
    case Rating::BBB: return "BBB";
    case Rating::BB: return "BB";
    case Rating::B: return "B";
    case Rating::CCC: return "CCC";
  }
  throw std::invalid_argument("to_string: unknown rating");
}

Rating rating_from_string(const std::string& label) {
  for (Rating r : kRatingOrder) {
    if (to_string(r) == label) return r;
  }
  throw std::invalid_argument("rating_from_string: unknown rating label '" + label + "'");
}

CreditCurve::CreditCurve(Rating rating, double hazard) : rating_(rating), hazard_(hazard) {
  if (!(hazard >= 0.0) || !std::isfinite(hazard)) {
    throw std::invalid_argument("CreditCurve: hazard must be finite and >= 0");
  }
}

CreditCurve CreditCurve::from_one_year_pd(Rating rating, double pd_1y) {
  if (!(pd_1y >= 0.0 && pd_1y < 1.0)) {
    throw std::invalid_argument("CreditCurve: one-year PD must lie in [0, 1)");
  }
  return CreditCurve(rating, -std::log1p(-pd_1y));
}

double CreditCurve::survival(double t) const { return std::exp(-hazard_ * t); }

double CreditCurve::marginal_default_prob(double t1, double t2) const {
  if (t1 < 0.0 || !(t2 > t1)) {
    throw std::domain_error("marginal_default_prob: need 0 <= t1 < t2");
  }
  return survival(t1) - survival(t2);
}

RatingTable::RatingTable(std::vector<CreditCurve> curves, Rating reference)
    : reference_(reference) {
  if (curves.empty()) {
    throw std::invalid_argument("RatingTable: no credit curves given");
  }
  std::sort(curves.begin(), curves.end(), [](const CreditCurve& a, const CreditCurve& b) {
    return static_cast<int>(a.rating()) < static_cast<int>(b.rating());
  });
  for (std::size_t i = 1; i < curves.size(); ++i) {
    if (curves[i].rating() == curves[i - 1].rating()) {
      throw std::invalid_argument("RatingTable: duplicate rating " +
                                  to_string(curves[i].rating()));
    }
    if (curves[i].hazard() < curves[i - 1].hazard()) {
      throw std::invalid_argument(
          "RatingTable: hazards must weakly increase as ratings worsen (" +
          to_string(curves[i].rating()) + " below " + to_string(curves[i - 1].rating()) + ")");
    }
  }
  curves_ = std::move(curves);
  if (!contains(reference_)) {
    throw std::invalid_argument("RatingTable: reference rating " + to_string(reference_) +
                                " not in table");
  }
  const double ref_hazard = curve(reference_).hazard();
  for (const CreditCurve& c : curves_) {
    if (c.hazard() < ref_hazard) {
      throw std::invalid_argument("RatingTable: reference rating must have the lowest hazard");
    }
  }
}

bool RatingTable::contains(Rating rating) const {
  return std::any_of(curves_.begin(), curves_.end(),
                     [rating](const CreditCurve& c) { return c.rating() == rating; });
}

const CreditCurve& RatingTable::curve(Rating rating) const {
  for (const CreditCurve& c : curves_) {
    if (c.rating() == rating) return c;
  }
  throw std::out_of_range("RatingTable: rating " + to_string(rating) + " not found");
}

LgdAssumption::LgdAssumption(double lgd) : lgd_(lgd) {
  if (!(lgd >= 0.0 && lgd <= 1.0)) {
    throw std::invalid_argument("LgdAssumption: LGD must lie in [0, 1]");
  }
}

}  // namespace simim
