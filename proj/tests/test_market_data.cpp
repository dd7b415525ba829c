#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "simim/market_data.hpp"

using namespace simim;

TEST_CASE("discount factor basics on a flat curve") {
  const DiscountCurve curve = DiscountCurve::flat(0.02);
  CHECK(curve.discount(0.0) == 1.0);
  CHECK(curve.discount(5.0) == doctest::Approx(std::exp(-0.10)).epsilon(1e-15));
  // Deterministic: identical inputs give bitwise-identical output.
  CHECK(curve.discount(3.7) == curve.discount(3.7));
}

TEST_CASE("two-pillar interpolation against the hand oracle") {
  // Hand interpolation: z(5.5) = 0.01 + 0.02 * (5.5-1)/(10-1) = 0.02, DF = e^-0.11.
  const DiscountCurve curve({{1.0, 0.01}, {10.0, 0.03}});
  CHECK(curve.zero_rate(5.5) == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(curve.discount(5.5) == doctest::Approx(std::exp(-0.11)).epsilon(1e-15));
  // Flat extrapolation below the first pillar.
  CHECK(curve.zero_rate(0.5) == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("discount curve domain and invariant violations") {
  CHECK_THROWS_AS(DiscountCurve({{1.0, 0.01}, {1.0, 0.02}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscountCurve({{2.0, 0.01}, {1.0, 0.02}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscountCurve({{-1.0, 0.01}, {1.0, 0.02}}), std::invalid_argument);
  const DiscountCurve curve = DiscountCurve::flat(0.02, 10.0);
  CHECK_THROWS_AS(curve.discount(-0.1), std::domain_error);
  CHECK_THROWS_AS(curve.discount(10.5), std::domain_error);
}

TEST_CASE("discount factors are monotone for nonnegative forwards") {
  const DiscountCurve curve({{0.0, 0.01}, {2.0, 0.015}, {5.0, 0.02}, {30.0, 0.022}});
  double prev = 1.0;
  for (int i = 1; i <= 300; ++i) {
    const double df = curve.discount(i * 0.1);
    CHECK(df <= prev);
    CHECK(df > 0.0);
    CHECK(df <= 1.0);
    prev = df;
  }
}

TEST_CASE("instantaneous forward matches the segment slopes") {
  const DiscountCurve curve({{0.0, 0.01}, {2.0, 0.02}, {4.0, 0.02}});
  // On (0,2): z(t) = 0.01 + 0.005 t, so f = z + t z' = 0.01 + 0.01 t.
  CHECK(curve.instantaneous_forward(1.0) == doctest::Approx(0.02).epsilon(1e-12));
  // On (2,4): z constant 0.02, f = z.
  CHECK(curve.instantaneous_forward(3.0) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(curve.instantaneous_forward(0.0) == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("credit curve marginal default probabilities") {
  const CreditCurve zero(Rating::A, 0.0);
  CHECK(zero.marginal_default_prob(0.0, 1.0) == 0.0);
  CHECK(zero.marginal_default_prob(2.0, 7.5) == 0.0);

  // 1y PD in bps per the AAA / CCC calibration anchors.
  const CreditCurve aaa = CreditCurve::from_one_year_pd(Rating::AAA, 1.0 / 10'000.0);
  CHECK(aaa.marginal_default_prob(0.0, 1.0) == doctest::Approx(0.0001).epsilon(1e-12));
  const CreditCurve ccc = CreditCurve::from_one_year_pd(Rating::CCC, 2682.0 / 10'000.0);
  CHECK(ccc.marginal_default_prob(0.0, 1.0) == doctest::Approx(0.2682).epsilon(1e-12));

  CHECK_THROWS_AS(aaa.marginal_default_prob(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(aaa.marginal_default_prob(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(aaa.marginal_default_prob(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(CreditCurve(Rating::A, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(CreditCurve::from_one_year_pd(Rating::A, 1.0), std::invalid_argument);
}

TEST_CASE("marginal default probabilities telescope to machine precision") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> hazard_dist(0.0, 0.5);
  std::uniform_real_distribution<double> gap_dist(0.01, 1.5);
  for (int rep = 0; rep < 50; ++rep) {
    const CreditCurve curve(Rating::BB, hazard_dist(gen));
    std::vector<double> knots{0.0};
    for (int i = 0; i < 20; ++i) knots.push_back(knots.back() + gap_dist(gen));
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      sum += curve.marginal_default_prob(knots[i], knots[i + 1]);
    }
    const double direct = curve.survival(knots.front()) - curve.survival(knots.back());
    CHECK(sum == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("worse ratings have larger default mass on short horizons") {
  // Pointwise marginal-PD ordering between flat hazards holds while the
  // interval lies below ~1/lambda of the worst curve; the default table's
  // largest hazard is ~0.31, so monthly intervals up to 3y qualify. Survival
  // ordering holds at every horizon.
  std::vector<CreditCurve> curves;
  const double bps[] = {1.0, 3.0, 8.0, 20.0, 90.0, 550.0, 2682.0};
  for (std::size_t i = 0; i < 7; ++i) {
    curves.push_back(CreditCurve::from_one_year_pd(kRatingOrder[i], bps[i] / 10'000.0));
  }
  for (std::size_t i = 1; i < curves.size(); ++i) {
    for (int k = 0; k < 36; ++k) {
      const double t1 = k / 12.0, t2 = (k + 1) / 12.0;
      CHECK(curves[i].marginal_default_prob(t1, t2) >=
            curves[i - 1].marginal_default_prob(t1, t2));
    }
    for (int y = 1; y <= 30; ++y) {
      CHECK(curves[i].survival(y) <= curves[i - 1].survival(y));
    }
  }
}

TEST_CASE("rating table validation") {
  auto mk = [](Rating r, double bps) {
    return CreditCurve::from_one_year_pd(r, bps / 10'000.0);
  };
  const RatingTable table({mk(Rating::AAA, 1.0), mk(Rating::BBB, 20.0), mk(Rating::CCC, 2682.0)},
                          Rating::AAA);
  CHECK(table.reference() == Rating::AAA);
  CHECK(table.contains(Rating::BBB));
  CHECK_FALSE(table.contains(Rating::AA));
  CHECK(table.curve(Rating::CCC).hazard() > table.curve(Rating::AAA).hazard());
  CHECK_THROWS_AS(table.curve(Rating::B), std::out_of_range);

  // Hazards must weakly increase along the rating order.
  CHECK_THROWS_AS(RatingTable({mk(Rating::AAA, 50.0), mk(Rating::BBB, 20.0)}, Rating::AAA),
                  std::invalid_argument);
  // Reference must exist and have the lowest hazard.
  CHECK_THROWS_AS(RatingTable({mk(Rating::AAA, 1.0)}, Rating::CCC), std::invalid_argument);
  CHECK_THROWS_AS(RatingTable({mk(Rating::AAA, 1.0), mk(Rating::BBB, 20.0)}, Rating::BBB),
                  std::invalid_argument);
  CHECK_THROWS_AS(RatingTable({mk(Rating::AAA, 1.0), mk(Rating::AAA, 1.0)}, Rating::AAA),
                  std::invalid_argument);
}

TEST_CASE("lgd bounds") {
  CHECK(LgdAssumption(0.6).lgd() == 0.6);
  CHECK_NOTHROW(LgdAssumption(0.0));
  CHECK_NOTHROW(LgdAssumption(1.0));
  CHECK_THROWS_AS(LgdAssumption(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(LgdAssumption(1.01), std::invalid_argument);
}

TEST_CASE("rating labels round-trip") {
  for (Rating r : kRatingOrder) {
    CHECK(rating_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(rating_from_string("AAAA"), std::invalid_argument);
}
