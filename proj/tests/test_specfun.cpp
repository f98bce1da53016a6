#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <gtest/gtest.h>

#include "zeldovich/specfun.hpp"

namespace sf = zeldovich::specfun;
namespace bm = boost::math;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Independent long double series for gamma(s, x) at small x.
long double lower_gamma_ld(long double s, long double x) {
  long double term = std::pow(x, s) * std::exp(-x) / s;
  long double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  return sum;
}

}  // namespace

TEST(GammaComplete, MatchesFactorialsAndHalfIntegers) {
  EXPECT_NEAR(sf::gamma_complete(5.0), 24.0, 1e-12);
  EXPECT_LT(rel(sf::gamma_complete(0.5), std::sqrt(M_PI)), 1e-14);
  EXPECT_LT(rel(sf::gamma_complete(170.5), bm::tgamma(170.5)), 1e-12);
}

TEST(GammaComplete, OverflowAndDomainErrors) {
  EXPECT_THROW(sf::gamma_complete(172.0), std::overflow_error);
  EXPECT_THROW(sf::gamma_complete(0.0), std::domain_error);
  EXPECT_THROW(sf::gamma_complete(-1.5), std::domain_error);
}

TEST(LogGamma, AgreesWithBoostAcrossStirlingSwitch) {
  for (double s : {0.3, 1.0, 2.5, 50.0, 169.9, 170.1, 500.0, 1e4}) {
    EXPECT_LT(std::abs(sf::log_gamma(s) - bm::lgamma(s)), 1e-12 * std::max(1.0, std::abs(bm::lgamma(s))))
        << "s=" << s;
  }
}

TEST(IncompleteGamma, UpperMatchesBoost) {
  for (double s : {0.5, 1.0, 2.99994675, 3.0, 4.5, 11.0, 30.0}) {
    for (double x : {1e-6, 0.1, 1.0, 2.9, 3.1, 10.0, 45.0, 200.0}) {
      const double want = bm::tgamma(s, x);
      if (want < 1e-290) continue;
      EXPECT_LT(rel(sf::gamma_upper(s, x), want), 1e-12) << "s=" << s << " x=" << x;
    }
  }
}

TEST(IncompleteGamma, LowerMatchesLongDoubleSeries) {
  for (double s : {0.5, 2.0, 2.99994675, 7.0}) {
    for (double x : {1e-8, 1e-3, 0.5, 2.0}) {
      const double want = static_cast<double>(lower_gamma_ld(s, x));
      EXPECT_LT(rel(sf::gamma_lower(s, x), want), 1e-13) << "s=" << s << " x=" << x;
    }
  }
}

TEST(IncompleteGamma, SumIsCompleteGamma) {
  for (double s : {0.7, 3.0, 9.5}) {
    for (double x : {0.2, 3.0, 8.0, 20.0}) {
      EXPECT_LT(rel(sf::gamma_lower(s, x) + sf::gamma_upper(s, x), std::tgamma(s)), 1e-13);
    }
  }
}

TEST(IncompleteGamma, ScaledSurvivesUnderflow) {
  EXPECT_EQ(sf::gamma_upper(2.0, 800.0), 0.0);
  // e^x Gamma(2, x) = x + 1.
  EXPECT_LT(rel(sf::gamma_upper_scaled(2.0, 800.0), 801.0), 1e-13);
  EXPECT_LT(rel(sf::gamma_upper_scaled(3.0, 5.0), std::exp(5.0) * bm::tgamma(3.0, 5.0)), 1e-13);
}

TEST(IncompleteGamma, RegularizedP) {
  for (double s : {1.0, 2.99994675, 20.0}) {
    for (double x : {0.01, 1.0, 15.0, 60.0}) {
      EXPECT_NEAR(sf::gamma_p(s, x), bm::gamma_p(s, x), 1e-14) << "s=" << s << " x=" << x;
    }
  }
  EXPECT_EQ(sf::gamma_p(3.0, 0.0), 0.0);
}

TEST(IncompleteGamma, DomainErrors) {
  EXPECT_THROW(sf::gamma_upper(0.0, 1.0), std::domain_error);
  EXPECT_THROW(sf::gamma_upper(1.0, -1.0), std::domain_error);
  EXPECT_THROW(sf::gamma_lower(1.0, std::nan("")), std::domain_error);
}

TEST(Bessel, J012MatchBoostOverAllRegimes) {
  for (double x : {0.0, 1e-8, 1e-3, 0.5, 2.0, 7.5, 19.9, 20.1, 35.0, 120.0, 1e4}) {
    const auto j = sf::bessel_j012(x);
    EXPECT_NEAR(j.j0, bm::cyl_bessel_j(0, x), 1e-14) << "x=" << x;
    EXPECT_NEAR(j.j1, bm::cyl_bessel_j(1, x), 1e-14) << "x=" << x;
    EXPECT_NEAR(j.j2, bm::cyl_bessel_j(2, x), 1e-14) << "x=" << x;
    EXPECT_NEAR(sf::bessel_j1(x), std::cyl_bessel_j(1.0, x), 1e-14) << "x=" << x;
  }
}

TEST(Bessel, RecurrenceHolds) {
  for (double x : {0.3, 4.0, 25.0, 300.0}) {
    const auto j = sf::bessel_j012(x);
    EXPECT_NEAR(j.j2, 2.0 * j.j1 / x - j.j0, 1e-14);
  }
}

TEST(Bessel, NegativeArgumentRejected) { EXPECT_THROW(sf::bessel_j1(-1.0), std::domain_error); }

TEST(Laguerre, MatchesBoostAssociated) {
  for (int n = 0; n <= 6; ++n) {
    for (unsigned m : {0u, 1u, 3u, 7u}) {
      for (double x : {0.0, 0.5, 3.0, 12.0}) {
        const double want = bm::laguerre(n, m, x);
        EXPECT_NEAR(sf::laguerre(n, m, x), want, 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST(Laguerre, NonIntegerOrderLowDegree) {
  const double a = 2.5;
  const double x = 1.7;
  EXPECT_DOUBLE_EQ(sf::laguerre(0, a, x), 1.0);
  EXPECT_NEAR(sf::laguerre(1, a, x), 1.0 + a - x, 1e-15);
  EXPECT_NEAR(sf::laguerre(2, a, x), 0.5 * (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)),
              1e-14);
  EXPECT_THROW(sf::laguerre(-1, a, x), std::domain_error);
}
