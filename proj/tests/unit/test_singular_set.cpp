#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "esdl/singular_set.hpp"

using namespace esdl;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("f on V_0") {
  for (int p = 3; p <= 8; ++p)
    CHECK(f_on_ray(FamilyParams(p, 0.75), 0.0) == doctest::Approx(0.75 * p).epsilon(1e-14));
  const FamilyParams one(4, 1.0);
  for (double t : {0.3, 1.0, 2.5, 7.0, 19.0, 60.0}) {
    const double a = t / kSqrt2;
    CHECK(f_on_ray(one, t) == doctest::Approx(4.0 * std::cosh(a) * std::cos(a)).epsilon(1e-11));
  }
}

TEST_CASE("property: f on V_0 is real") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 400.0);
  for (int p = 3; p <= 8; ++p) {
    const FamilyParams params(p, 1.0);
    for (int i = 0; i < 1000; ++i)
      CHECK(ray_imag_residual(params, u(rng)) < 1e-9);
  }
}

TEST_CASE("zeros on V_0 for p = 4") {
  const std::vector<double> zeros = zeros_on_ray(FamilyParams(4, 1.0), 60.0);
  REQUIRE(zeros.size() >= 10);
  CHECK(zeros[0] == doctest::Approx(2.221441469079183).epsilon(1e-12));
  for (std::size_t k = 0; k < zeros.size(); ++k)
    CHECK(std::abs(zeros[k] - kSqrt2 * (kPi / 2 + k * kPi)) < 1e-10);
  // The first zero is (pi/2)(1 + i).
  CHECK(std::abs(zeros[0] * std::polar(1.0, kPi / 4) - Complex(kPi / 2, kPi / 2)) < 1e-10);
}

TEST_CASE("zeros do not depend on lambda") {
  for (int p : {4, 5, 6}) {
    const auto a = zeros_on_ray(FamilyParams(p, 1.0), 50.0);
    for (double lambda : {0.25, -3.0}) {
      const auto b = zeros_on_ray(FamilyParams(p, lambda), 50.0);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("carrier of f' on V_0") {
  for (int p = 3; p <= 10; ++p) {
    const Complex c = derivative_carrier(FamilyParams(p, 1.0));
    const Complex e = std::polar(1.0, -kPi / p);
    CAPTURE(p);
    CHECK(std::min(std::abs(c - e), std::abs(c + e)) < 1e-8);
  }
}

TEST_CASE("critical points and values for p = 4") {
  const FamilyParams quarter(4, 0.25);
  const auto crit = critical_points_on_ray(quarter, 60.0);
  REQUIRE(crit.size() >= 2);
  CHECK(crit[0] == 0.0);
  // t* = sqrt(2) a*, tan a* = tanh a* in (pi, 3 pi / 2).
  CHECK(crit[1] == doctest::Approx(5.553054243743719).epsilon(1e-11));

  const auto values = critical_values(quarter, 60.0);
  CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(values[1] == doctest::Approx(-17.951224408141453).epsilon(1e-10));
  const auto values_one = critical_values(FamilyParams(4, 1.0), 60.0);
  CHECK(values_one[1] == doctest::Approx(-71.80489763256581).epsilon(1e-10));
}

TEST_CASE("critical values are real and interlace with zeros") {
  for (int p : {4, 6})
    for (double lambda : {0.25, 1.0}) {
      const FamilyParams params(p, lambda);
      const double horizon = 22.0 * kPi / std::sin(kPi / p);
      const SingularData data = singular_data(params, horizon);
      CAPTURE(p);
      CAPTURE(lambda);
      REQUIRE(data.crit_t.size() >= 21);
      CHECK(data.max_imag_residual < 1e-8);
      for (std::size_t i = 1; i <= 20; ++i)
        CHECK(ray_imag_residual(params, data.crit_t[i]) < 1e-8);
      CHECK(data.crit_values[0] == doctest::Approx(lambda * p));
      for (double t : data.crit_t)
        CHECK(t < data.t_max);

      const SingularData near = singular_data(params, 60.0);
      CHECK(interlacing_holds(near));
    }
}

TEST_CASE("interlacing detects a missing zero") {
  SingularData d;
  d.crit_t = {0.0, 1.0, 3.0, 5.0};
  d.zeros_t = {0.5, 2.0, 4.0};
  CHECK(interlacing_holds(d));
  d.zeros_t = {0.5, 2.0};
  CHECK_FALSE(interlacing_holds(d));
  d.zeros_t = {0.5, 2.0, 2.5, 4.0};
  CHECK_FALSE(interlacing_holds(d));
}

TEST_CASE("postsingular orbits") {
  const PostsingularOrbit one = postsingular_orbit(FamilyParams(4, 1.0), 24, 60.0, 10);
  REQUIRE(one.seeds.size() == 10);
  CHECK(one.seeds[0] == doctest::Approx(4.0));
  CHECK(one.trajectories[0][1].value() == doctest::Approx(53.30917843030575).epsilon(1e-12));
  for (SeedVerdict v : one.verdicts)
    CHECK(v == SeedVerdict::Escapes);
  CHECK(one.max_imag_residual < 1e-9);
  for (const auto& traj : one.trajectories)
    for (std::size_t n = 1; n < traj.size(); ++n)
      CHECK(traj[n].log_abs > traj[n - 1].log_abs);

  const PostsingularOrbit quarter = iterate_real_seeds(FamilyParams(4, 0.25), {1.0}, 24);
  CHECK(quarter.verdicts[0] == SeedVerdict::BoundedWithinBudget);
  CHECK(quarter.trajectories[0].back().value() == doctest::Approx(1.0508464962516403).epsilon(1e-9));
  CHECK_THROWS_AS(iterate_real_seeds(FamilyParams(4, 1.0), {1.0}, 2), std::invalid_argument);
  CHECK(std::string(to_string(SeedVerdict::Escapes)) == "ESCAPES");
}

TEST_CASE("real scaled values") {
  for (double x : {-3.5, 0.0, 1e-200, 7.0, 1e300}) {
    const RealScaled s = RealScaled::from(x);
    CHECK(s.value() == doctest::Approx(x).epsilon(1e-13));  // exp(log x) loses ~|log x| ulps
  }
  CHECK(RealScaled::from(0.0).log_abs == -std::numeric_limits<double>::infinity());
}
