#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tonguetrace/floquet.hpp"

using tt::FloquetOptions;
using tt::MonodromyMatrix;
using tt::Variant;

TEST_CASE("eps=0, delta=1: monodromy is the identity") {
  const MonodromyMatrix m = tt::monodromy(Variant::Classical, 1.0, 0.0, 0.0);
  CHECK(m.m[0][0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m.m[1][1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(m.m[0][1]) < 1e-9);
  CHECK(std::abs(m.m[1][0]) < 1e-9);
}

TEST_CASE("eps=0, delta=1/4: antiperiodic, trace -2") {
  const MonodromyMatrix m = tt::monodromy(Variant::Classical, 0.25, 0.0, 0.0);
  CHECK(m.trace() == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("damped eps=0: multipliers have magnitude exp(-pi c)") {
  const double c = 0.1;
  const MonodromyMatrix m = tt::monodromy(Variant::Damped, 1.0, 0.0, c);
  CHECK(m.max_multiplier() == doctest::Approx(std::exp(-M_PI * c)).epsilon(1e-8));
  CHECK(m.det() == doctest::Approx(std::exp(-2 * M_PI * c)).epsilon(1e-8));
}

TEST_CASE("classification of trivial cases") {
  // deep inside the first stable region
  CHECK(tt::classify(tt::monodromy(Variant::Classical, 0.6, 0.1, 0.0),
                     Variant::Classical) == tt::Stability::Stable);
  // negative delta, no excitation: exponential growth
  CHECK(tt::classify(tt::monodromy(Variant::Classical, -0.5, 0.0, 0.0),
                     Variant::Classical) == tt::Stability::Unstable);
  // inside the principal tongue
  CHECK(tt::classify(tt::monodromy(Variant::Classical, 0.25, 0.5, 0.0),
                     Variant::Classical) == tt::Stability::Unstable);
  // damping stabilizes the marginal case
  CHECK(tt::classify(tt::monodromy(Variant::Damped, 1.0, 0.0, 0.1),
                     Variant::Damped) == tt::Stability::Stable);
}

TEST_CASE("determinant follows Liouville's formula") {
  for (double delta : {0.3, 1.0, 2.2}) {
    CHECK(tt::monodromy(Variant::Classical, delta, 0.7, 0.0).det() ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(tt::monodromy(Variant::Damped, delta, 0.7, 0.25).det() ==
          doctest::Approx(std::exp(-2 * M_PI * 0.25)).epsilon(1e-8));
    CHECK(tt::monodromy(Variant::Impulsive, delta, 0.7, 0.0).det() ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("closed-form impulsive trace matches the RK monodromy") {
  for (double Delta : {-0.4, 0.0, 0.25, 0.7, 1.3, 2.0}) {
    for (double eps : {0.0, 0.3, 1.1, 2.5}) {
      const double rk = tt::monodromy(Variant::Impulsive, Delta, eps, 0.0).trace();
      CHECK(tt::impulsive_trace(Delta, eps) == doctest::Approx(rk).epsilon(1e-7));
    }
  }
  // Delta=1/4: trace = 2 cos(pi) - 2 eps sin(pi) = -2 for every eps
  CHECK(tt::impulsive_trace(0.25, 1.7) == doctest::Approx(-2.0));
  CHECK(tt::impulsive_trace(0.0, 0.5) == doctest::Approx(2.0 - 2 * M_PI * 0.5));
}

TEST_CASE("impulsive transition anchors") {
  // 2pi-periodic branch through (1,0): Delta ~ 0.48007 at eps = 2
  CHECK(tt::impulsive_trace(0.480072, 2.0) == doctest::Approx(2.0).epsilon(1e-4));
  // 4pi-periodic branch through (1/4,0): Delta ~ -0.194592 at eps = 1
  CHECK(tt::impulsive_trace(-0.194592, 1.0) == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("flipping the impulse jump sign is detectable") {
  FloquetOptions flipped;
  flipped.flip_impulse_jump = true;
  const double good = tt::monodromy(Variant::Impulsive, 0.7, 1.1, 0.0).trace();
  const double bad = tt::monodromy(Variant::Impulsive, 0.7, 1.1, 0.0, flipped).trace();
  CHECK(std::abs(good - bad) > 1e-3);
  CHECK(tt::impulsive_trace(0.7, 1.1) == doctest::Approx(good).epsilon(1e-7));
}

TEST_CASE("RK step-halving converges") {
  FloquetOptions coarse, fine;
  coarse.steps_per_period = 2000;
  fine.steps_per_period = 4000;
  for (auto v : {Variant::Classical, Variant::Impulsive}) {
    const double a = tt::monodromy(v, 0.8, 1.3, 0.0, coarse).trace();
    const double b = tt::monodromy(v, 0.8, 1.3, 0.0, fine).trace();
    CHECK(std::abs(a - b) < 1e-8);
  }
}

TEST_CASE("single-cell grid scan") {
  tt::ChartSpec spec;
  spec.delta_min = spec.delta_max = 5.0;
  spec.eps_min = spec.eps_max = 0.0;
  spec.nx = spec.ny = 1;
  const tt::StabilityChart chart = tt::grid_scan(spec, 1);
  REQUIRE(chart.cells.size() == 1);
  CHECK(chart.cells[0] == 0);
  CHECK(chart.delta_at(0) == doctest::Approx(5.0));
  CHECK(chart.eps_at(0) == doctest::Approx(0.0));
}

TEST_CASE("grid scan is independent of the worker count") {
  tt::ChartSpec spec;
  spec.nx = 31;
  spec.ny = 17;
  spec.delta_min = -0.3;
  spec.delta_max = 1.8;
  spec.eps_min = 0.0;
  spec.eps_max = 3.0;
  const auto c1 = tt::grid_scan(spec, 1);
  const auto c4 = tt::grid_scan(spec, 4);
  const auto c7 = tt::grid_scan(spec, 7);
  CHECK(c1.cells == c4.cells);
  CHECK(c1.cells == c7.cells);
  // sanity: both phases present
  int unstable = 0;
  for (auto c : c1.cells) unstable += c;
  CHECK(unstable > 0);
  CHECK(unstable < static_cast<int>(c1.cells.size()));
}

TEST_CASE("sampled trajectory applies the impulse jump exactly") {
  // x''+Delta x = -eps delta(t-pi) x: across t=pi the velocity jumps by
  // -eps x(pi); compare against piecewise closed form with Delta=1, x0=1.
  const double Delta = 1.0, eps = 0.8;
  const int n = 401;
  const auto xs = tt::integrate_samples(Variant::Impulsive, Delta, eps, 0.0,
                                        2 * M_PI, n, 1.0, 0.0);
  REQUIRE(static_cast<int>(xs.size()) == n);
  for (int k = 0; k < n; ++k) {
    const double t = 2 * M_PI * k / (n - 1);
    // x = cos t before the impulse; after it x(pi)=-1, v jumps by -eps*(-1)
    const double ref = t < M_PI ? std::cos(t) : -std::cos(t - M_PI) + eps * std::sin(t - M_PI);
    CHECK(xs[k] == doctest::Approx(ref).epsilon(1e-8));
  }
}
