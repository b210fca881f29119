#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tonguetrace/jet.hpp"

using tt::Jet;
using Sig = tt::Signal<double>;

TEST_CASE("Cauchy product of scalar jets") {
  Jet<double> x(2);
  x.a = {1.0, 2.0, 3.0};
  const Jet<double> sq = tt::jet_mul(x, x);
  CHECK(sq.a[0] == 1.0);
  CHECK(sq.a[1] == 4.0);
  CHECK(sq.a[2] == 10.0);  // 2*1*3 + 2*2
}

TEST_CASE("derivative-value accessors") {
  Jet<double> x(4);
  x.set_derivative_value(3, 12.0);
  CHECK(x.a[3] == doctest::Approx(2.0));  // 12 / 3!
  CHECK(x.derivative_value(3) == doctest::Approx(12.0));
}

TEST_CASE("product truncates to the shorter jet") {
  Jet<double> x(4), y(2);
  x.a = {1, 1, 1, 1, 1};
  y.a = {1, 1, 1};
  CHECK(tt::jet_mul(x, y).order() == 2);
}

TEST_CASE("signal-valued jets") {
  Jet<Sig> x(1);
  x.a[0] = Sig::cosine(1);
  x.a[1] = Sig::sine(1);
  const Jet<Sig> sq = tt::jet_mul(x, x);
  // [x^2]_1 = 2 cos sin = sin 2t
  CHECK(sq.a[1].coeff_of(0, tt::TermKind::Sine, 2) == doctest::Approx(1.0).epsilon(1e-14));
  const Jet<Sig> d = tt::jet_sub(x, tt::jet_scale(x, 0.5));
  CHECK(tt::eval(d.a[0], 0.3) == doctest::Approx(0.5 * std::cos(0.3)).epsilon(1e-13));
}

TEST_CASE("mixed scalar-by-signal jet product") {
  Jet<double> c(1);
  c.a = {2.0, -1.0};
  Jet<Sig> x(1);
  x.a[0] = Sig::cosine(1);
  x.a[1] = Sig::zero();
  const auto p = tt::jet_mul(c, x);
  CHECK(p.a[0].coeff_of(0, tt::TermKind::Cosine, 1) == doctest::Approx(2.0));
  CHECK(p.a[1].coeff_of(0, tt::TermKind::Cosine, 1) == doctest::Approx(-1.0));
}

TEST_CASE("linear slot extraction from a square") {
  Jet<double> x(2);
  x.a = {1.0, 2.0, 0.0};
  const auto [known, mult] = tt::jet_linear_slot(x, 2);
  CHECK(known.a[2] == 4.0);
  CHECK(mult == 2.0);
  Jet<double> y(2);
  y.a = {1.0, 2.0, 5.0};
  CHECK_THROWS_AS(tt::jet_linear_slot(y, 2), tt::SlotAlreadyFixed);
}
