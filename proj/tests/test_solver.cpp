#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tonguetrace/floquet.hpp"
#include "tonguetrace/solver.hpp"

using tt::Branch;
using tt::UnknownVector;
using tt::Variant;

TEST_CASE("Newton on a scalar quadratic") {
  tt::AlgebraicSystem sys;
  sys.spec.order = -1;  // dim = delta only
  sys.residual_map = [](const UnknownVector& u) {
    return std::vector<double>{u.delta * u.delta - 4.0};
  };
  UnknownVector u0;
  u0.delta = 3.0;
  const tt::CurvePoint p = tt::newton_solve(sys, u0);
  CHECK(p.delta == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(p.newton_iters <= 6);
}

TEST_CASE("impulsive 2pi branch hits the closed-form anchor") {
  const auto& b = tt::branch_by_id("i-p2-left");
  const tt::CurvePoint p = tt::solve_point(b, 3, 0.0, 2.0);
  CHECK(p.delta == doctest::Approx(0.480072).epsilon(2e-3));
  CHECK(p.floquet_check < 5e-3);
}

TEST_CASE("impulsive 4pi branch hits the closed-form anchor") {
  const auto& b = tt::branch_by_id("i-p4-left");
  const tt::CurvePoint p = tt::solve_point(b, 3, 0.0, 1.0);
  CHECK(p.delta == doctest::Approx(-0.194592).epsilon(2e-2));
  CHECK(std::abs(p.delta - (-0.194592)) < 2e-3);
  CHECK(p.floquet_check < 5e-3);
}

TEST_CASE("impulsive straight branches stay at the emanation point") {
  for (const char* id : {"i-p2-straight", "i-p4-straight"}) {
    const auto& b = tt::branch_by_id(id);
    for (double eps : {0.5, 1.5, 3.0}) {
      const tt::CurvePoint p = tt::solve_point(b, 3, 0.0, eps);
      CHECK(p.delta == doctest::Approx(b.emanation).epsilon(1e-10));
      CHECK(p.floquet_check < 1e-6);
    }
  }
}

TEST_CASE("curves emanate from the unforced transition points") {
  for (const char* id : {"c-4pi-left", "c-4pi-right", "c-2pi-zero", "i-p2-left"}) {
    const auto& b = tt::branch_by_id(id);
    const tt::CurvePoint p = tt::solve_point(b, 3, 0.0, 0.02);
    CHECK(std::abs(p.delta - b.emanation) < 0.02);
  }
}

TEST_CASE("classical principal tongue agrees with Floquet along the curve") {
  for (const char* id : {"c-4pi-left", "c-4pi-right"}) {
    const auto& b = tt::branch_by_id(id);
    const tt::TransitionCurve c = tt::trace_curve(b, 3, 0.0, 0.05, 1.5, 0.25);
    REQUIRE(c.points.size() >= 4);
    for (const auto& p : c.points) {
      CHECK(p.floquet_check < 5e-3);
      CHECK(p.residual_norm < 1e-8);
    }
    // left branch bends down, right branch bends up
    const double d_end = c.points.back().delta;
    if (std::string(id) == "c-4pi-left")
      CHECK(d_end < 0.25);
    else
      CHECK(d_end > 0.25);
  }
}

TEST_CASE("damped minus-root branch follows the Floquet boundary") {
  // only the negative-discriminant zeta0 root yields the transition curve;
  // trace where the N=4 truncation resolves the boundary well
  const auto& b = tt::branch_by_id("d-one-minus");
  const tt::TransitionCurve c = tt::trace_curve(b, 4, 0.1, 1.05, 1.20, 0.05);
  REQUIRE(c.points.size() >= 4);
  for (const auto& p : c.points) {
    CHECK(p.zeta0.has_value());
    CHECK(p.floquet_check < 5e-3);
    CHECK(p.residual_norm < 1e-8);
  }
  // the boundary drifts right with growing excitation
  CHECK(c.points.back().delta > c.points.front().delta);
}

TEST_CASE("damped branch refuses epsilon below the lift-off threshold") {
  // with c=0.1 the real zeta0 roots need eps >= 2 c h1 -> small eps fails
  const auto& b = tt::branch_by_id("d-one-minus");
  CHECK_THROWS_AS(tt::solve_point(b, 3, 0.5, 0.05), tt::Error);
}

TEST_CASE("continuation reports the last good point when the branch is lost") {
  const auto& b = tt::branch_by_id("c-4pi-left");
  try {
    // force an absurd range; expect BranchLost carrying progress, or success
    const tt::TransitionCurve c = tt::trace_curve(b, 3, 0.0, 0.05, 500.0, 50.0);
    CHECK(!c.points.empty());
  } catch (const tt::BranchLost& e) {
    CHECK(e.last_good_eps >= 0.05);
  }
}

TEST_CASE("higher order tightens the curve") {
  const auto& b = tt::branch_by_id("c-4pi-left");
  const tt::CurvePoint p3 = tt::solve_point(b, 3, 0.0, 1.0);
  const tt::CurvePoint p5 = tt::solve_point(b, 5, 0.0, 1.0);
  CHECK(p5.floquet_check <= p3.floquet_check + 1e-6);
}
