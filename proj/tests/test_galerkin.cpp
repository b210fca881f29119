#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tonguetrace/galerkin.hpp"

using tt::Branch;
using tt::ProblemSpec;
using tt::Variant;
using Sig = tt::Signal<double>;

namespace {

ProblemSpec spec_of(Variant v, int lambda1, Branch b, double eps, double delta,
                    int order = 3, double damping = 0.0) {
  ProblemSpec s;
  s.variant = v;
  s.lambda1 = lambda1;
  s.branch = b;
  s.epsilon = eps;
  s.delta = delta;
  s.order = order;
  s.damping = damping;
  return s;
}

}  // namespace

TEST_CASE("exact eigensolution has zero residual") {
  const Sig x = Sig::cosine(1, 1.0, 0.5);  // cos(t/2)
  const auto s = spec_of(Variant::Classical, 2, Branch::CosStart, 0.0, 0.25);
  const Sig r = tt::residual_signal(s, x);
  CHECK(r.empty());
}

TEST_CASE("impulsive straight-line solutions have exactly empty residuals") {
  // sin(t) at Delta=1: the impulse samples sin(pi)=0
  const auto s1 = spec_of(Variant::Impulsive, 1, Branch::SinStart, 2.5, 1.0);
  CHECK(tt::residual_signal(s1, Sig::sine(1)).empty());
  // cos(t/2) at Delta=0.25: impulses at pi and 3*pi sample cos at +-pi/2
  const auto s2 = spec_of(Variant::Impulsive, 2, Branch::CosStart, -1.7, 0.25);
  CHECK(tt::residual_signal(s2, Sig::cosine(1, 1.0, 0.5)).empty());
}

TEST_CASE("direct substitution residual") {
  // x = cos t at delta=1, eps=1: residual = eps cos^2 t
  const auto s = spec_of(Variant::Classical, 1, Branch::CosStart, 1.0, 1.0);
  const Sig r = tt::residual_signal(s, Sig::cosine(1));
  CHECK(r.coeff_of(0, tt::TermKind::Constant, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.coeff_of(0, tt::TermKind::Cosine, 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.terms.size() == 2);
}

TEST_CASE("orthogonality projection") {
  const auto s = spec_of(Variant::Classical, 2, Branch::CosStart, 0.0, 0.25);
  const tt::WeightSet ws = tt::weight_set(s);
  const Sig r = Sig::cosine(3, 1.0, 0.5);  // cos(3t/2)
  const auto p = tt::project(r, ws);
  CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));  // weight cos(t/2)
}

TEST_CASE("Dirac residual sampled by the ramp weight") {
  const auto s = spec_of(Variant::Impulsive, 1, Branch::CosStart, 1.0, 0.5);
  const tt::WeightSet ws = tt::weight_set(s);
  Sig r = Sig::dirac(0.7, M_PI);
  const auto p = tt::project(r, ws);
  CHECK(p[0] == doctest::Approx(0.7 * M_PI).epsilon(1e-13));  // weight t
}

TEST_CASE("weight-set cardinality is N+1 for every variant and parity") {
  for (int N : {1, 2, 3, 4, 5}) {
    for (auto [v, l1, b] : {std::tuple{Variant::Classical, 2, Branch::CosStart},
                            {Variant::Classical, 2, Branch::SinStart},
                            {Variant::Classical, 1, Branch::CosStart},
                            {Variant::Classical, 1, Branch::SinStart},
                            {Variant::Damped, 1, Branch::ZetaStart},
                            {Variant::Impulsive, 1, Branch::CosStart},
                            {Variant::Impulsive, 2, Branch::SinStart}}) {
      const auto s = spec_of(v, l1, b, 0.5, 0.5, N, v == Variant::Damped ? 0.1 : 0.0);
      CHECK(tt::weight_set(s).weights.size() == static_cast<size_t>(N + 1));
    }
  }
}

TEST_CASE("projection is linear in the residual") {
  const auto s = spec_of(Variant::Classical, 2, Branch::CosStart, 1.0, 0.2);
  const tt::WeightSet ws = tt::weight_set(s);
  const Sig r1 = tt::add(Sig::cosine(1, 0.8, 0.5), Sig::monomial(0.3, 1, 0.5));
  const Sig r2 = tt::add(Sig::sine(3, -1.1, 0.5), Sig::constant(0.4, 0.5));
  const auto pa = tt::project(tt::add(tt::scale(r1, 2.0), r2), ws);
  const auto p1 = tt::project(r1, ws);
  const auto p2 = tt::project(r2, ws);
  for (size_t i = 0; i < pa.size(); ++i)
    CHECK(pa[i] == doctest::Approx(2.0 * p1[i] + p2[i]).epsilon(1e-13));
}

TEST_CASE("damped weights follow the listed order") {
  const auto s = spec_of(Variant::Damped, 1, Branch::ZetaStart, 1.0, 1.0, 4, 0.1);
  const tt::WeightSet ws = tt::weight_set(s);
  REQUIRE(ws.weights.size() == 5);
  CHECK(ws.weights[0].coeff_of(0, tt::TermKind::Constant, 0) == 1.0);
  CHECK(ws.weights[1].coeff_of(0, tt::TermKind::Cosine, 1) == 1.0);
  CHECK(ws.weights[2].coeff_of(0, tt::TermKind::Sine, 1) == 1.0);
  CHECK(ws.weights[3].coeff_of(0, tt::TermKind::Cosine, 2) == 1.0);
  CHECK(ws.weights[4].coeff_of(0, tt::TermKind::Sine, 2) == 1.0);
}

TEST_CASE("impulsive 2pi weights start with t, cos t, then gated harmonics") {
  const auto s = spec_of(Variant::Impulsive, 1, Branch::CosStart, 1.0, 0.5, 3);
  const tt::WeightSet ws = tt::weight_set(s);
  REQUIRE(ws.weights.size() == 4);
  CHECK(ws.weights[0].coeff_of(1, tt::TermKind::Constant, 0) == 1.0);
  CHECK(ws.weights[1].coeff_of(0, tt::TermKind::Cosine, 1) == 1.0);
  CHECK(ws.weights[2].coeff_of(0, tt::TermKind::Cosine, 1, M_PI) == 1.0);
  CHECK(ws.weights[3].coeff_of(0, tt::TermKind::Sine, 1, M_PI) == 1.0);
}
