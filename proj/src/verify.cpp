#include "tonguetrace/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "tonguetrace/floquet.hpp"
#include "tonguetrace/galerkin.hpp"
#include "tonguetrace/ham.hpp"
#include "tonguetrace/solver.hpp"

namespace tt {

namespace {

using Sig = Signal<double>;

CheckResult make(const std::string& name, bool pass, double worst, double tol) {
  std::ostringstream ss;
  ss << "max deviation " << worst << " (tol " << tol << ")";
  return {name, pass, ss.str()};
}

// Closure of the signal family: products/derivatives evaluated symbolically
// agree with pointwise numerics.
CheckResult check_signal_algebra(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::uniform_real_distribution<double> T(0.0, 2 * M_PI);
  double worst = 0.0;
  for (int rep = 0; rep < 40; ++rep) {
    Sig a = add(Sig::term(U(rng), rep % 3, TermKind::Cosine, 1 + rep % 4),
                Sig::term(U(rng), 0, TermKind::Sine, 1 + (rep + 1) % 3, M_PI));
    Sig b = add(Sig::cosine(2, U(rng)), Sig::monomial(U(rng), 1));
    const Sig ab = mul(a, b);
    for (int k = 0; k < 10; ++k) {
      const double t = T(rng);
      worst = std::max(worst, std::abs(eval(ab, t) - eval(a, t) * eval(b, t)));
    }
    // antiderivative round-trip is symbolically exact
    Sig smooth = add(Sig::term(U(rng), 2, TermKind::Sine, 3), Sig::monomial(U(rng), 1));
    const Sig F = antiderivative(smooth);
    const double t = T(rng);
    worst = std::max(worst, std::abs(eval(differentiate(F), t) - eval(smooth, t)));
  }
  return make("signal-algebra closure", worst < 1e-12, worst, 1e-12);
}

CheckResult check_signal_residual(std::mt19937& rng) {
  // solve_sho must satisfy its ODE exactly (symbolic second derivative)
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Sig f = add(add(Sig::cosine(1, U(rng)), Sig::term(U(rng), 1, TermKind::Sine, 2)),
                Sig::dirac(U(rng), 1.0 + rep * 0.1));
    const Sig x = solve_sho(f, U(rng), U(rng), 1);
    const Sig lhs = add(differentiate(differentiate(x)), x);
    const Sig diff = lhs - f.without_impulses();
    for (double t : {0.3, 1.7, 2.9, 4.1, 5.5})
      worst = std::max(worst, std::abs(eval(diff.without_impulses(), t)));
  }
  return make("forced-oscillator residual", worst < 1e-12, worst, 1e-12);
}

CheckResult check_jet_leibniz(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 30; ++rep) {
    const int M = 5;
    Jet<double> x(M), y(M);
    for (int i = 0; i <= M; ++i) {
      x.a[i] = U(rng);
      y.a[i] = U(rng);
    }
    const Jet<double> xy = jet_mul(x, y);
    // Leibniz in derivative-value form: (xy)^[n] = sum C(n,k) x^[k] y^[n-k]
    for (int n = 0; n <= M; ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double C = detail::factorial(n) /
                         (detail::factorial(k) * detail::factorial(n - k));
        s += C * x.derivative_value(k) * y.derivative_value(n - k);
      }
      worst = std::max(worst, std::abs(s - xy.derivative_value(n)));
    }
  }
  return make("jet Leibniz rule", worst < 1e-12, worst, 1e-12);
}

CheckResult check_secular_free(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.2, -0.3);
  double worst = 0.0;
  auto probe = [&](ProblemSpec spec) {
    UnknownVector u;
    u.delta = spec.delta;
    u.h.assign(spec.order + 1, 0.0);
    for (auto& h : u.h) h = U(rng) * 0.3;
    u.h[0] = U(rng);
    const HamSolution<double> sol = run_expansion<double>(spec, u);
    for (const auto& f : sol.resolved_forcings) {
      if (spec.variant == Variant::Impulsive) {
        const Sig w = spec.branch == Branch::SinStart ? Sig::sine(1) : Sig::cosine(1);
        worst = std::max(worst, std::abs(definite_integral(mul(w, f), 0.0, 2 * M_PI)) /
                                    std::max(1.0, f.max_abs_coeff()));
      } else {
        worst = std::max(worst, std::abs(f.coeff_of(0, TermKind::Cosine, 1)) /
                                    std::max(1.0, f.max_abs_coeff()));
        worst = std::max(worst, std::abs(f.coeff_of(0, TermKind::Sine, 1)) /
                                    std::max(1.0, f.max_abs_coeff()));
      }
    }
  };
  for (int rep = 0; rep < 6; ++rep) {
    ProblemSpec spec;
    spec.variant = Variant::Classical;
    spec.lambda1 = 2;
    spec.branch = rep % 2 ? Branch::SinStart : Branch::CosStart;
    spec.order = 3;
    spec.epsilon = 0.5 + 0.3 * rep;
    spec.delta = 0.25 - 0.1 * rep;
    probe(spec);

    spec.variant = Variant::Impulsive;
    spec.lambda1 = 1;
    spec.delta = 0.8;
    probe(spec);

    spec.variant = Variant::Damped;
    spec.lambda1 = 1;
    spec.branch = Branch::ZetaStart;
    spec.damping = 0.1;
    spec.epsilon = 1.0 + 0.2 * rep;
    spec.delta = 1.0;
    spec.order = 4;
    probe(spec);
  }
  return make("secular-free forcings", worst < 1e-10, worst, 1e-10);
}

CheckResult check_det_law(std::mt19937& rng, bool fast) {
  std::uniform_real_distribution<double> D(-0.5, 2.1), E(0.0, 3.0);
  double worst = 0.0;
  const int reps = fast ? 8 : 25;
  for (int rep = 0; rep < reps; ++rep) {
    const double d = D(rng), e = E(rng);
    worst = std::max(worst,
                     std::abs(monodromy(Variant::Classical, d, e, 0.0).det() - 1.0));
    const double c = 0.05 + 0.1 * (rep % 3);
    worst = std::max(worst, std::abs(monodromy(Variant::Damped, d, e, c).det() -
                                     std::exp(-2 * M_PI * c)));
    worst = std::max(worst,
                     std::abs(monodromy(Variant::Impulsive, d, e, 0.0).det() - 1.0));
  }
  return make("det(M) = exp(-2 pi c)", worst < 1e-6, worst, 1e-6);
}

CheckResult check_impulsive_trace(const VerifyOptions& opt) {
  double worst = 0.0;
  const int n = opt.fast ? 8 : 20;
  FloquetOptions fopt;
  fopt.flip_impulse_jump = opt.flip_impulse_jump;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double D = -0.5 + 2.5 * i / (n - 1);
      const double e = -4.0 + 8.0 * j / (n - 1);
      const MonodromyMatrix M = monodromy(Variant::Impulsive, D, e, 0.0, fopt);
      worst = std::max(worst, std::abs(M.trace() - impulsive_trace(D, e)));
    }
  }
  return make("impulsive trace closed form vs RK", worst < 1e-6, worst, 1e-6);
}

CheckResult check_order_refinement(bool fast) {
  // higher truncation order must track the stability boundary at least as well
  const double eps_hi = fast ? 3.5 : 4.5;
  auto max_check = [&](int order) {
    const BranchDef& b = branch_by_id("c-4pi-left");
    TransitionCurve c = trace_curve(b, order, 0.0, 3.0, eps_hi, 0.25);
    double m = 0.0;
    for (const auto& p : c.points) m = std::max(m, p.floquet_check);
    return m;
  };
  const double m3 = max_check(3), m5 = max_check(5);
  std::ostringstream ss;
  ss << "max Floquet check over upper range: N=5 " << m5 << " vs N=3 " << m3;
  return {"order refinement (N=5 tracks where N=3 deviates)", m5 <= m3, ss.str()};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  std::mt19937 rng(20260823);
  std::vector<CheckResult> out;
  out.push_back(check_signal_algebra(rng));
  out.push_back(check_signal_residual(rng));
  out.push_back(check_jet_leibniz(rng));
  out.push_back(check_secular_free(rng));
  out.push_back(check_det_law(rng, opt.fast));
  out.push_back(check_impulsive_trace(opt));
  out.push_back(check_order_refinement(opt.fast));
  return out;
}

}  // namespace tt
