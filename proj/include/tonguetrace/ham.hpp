#pragma once

// Order-by-order expansion of the homotopy
//
//   (1-p) (x_tt + lambda(p)^2 x)
//     - h(p) (x_tt + lambda(p)^2 (delta + excitation) x + c lambda(p) x_t)
//     + aux(p)  =  0
//
// in the embedding parameter p.  Each order yields a forced SHO whose
// resonant content fixes lambda^[n] (and, for the damped variant, the
// initial-velocity correction zeta^[n-1]); the remainder is solved in closed
// form by the signal algebra.  All free parameters (delta, epsilon, h^[k])
// are numeric during a run; the outer solver recovers the algebraic relations
// by repeated evaluation.

#include <cmath>
#include <optional>
#include <vector>

#include "tonguetrace/errors.hpp"
#include "tonguetrace/jet.hpp"
#include "tonguetrace/problem.hpp"
#include "tonguetrace/signal.hpp"

namespace tt {

template <class S>
struct AffineForcing {
  // Derivative-value convention: x^[n]'' + lambda0^2 x^[n]
  //   = base + lambda^[n] * dir_lambda + zeta^[n-1] * dir_zeta
  Signal<S> base;
  Signal<S> dir_lambda;
  Signal<S> dir_zeta;  // damped only (empty otherwise)
};

template <class S>
struct SecularResult {
  S lambda_n{};
  std::optional<S> zeta_prev{};
  Signal<S> resolved;  // forcing with the secular unknowns substituted
};

template <class S>
struct HamSolution {
  std::vector<Signal<S>> x_orders;          // x^[0] .. x^[N], scaled time tau
  std::vector<S> lambda_orders;             // lambda^[1] .. lambda^[N+1]
  std::vector<S> zeta_orders;               // damped: zeta^[0] .. zeta^[N]
  std::vector<Signal<S>> resolved_forcings; // orders 1 .. N+1
  Signal<S> xN;                             // assembled solution in t
  S lambda_residual{};
};

// Zeroth-order deformation solution for the chosen branch.
template <class S>
Signal<S> zeroth_solution(const ProblemSpec& spec, S zeta0 = S(0)) {
  const int w = spec.lambda0;
  switch (spec.branch) {
    case Branch::CosStart:
      return Signal<S>::cosine(w);
    case Branch::SinStart:
      return Signal<S>::sine(w, S(1.0 / w));
    case Branch::ZetaStart:
      return add(Signal<S>::cosine(w), Signal<S>::sine(w, zeta0 * (1.0 / w)));
  }
  return Signal<S>::zero();
}

template <class S>
class Expansion {
 public:
  Expansion(const ProblemSpec& spec, const UnknownVector& u) : spec_(spec), u_(u) {
    spec_.validate();
    N_ = spec_.order;
    M_ = N_ + 1;
    if (static_cast<int>(u.h.size()) != M_)
      throw ConfigError("unknown vector needs h^[1]..h^[N+1]");
    lam_ = Jet<S>(M_);
    lam_.a[0] = S(spec_.lambda0);
    hjet_ = Jet<S>(M_);
    for (int k = 1; k <= M_; ++k) hjet_.set_derivative_value(k, S(u.h[k - 1]));
    X_.assign(M_ + 1, Signal<S>::zero());
    X_[0] = zeroth_solution<S>(spec_);
    excitation_ = build_excitation();
  }

  int order() const { return N_; }

  // F_n as an affine function of the secular unknowns (orders < n resolved).
  AffineForcing<S> deformation_rhs(int n) const {
    AffineForcing<S> f;
    const Signal<S> g00 = hom_coeff(n, S(0), S(0));
    const Signal<S> g10 = hom_coeff(n, S(1), S(0));
    const double nf = detail::factorial(n);
    f.base = scale(g00, S(-nf));
    f.dir_lambda = negate(g10 - g00);
    if (spec_.variant == Variant::Damped && n >= 2) {
      const Signal<S> g01 = hom_coeff(n, S(0), S(1));
      f.dir_zeta = scale(g01 - g00, S(-nf));
    }
    return f;
  }

  SecularResult<S> remove_secular(int n, const AffineForcing<S>& f) const {
    SecularResult<S> r;
    if (spec_.variant == Variant::Impulsive) {
      const S rb = windowed_resonance(f.base);
      const S rd = windowed_resonance(f.dir_lambda);
      if (absval(rd) < 1e-14)
        throw SingularSecularSystem("windowed secular coefficient vanished");
      r.lambda_n = -rb / rd;
      r.resolved = f.base + scale(f.dir_lambda, r.lambda_n);
    } else if (spec_.variant == Variant::Damped) {
      if (n == 1) return damped_first_order();
      const S bc = cos_coeff(f.base), bs = sin_coeff(f.base);
      const S lc = cos_coeff(f.dir_lambda), ls = sin_coeff(f.dir_lambda);
      const S zc = cos_coeff(f.dir_zeta), zs = sin_coeff(f.dir_zeta);
      const S det = lc * zs - ls * zc;
      if (absval(det) < 1e-13)
        throw SingularSecularSystem("secular 2x2 system is singular");
      r.lambda_n = (-bc * zs + bs * zc) / det;
      r.zeta_prev = (-lc * bs + ls * bc) / det;
      r.resolved = f.base + scale(f.dir_lambda, r.lambda_n) +
                   scale(f.dir_zeta, *r.zeta_prev);
    } else {
      const S rb = resonant_coeff(f.base), rd = resonant_coeff(f.dir_lambda);
      if (absval(rd) < 1e-14)
        throw SingularSecularSystem("secular coefficient vanished");
      r.lambda_n = -rb / rd;
      r.resolved = f.base + scale(f.dir_lambda, r.lambda_n);
    }
    return r;
  }

  // Runs orders 1..N+1 and assembles the solution.
  HamSolution<S> run() {
    HamSolution<S> sol;
    for (int n = 1; n <= M_; ++n) {
      SecularResult<S> sec;
      if (spec_.variant == Variant::Damped && n == 1) {
        sec = damped_first_order();
        X_[0] = zeroth_solution<S>(spec_, *sec.zeta_prev);
      } else {
        sec = remove_secular(n, deformation_rhs(n));
      }
      lam_.set_derivative_value(n, sec.lambda_n);
      if (sec.zeta_prev) {
        zeta_.push_back(*sec.zeta_prev);
        if (n >= 2) {
          // finalize x^[n-1]'s homogeneous part: velocity IC zeta^[n-1]
          const double c = 1.0 / (detail::factorial(n - 1) * spec_.lambda0);
          X_[n - 1] = X_[n - 1] + Signal<S>::sine(spec_.lambda0, *sec.zeta_prev * c);
        }
      }
      sol.lambda_orders.push_back(sec.lambda_n);
      sol.resolved_forcings.push_back(sec.resolved);
      if (n <= N_) {
        const Signal<S> xn = solve_sho(sec.resolved, S(0), S(0), spec_.lambda0);
        X_[n] = scale(xn, S(1.0 / detail::factorial(n)));
      }
    }
    sol.zeta_orders = zeta_;
    sol.x_orders.resize(N_ + 1);
    Signal<S> sum_tau = Signal<S>::zero();
    for (int n = 0; n <= N_; ++n) {
      sol.x_orders[n] = scale(X_[n], S(detail::factorial(n)));
      sum_tau = sum_tau + X_[n];
    }
    sol.xN = rescale_time(sum_tau, spec_.lambda1);
    S lam_sum(0);
    for (int n = 0; n <= M_; ++n) lam_sum += lam_.a[n];
    sol.lambda_residual = S(double(spec_.lambda1)) - lam_sum;
    return sol;
  }

 private:
  ProblemSpec spec_;
  UnknownVector u_;
  int N_ = 0, M_ = 0;
  Jet<S> lam_;
  Jet<S> hjet_;
  std::vector<Signal<S>> X_;  // Taylor-coefficient convention X_n = x^[n]/n!
  std::vector<S> zeta_;
  Signal<S> excitation_;  // delta + excitation, scaled time

  Signal<S> build_excitation() const {
    Signal<S> e = Signal<S>::constant(S(spec_.delta));
    const S eps(spec_.epsilon);
    if (spec_.variant == Variant::Impulsive) {
      if (spec_.lambda1 == 1) {
        e = e + Signal<S>::dirac(eps, M_PI);
      } else {
        e = e + Signal<S>::dirac(eps * 0.5, M_PI / 2) +
            Signal<S>::dirac(eps * 0.5, 3 * M_PI / 2);
      }
    } else {
      // excitation frozen at the target frequency: cos(lambda(1) tau)
      e = e + Signal<S>::cosine(spec_.lambda1, eps);
    }
    return e;
  }

  // Order-n Taylor coefficient of the homotopy with the X_n slot removed,
  // as a function of ell_n = lambda_n Taylor coefficient and the pending
  // zeta^[n-1] (derivative value).
  Signal<S> hom_coeff(int n, S ell_n, S zeta_prev) const {
    Jet<S> lam = lam_.truncated(n);
    if (n <= lam.order()) lam.a[n] = ell_n;
    Jet<Signal<S>> xj(n);
    for (int k = 0; k < n; ++k) xj.a[k] = X_[k];
    if (spec_.variant == Variant::Damped && n >= 2 && absval(zeta_prev) != 0.0) {
      const double c = 1.0 / (detail::factorial(n - 1) * spec_.lambda0);
      xj.a[n - 1] = xj.a[n - 1] + Signal<S>::sine(spec_.lambda0, zeta_prev * c);
    }
    Jet<Signal<S>> xdd(n), xd(n);
    for (int k = 0; k <= n; ++k) {
      xd.a[k] = differentiate(xj.a[k]);
      xdd.a[k] = differentiate(xd.a[k]);
    }
    const Jet<S> L = jet_mul(lam, lam);
    const Jet<Signal<S>> lin = jet_add(xdd, jet_mul(L, xj));
    Jet<S> one_minus_p(n);
    one_minus_p.a[0] = S(1);
    if (n >= 1) one_minus_p.a[1] = S(-1);
    Jet<Signal<S>> H = jet_mul(one_minus_p, lin);

    Jet<Signal<S>> exj(n);
    for (int k = 0; k <= n; ++k) exj.a[k] = mul(excitation_, xj.a[k]);
    Jet<Signal<S>> nlin = jet_add(xdd, jet_mul(L, exj));
    if (spec_.variant == Variant::Damped && spec_.damping != 0.0) {
      Jet<Signal<S>> damp = jet_mul(lam, xd);
      nlin = jet_add(nlin, jet_scale(damp, spec_.damping));
    }
    H = jet_sub(H, jet_mul(hjet_.truncated(n), nlin));

    if (spec_.variant == Variant::Damped) {
      // auxiliary operator  epsilon * p (1-p) cos(tau)
      Jet<Signal<S>> aux(n);
      if (n >= 1) aux.a[1] = Signal<S>::cosine(1, S(spec_.epsilon));
      if (n >= 2) aux.a[2] = Signal<S>::cosine(1, S(-spec_.epsilon));
      H = jet_add(H, aux);
    }
    return H.a[n];
  }

  S cos_coeff(const Signal<S>& s) const {
    return s.coeff_of(0, TermKind::Cosine, spec_.lambda0);
  }
  S sin_coeff(const Signal<S>& s) const {
    return s.coeff_of(0, TermKind::Sine, spec_.lambda0);
  }
  S resonant_coeff(const Signal<S>& s) const {
    return spec_.branch == Branch::SinStart ? sin_coeff(s) : cos_coeff(s);
  }
  // Impulsive variant: resonance in the integral-window sense over one
  // zeroth-order period of the restricted homotopy.
  S windowed_resonance(const Signal<S>& s) const {
    const Signal<S> w = spec_.branch == Branch::SinStart
                            ? Signal<S>::sine(spec_.lambda0)
                            : Signal<S>::cosine(spec_.lambda0);
    return definite_integral(mul(w, s), 0.0, 2 * M_PI);
  }

  // Order 1, damped: the two secular equations are quadratic in zeta^[0];
  // pick the root selected by the spec, then lambda^[1] follows.
  SecularResult<S> damped_first_order() const {
    // hom_coeff with a zeta0-loaded X_0 is affine in zeta0; build the pieces.
    Expansion tmp(*this);
    tmp.X_[0] = zeroth_solution<S>(spec_, S(0));
    const Signal<S> g0 = tmp.hom_coeff(1, S(0), S(0));
    tmp.X_[0] = zeroth_solution<S>(spec_, S(1));
    const Signal<S> g1 = tmp.hom_coeff(1, S(0), S(0));
    const Signal<S> dir = g1 - g0;
    const double w = spec_.lambda0;
    // forcing = -(g0 + zeta0 dir) - ell1 * 2 w (cos + zeta0 sin / w);
    // secular rows give  alpha + beta z - 2 w l = 0,  gamma + eta z - 2 z l = 0
    const S alpha = -tmp.cos_coeff(g0), beta = -tmp.cos_coeff(dir);
    const S gamma = -tmp.sin_coeff(g0), eta = -tmp.sin_coeff(dir);
    const S qa = beta / w, qb = alpha / w - eta, qc = -gamma;
    const S disc = qb * qb - 4.0 * qa * qc;
    const S root = sqrt_checked(disc);
    S z;
    if (spec_.zeta0_root == Zeta0Root::Minus) {
      const S denom = -qb + root;
      if (absval(denom) < 1e-300)
        throw SingularSecularSystem("zeta0 quadratic is degenerate");
      z = 2.0 * qc / denom;  // stable form of (-qb - root)/(2 qa)
    } else {
      if (absval(qa) < 1e-14)
        throw SingularSecularSystem("zeta0 quadratic has no finite plus root");
      z = (-qb + root) / (2.0 * qa);
    }
    const S ell1 = (alpha + beta * z) / (2.0 * w);
    SecularResult<S> r;
    r.zeta_prev = z;
    r.lambda_n = ell1;  // n = 1: derivative value equals Taylor coefficient
    // resolved forcing with zeta0 and lambda1 substituted
    tmp.X_[0] = zeroth_solution<S>(spec_, z);
    const Signal<S> gz = tmp.hom_coeff(1, ell1, S(0));
    r.resolved = negate(gz);
    return r;
  }

  S sqrt_checked(const S& disc) const;
};

template <>
inline double Expansion<double>::sqrt_checked(const double& disc) const {
  if (disc < 0.0) throw ComplexRootInRealMode(disc);
  return std::sqrt(disc);
}

template <>
inline std::complex<double> Expansion<std::complex<double>>::sqrt_checked(
    const std::complex<double>& disc) const {
  return std::sqrt(disc);
}

template <class S>
HamSolution<S> run_expansion(const ProblemSpec& spec, const UnknownVector& u) {
  Expansion<S> e(spec, u);
  return e.run();
}

}  // namespace tt
