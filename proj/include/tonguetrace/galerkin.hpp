#pragma once

// Residual of the original oscillator on the assembled solution x_N(t) and
// its projection onto the variant's weight family.  Integrals are exact
// (closed form), so the only error axis left for the solver is roundoff.

#include <cmath>
#include <vector>

#include "tonguetrace/ham.hpp"
#include "tonguetrace/problem.hpp"
#include "tonguetrace/signal.hpp"

namespace tt {

struct WeightSet {
  std::vector<Signal<double>> weights;  // length N+1
  double period = 2 * M_PI;             // 2*pi*lambda1
};

// R_N(t) = x'' + (delta + excitation(t)) x  (+ c x' for damped), one period.
// Dirac terms from the impulsive excitation stay in the residual.
template <class S>
Signal<S> residual_signal(const ProblemSpec& spec, const Signal<S>& xN) {
  if (xN.has_impulses()) throw Error("residual_signal: xN must be impulse-free");
  Signal<S> exc = Signal<S>::constant(S(spec.delta), xN.freq_unit);
  const S eps(spec.epsilon);
  if (spec.variant == Variant::Impulsive) {
    exc = exc + Signal<S>::dirac(eps, M_PI, xN.freq_unit);
    if (spec.lambda1 == 2) exc = exc + Signal<S>::dirac(eps, 3 * M_PI, xN.freq_unit);
  } else {
    // cos(t): harmonic lambda1 on the 1/lambda1 frequency grid
    const int m = static_cast<int>(std::lround(1.0 / xN.freq_unit));
    exc = exc + Signal<S>::cosine(m, eps, xN.freq_unit);
  }
  Signal<S> r = differentiate(differentiate(xN)) + mul(exc, xN);
  if (spec.variant == Variant::Damped && spec.damping != 0.0)
    r = r + scale(differentiate(xN), S(spec.damping));
  return r;
}

// Weight families, one per variant/period, truncated to N+1.
inline WeightSet weight_set(const ProblemSpec& spec) {
  const int count = spec.order + 1;
  const double unit = 1.0 / spec.lambda1;
  WeightSet ws;
  ws.period = 2 * M_PI * spec.lambda1;
  auto& w = ws.weights;
  using Sig = Signal<double>;
  if (spec.variant == Variant::Classical && spec.lambda1 == 2) {
    // half-integer basis of x_N: cos((k+1/2) t) resp. sin((k+1/2) t)
    for (int k = 0; k < count; ++k)
      w.push_back(spec.branch == Branch::SinStart ? Sig::sine(2 * k + 1, 1.0, unit)
                                                  : Sig::cosine(2 * k + 1, 1.0, unit));
  } else if (spec.variant == Variant::Classical) {
    if (spec.branch == Branch::SinStart) {
      for (int k = 1; k <= count; ++k) w.push_back(Sig::sine(k, 1.0, unit));
    } else {
      w.push_back(Sig::constant(1.0, unit));
      for (int k = 1; k < count; ++k) w.push_back(Sig::cosine(k, 1.0, unit));
    }
  } else if (spec.variant == Variant::Damped) {
    // 1, cos t, sin t, cos 2t, sin 2t, ... with the m,n ranges depending on
    // the parity of N
    const int N = spec.order;
    const int mmax = (N % 2 == 1) ? (N + 1) / 2 : N / 2;
    const int nmax = (N % 2 == 1) ? (N - 1) / 2 : N / 2;
    w.push_back(Sig::constant(1.0, unit));
    for (int k = 1; static_cast<int>(w.size()) < count; ++k) {
      if (k <= mmax) w.push_back(Sig::cosine(k, 1.0, unit));
      if (static_cast<int>(w.size()) < count && k <= nmax)
        w.push_back(Sig::sine(k, 1.0, unit));
      if (k > mmax && k > nmax) break;
    }
  } else if (spec.variant == Variant::Impulsive && spec.lambda1 == 1) {
    w.push_back(Sig::monomial(1.0, 1, unit));
    w.push_back(Sig::cosine(1, 1.0, unit));
    for (int k = 1; static_cast<int>(w.size()) < count; ++k) {
      w.push_back(Sig::term(1.0, 0, TermKind::Cosine, k, M_PI, unit));
      if (static_cast<int>(w.size()) < count)
        w.push_back(Sig::term(1.0, 0, TermKind::Sine, k, M_PI, unit));
    }
  } else {  // impulsive, 4*pi
    w.push_back(Sig::monomial(1.0, 1, unit));
    w.push_back(Sig::term(1.0, 1, TermKind::Cosine, 2, {}, unit));  // t cos t
    for (int k = 1; static_cast<int>(w.size()) < count; ++k) {
      const double gates[2] = {M_PI, 3 * M_PI};
      for (double a : gates) {
        if (static_cast<int>(w.size()) < count)
          w.push_back(Sig::term(1.0, 0, TermKind::Cosine, 2 * k, a, unit));
        if (static_cast<int>(w.size()) < count)
          w.push_back(Sig::term(1.0, 0, TermKind::Sine, 2 * k, a, unit));
      }
    }
  }
  w.resize(count);
  return ws;
}

template <class S>
std::vector<S> project(const Signal<S>& residual, const WeightSet& ws) {
  std::vector<S> out;
  out.reserve(ws.weights.size());
  for (const auto& w : ws.weights) {
    Signal<S> ws_s;
    ws_s.freq_unit = w.freq_unit;
    for (const auto& t : w.terms) ws_s.terms.push_back({S(t.coeff), t.power, t.kind, t.harmonic, t.step_at});
    out.push_back(definite_integral(mul(ws_s, residual), 0.0, ws.period));
  }
  return out;
}

}  // namespace tt
