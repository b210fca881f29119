#pragma once

// Exact arithmetic and calculus on finite sums of  c * t^k * {1,cos,sin}(m*u*t) * H(t-a)
// plus Dirac impulses c * delta(t-a).  This family is closed under addition,
// multiplication, differentiation and the forced-SHO solve used by the
// deformation recursion, so every coefficient in the pipeline is exact up to
// binary64 rounding.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <tuple>
#include <vector>

#include "tonguetrace/errors.hpp"

namespace tt {

inline double absval(double x) { return std::abs(x); }
inline double absval(const std::complex<double>& x) { return std::abs(x); }

enum class TermKind : int { Constant = 0, Cosine = 1, Sine = 2 };

template <class S>
struct Term {
  S coeff{};
  int power = 0;             // exponent of t
  TermKind kind = TermKind::Constant;
  int harmonic = 0;          // frequency = harmonic * freq_unit
  std::optional<double> step_at{};  // Heaviside gate H(t - a), H(0)=1

  auto key() const {
    return std::make_tuple(step_at.has_value(), step_at.value_or(0.0), power,
                           static_cast<int>(kind), harmonic);
  }
};

template <class S>
struct DiracTerm {
  S coeff{};
  double location = 0.0;
};

template <class S>
class Signal {
 public:
  std::vector<Term<S>> terms;
  std::vector<DiracTerm<S>> impulses;
  double freq_unit = 1.0;

  Signal() = default;

  static Signal zero(double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    return s;
  }
  static Signal constant(S c, double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    s.terms.push_back({c, 0, TermKind::Constant, 0, {}});
    s.canonicalize();
    return s;
  }
  static Signal monomial(S c, int power, double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    s.terms.push_back({c, power, TermKind::Constant, 0, {}});
    s.canonicalize();
    return s;
  }
  static Signal cosine(int m, S c = S(1), double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    s.terms.push_back({c, 0, TermKind::Cosine, m, {}});
    s.canonicalize();
    return s;
  }
  static Signal sine(int m, S c = S(1), double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    s.terms.push_back({c, 0, TermKind::Sine, m, {}});
    s.canonicalize();
    return s;
  }
  static Signal term(S c, int power, TermKind kind, int harmonic,
                     std::optional<double> step = {}, double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    s.terms.push_back({c, power, kind, harmonic, step});
    s.canonicalize();
    return s;
  }
  static Signal step(double a, S c = S(1), double unit = 1.0) {
    return term(c, 0, TermKind::Constant, 0, a, unit);
  }
  static Signal dirac(S c, double a, double unit = 1.0) {
    Signal s;
    s.freq_unit = unit;
    s.impulses.push_back({c, a});
    return s;
  }

  bool empty() const { return terms.empty() && impulses.empty(); }
  bool has_impulses() const { return !impulses.empty(); }

  Signal without_impulses() const {
    Signal s = *this;
    s.impulses.clear();
    return s;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms) m = std::max(m, absval(t.coeff));
    for (const auto& d : impulses) m = std::max(m, absval(d.coeff));
    return m;
  }

  // Relative prune tolerance: coefficients below 1e-14 of the largest are noise
  // from cancellation and are dropped to keep the term count bounded.
  static constexpr double kPruneRel = 1e-14;

  void canonicalize() {
    std::sort(terms.begin(), terms.end(),
              [](const Term<S>& a, const Term<S>& b) { return a.key() < b.key(); });
    std::vector<Term<S>> merged;
    for (const auto& t : terms) {
      if (!merged.empty() && merged.back().key() == t.key())
        merged.back().coeff += t.coeff;
      else
        merged.push_back(t);
    }
    std::sort(impulses.begin(), impulses.end(),
              [](const DiracTerm<S>& a, const DiracTerm<S>& b) {
                return a.location < b.location;
              });
    std::vector<DiracTerm<S>> dmerged;
    for (const auto& d : impulses) {
      if (!dmerged.empty() && dmerged.back().location == d.location)
        dmerged.back().coeff += d.coeff;
      else
        dmerged.push_back(d);
    }
    double mx = 0.0;
    for (const auto& t : merged) mx = std::max(mx, absval(t.coeff));
    for (const auto& d : dmerged) mx = std::max(mx, absval(d.coeff));
    const double tol = kPruneRel * mx;
    terms.clear();
    for (const auto& t : merged)
      if (absval(t.coeff) > tol) terms.push_back(t);
    impulses.clear();
    for (const auto& d : dmerged)
      if (absval(d.coeff) > tol) impulses.push_back(d);
  }

  // Coefficient of an exact basis element (zero if absent).
  S coeff_of(int power, TermKind kind, int harmonic,
             std::optional<double> step = {}) const {
    for (const auto& t : terms)
      if (t.power == power && t.kind == kind && t.harmonic == harmonic &&
          t.step_at == step)
        return t.coeff;
    return S(0);
  }
};

namespace detail {

inline bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// Harmonic conversion factor from unit `from` to finer unit `to`.
inline int unit_ratio(double from, double to) {
  const double r = from / to;
  if (!near_integer(r)) throw Error("incompatible signal frequency units");
  return static_cast<int>(std::round(r));
}

}  // namespace detail

template <class S>
Signal<S> to_freq_unit(const Signal<S>& s, double unit) {
  if (s.freq_unit == unit) return s;
  const int r = detail::unit_ratio(s.freq_unit, unit);
  Signal<S> out = s;
  out.freq_unit = unit;
  for (auto& t : out.terms) t.harmonic *= r;
  return out;
}

template <class S>
double common_unit(const Signal<S>& a, const Signal<S>& b) {
  return std::min(a.freq_unit, b.freq_unit);
}

template <class S>
Signal<S> add(const Signal<S>& a, const Signal<S>& b) {
  const double u = common_unit(a, b);
  Signal<S> x = to_freq_unit(a, u), y = to_freq_unit(b, u);
  x.terms.insert(x.terms.end(), y.terms.begin(), y.terms.end());
  x.impulses.insert(x.impulses.end(), y.impulses.begin(), y.impulses.end());
  x.canonicalize();
  return x;
}

template <class S, class C>
Signal<S> scale(const Signal<S>& a, C c) {
  Signal<S> out = a;
  for (auto& t : out.terms) t.coeff *= c;
  for (auto& d : out.impulses) d.coeff *= c;
  out.canonicalize();
  return out;
}

template <class S>
Signal<S> negate(const Signal<S>& a) {
  return scale(a, S(-1));
}

// Value of a single (possibly gated) term at time t; H(0)=1.
template <class S>
S term_value(const Term<S>& t, double time, double unit) {
  if (t.step_at && time < *t.step_at) return S(0);
  double v = 1.0;
  for (int i = 0; i < t.power; ++i) v *= time;
  const double phase = t.harmonic * unit * time;
  switch (t.kind) {
    case TermKind::Constant: break;
    case TermKind::Cosine: v *= std::cos(phase); break;
    case TermKind::Sine: v *= std::sin(phase); break;
  }
  return t.coeff * v;
}

template <class S>
S eval(const Signal<S>& s, double time) {
  if (s.has_impulses()) throw Error("eval: signal carries Dirac impulses");
  S v(0);
  for (const auto& t : s.terms) v += term_value(t, time, s.freq_unit);
  return v;
}

namespace detail {

struct TrigPart {
  double factor;
  TermKind kind;
  int harmonic;
};

// Product-to-sum expansion of trig(m1) * trig(m2); at most two parts.
inline int expand_trig_product(TermKind k1, int m1, TermKind k2, int m2,
                               TrigPart out[2]) {
  auto norm_cos = [](double f, int m, TrigPart& p) {
    p = {f, m == 0 ? TermKind::Constant : TermKind::Cosine, std::abs(m)};
  };
  auto norm_sin = [](double f, int m, TrigPart& p) {
    if (m < 0) {
      f = -f;
      m = -m;
    }
    p = {f, m == 0 ? TermKind::Constant : TermKind::Sine, m};
    return m != 0;  // sin(0) vanishes
  };
  if (k1 == TermKind::Constant) {
    out[0] = {1.0, k2, m2};
    return 1;
  }
  if (k2 == TermKind::Constant) {
    out[0] = {1.0, k1, m1};
    return 1;
  }
  int n = 0;
  if (k1 == TermKind::Cosine && k2 == TermKind::Cosine) {
    norm_cos(0.5, m1 - m2, out[n]); ++n;
    norm_cos(0.5, m1 + m2, out[n]); ++n;
  } else if (k1 == TermKind::Sine && k2 == TermKind::Sine) {
    norm_cos(0.5, m1 - m2, out[n]); ++n;
    norm_cos(-0.5, m1 + m2, out[n]); ++n;
  } else {
    // one sine, one cosine
    int ms = (k1 == TermKind::Sine) ? m1 : m2;
    int mc = (k1 == TermKind::Sine) ? m2 : m1;
    if (norm_sin(0.5, ms + mc, out[n])) ++n;
    if (norm_sin(0.5, ms - mc, out[n])) ++n;
  }
  return n;
}

}  // namespace detail

template <class S>
Signal<S> mul(const Signal<S>& a, const Signal<S>& b) {
  if (a.has_impulses() && b.has_impulses()) throw DiracProduct();
  const double u = common_unit(a, b);
  Signal<S> x = to_freq_unit(a, u), y = to_freq_unit(b, u);
  Signal<S> out;
  out.freq_unit = u;
  for (const auto& ta : x.terms) {
    for (const auto& tb : y.terms) {
      std::optional<double> gate = ta.step_at;
      if (tb.step_at && (!gate || *tb.step_at > *gate)) gate = tb.step_at;
      detail::TrigPart parts[2];
      const int n = detail::expand_trig_product(ta.kind, ta.harmonic, tb.kind,
                                                tb.harmonic, parts);
      for (int i = 0; i < n; ++i)
        out.terms.push_back({ta.coeff * tb.coeff * parts[i].factor,
                             ta.power + tb.power, parts[i].kind,
                             parts[i].harmonic, gate});
    }
  }
  // delta(t-a) * g(t) -> g(a) * delta(t-a)
  auto sample = [&](const std::vector<DiracTerm<S>>& ds,
                    const std::vector<Term<S>>& ts) {
    for (const auto& d : ds) {
      S v(0);
      for (const auto& t : ts) v += term_value(t, d.location, u);
      out.impulses.push_back({d.coeff * v, d.location});
    }
  };
  sample(x.impulses, y.terms);
  sample(y.impulses, x.terms);
  out.canonicalize();
  return out;
}

template <class S>
Signal<S> differentiate(const Signal<S>& s) {
  if (s.has_impulses()) throw Error("differentiate: signal carries Dirac impulses");
  Signal<S> out;
  out.freq_unit = s.freq_unit;
  for (const auto& t : s.terms) {
    if (t.power > 0)
      out.terms.push_back({t.coeff * double(t.power), t.power - 1, t.kind,
                           t.harmonic, t.step_at});
    const double w = t.harmonic * s.freq_unit;
    if (t.kind == TermKind::Cosine)
      out.terms.push_back({t.coeff * (-w), t.power, TermKind::Sine, t.harmonic, t.step_at});
    else if (t.kind == TermKind::Sine)
      out.terms.push_back({t.coeff * w, t.power, TermKind::Cosine, t.harmonic, t.step_at});
    if (t.step_at) {
      // H'(t-a) = delta(t-a), weighted by the gated factor at a
      Term<S> ungated = t;
      ungated.step_at.reset();
      out.impulses.push_back({term_value(ungated, *t.step_at, s.freq_unit), *t.step_at});
    }
  }
  out.canonicalize();
  return out;
}

// Antiderivative of a gate-free, impulse-free signal, via the
// t^k cos / t^k sin reduction recurrences.  Integration constant is zero.
template <class S>
Signal<S> antiderivative(const Signal<S>& s) {
  if (s.has_impulses()) throw Error("antiderivative: signal carries Dirac impulses");
  Signal<S> out;
  out.freq_unit = s.freq_unit;
  for (const auto& t : s.terms) {
    if (t.step_at) throw Error("antiderivative: gated term");
    if (t.kind == TermKind::Constant || t.harmonic == 0) {
      out.terms.push_back({t.coeff / double(t.power + 1), t.power + 1,
                           TermKind::Constant, 0, {}});
      continue;
    }
    const double w = t.harmonic * s.freq_unit;
    S c = t.coeff;
    int k = t.power;
    TermKind kind = t.kind;
    while (true) {
      if (kind == TermKind::Cosine) {
        out.terms.push_back({c / w, k, TermKind::Sine, t.harmonic, {}});
        if (k == 0) break;
        c *= -double(k) / w;
        kind = TermKind::Sine;
        --k;
      } else {
        out.terms.push_back({-c / w, k, TermKind::Cosine, t.harmonic, {}});
        if (k == 0) break;
        c *= double(k) / w;
        kind = TermKind::Cosine;
        --k;
      }
    }
  }
  out.canonicalize();
  return out;
}

template <class S>
S definite_integral(const Signal<S>& s, double t0, double t1) {
  if (!(t0 < t1)) throw Error("definite_integral: empty or reversed range");
  S total(0);
  for (const auto& t : s.terms) {
    double lo = t0;
    if (t.step_at) lo = std::max(lo, *t.step_at);
    if (lo >= t1) continue;
    Signal<S> one;
    one.freq_unit = s.freq_unit;
    Term<S> ungated = t;
    ungated.step_at.reset();
    one.terms.push_back(ungated);
    const Signal<S> F = antiderivative(one);
    total += eval(F, t1) - eval(F, lo);
  }
  for (const auto& d : s.impulses) {
    if (std::abs(d.location - t0) < 1e-12 || std::abs(d.location - t1) < 1e-12)
      throw ImpulseOnBoundary(d.location);
    if (d.location > t0 && d.location < t1) total += d.coeff;
  }
  return total;
}

// Unique solution of  x'' + omega^2 x = forcing,  x(0)=x0, x'(0)=v0,
// by homogeneous part plus closed-form Duhamel convolution.  Operates in the
// scaled-time domain (freq_unit must be 1, omega a positive integer).
template <class S>
Signal<S> solve_sho(const Signal<S>& forcing, S x0, S v0, int omega = 1) {
  if (forcing.freq_unit != 1.0) throw Error("solve_sho: expects unit base frequency");
  const double w = omega;
  Signal<S> x;
  x.freq_unit = 1.0;
  if (absval(x0) != 0.0) x.terms.push_back({x0, 0, TermKind::Cosine, omega, {}});
  if (absval(v0) != 0.0) x.terms.push_back({v0 / w, 0, TermKind::Sine, omega, {}});

  // Impulse response: (c/w) H(t-a) sin(w (t-a)), expanded
  for (const auto& d : forcing.impulses) {
    const double a = d.location;
    x.terms.push_back({d.coeff * (std::cos(w * a) / w), 0, TermKind::Sine, omega, a});
    x.terms.push_back({d.coeff * (-std::sin(w * a) / w), 0, TermKind::Cosine, omega, a});
  }

  const Signal<S> cosw = Signal<S>::cosine(omega);
  const Signal<S> sinw = Signal<S>::sine(omega);
  Signal<S> acc = x;
  for (const auto& t : forcing.terms) {
    Signal<S> g;
    g.freq_unit = 1.0;
    Term<S> ungated = t;
    ungated.step_at.reset();
    g.terms.push_back(ungated);
    const Signal<S> A = antiderivative(mul(g, cosw));
    const Signal<S> B = antiderivative(mul(g, sinw));
    const double a = t.step_at.value_or(0.0);
    const Signal<S> As = add(A, Signal<S>::constant(-eval(A, a)));
    const Signal<S> Bs = add(B, Signal<S>::constant(-eval(B, a)));
    Signal<S> resp = add(mul(sinw, As), negate(mul(cosw, Bs)));
    resp = scale(resp, S(1.0 / w));
    if (t.step_at) resp = mul(resp, Signal<S>::step(*t.step_at));
    acc = add(acc, resp);
  }
  acc.canonicalize();
  return acc;
}

// Re-express a scaled-time signal x(tau) as a function of t = lambda1 * tau.
// Frequencies divide by lambda1 (tracked through freq_unit), powers pick up
// 1/lambda1^k, gates and impulses move to lambda1 * a.
template <class S>
Signal<S> rescale_time(const Signal<S>& s, int lambda1) {
  Signal<S> out;
  out.freq_unit = s.freq_unit / lambda1;
  const double L = lambda1;
  for (const auto& t : s.terms) {
    Term<S> nt = t;
    nt.coeff = t.coeff / std::pow(L, t.power);
    if (t.step_at) nt.step_at = *t.step_at * L;
    out.terms.push_back(nt);
  }
  for (const auto& d : s.impulses) out.impulses.push_back({d.coeff * S(L), d.location * L});
  out.canonicalize();
  return out;
}

template <class S>
Signal<S> operator+(const Signal<S>& a, const Signal<S>& b) {
  return add(a, b);
}
template <class S>
Signal<S> operator-(const Signal<S>& a, const Signal<S>& b) {
  return add(a, negate(b));
}
template <class S>
Signal<S> operator*(const Signal<S>& a, const Signal<S>& b) {
  return mul(a, b);
}
template <class S>
Signal<S> operator*(S c, const Signal<S>& a) {
  return scale(a, c);
}

}  // namespace tt
