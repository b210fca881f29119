#pragma once

// Truncated Taylor series in the embedding parameter p.  Coefficients are
// stored in Taylor convention (a_n = f^(n)(0)/n!), so products are plain
// Cauchy convolutions; the derivative-value convention used in the deformation
// formulas is exposed through derivative_value().

#include <complex>
#include <utility>
#include <vector>

#include "tonguetrace/errors.hpp"
#include "tonguetrace/signal.hpp"

namespace tt {

namespace detail {

inline double mulc(double a, double b) { return a * b; }
inline std::complex<double> mulc(const std::complex<double>& a,
                                 const std::complex<double>& b) {
  return a * b;
}
template <class S>
Signal<S> mulc(S a, const Signal<S>& b) {
  return scale(b, a);
}
template <class S>
Signal<S> mulc(const Signal<S>& a, S b) {
  return scale(a, b);
}
template <class S>
Signal<S> mulc(const Signal<S>& a, const Signal<S>& b) {
  return mul(a, b);
}

inline void scalec(double& a, double c) { a *= c; }
inline void scalec(std::complex<double>& a, double c) { a *= c; }
template <class S>
void scalec(Signal<S>& a, double c) {
  a = scale(a, c);
}

inline void addto(double& a, double b) { a += b; }
inline void addto(std::complex<double>& a, const std::complex<double>& b) { a += b; }
template <class S>
void addto(Signal<S>& a, const Signal<S>& b) {
  a = add(a, b);
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

template <class C>
struct Jet {
  std::vector<C> a;  // Taylor coefficients a_0 .. a_M

  Jet() = default;
  explicit Jet(int order) : a(order + 1) {}

  int order() const { return static_cast<int>(a.size()) - 1; }

  // Derivative convention: f^[n] = n! * a_n
  C derivative_value(int n) const {
    C v = a[n];
    detail::scalec(v, detail::factorial(n));
    return v;
  }
  void set_derivative_value(int n, C v) {
    detail::scalec(v, 1.0 / detail::factorial(n));
    a[n] = std::move(v);
  }

  Jet truncated(int order) const {
    Jet out(order);
    for (int i = 0; i <= order && i <= this->order(); ++i) out.a[i] = a[i];
    return out;
  }
};

template <class A, class B>
auto jet_mul(const Jet<A>& x, const Jet<B>& y)
    -> Jet<decltype(detail::mulc(x.a[0], y.a[0]))> {
  const int M = std::min(x.order(), y.order());
  Jet<decltype(detail::mulc(x.a[0], y.a[0]))> out(M);
  for (int n = 0; n <= M; ++n)
    for (int k = 0; k <= n; ++k)
      detail::addto(out.a[n], detail::mulc(x.a[k], y.a[n - k]));
  return out;
}

template <class C>
Jet<C> jet_add(const Jet<C>& x, const Jet<C>& y) {
  const int M = std::min(x.order(), y.order());
  Jet<C> out(M);
  for (int n = 0; n <= M; ++n) {
    out.a[n] = x.a[n];
    detail::addto(out.a[n], y.a[n]);
  }
  return out;
}

template <class C>
Jet<C> jet_scale(const Jet<C>& x, double c) {
  Jet<C> out = x;
  for (auto& v : out.a) detail::scalec(v, c);
  return out;
}

template <class C>
Jet<C> jet_sub(const Jet<C>& x, const Jet<C>& y) {
  return jet_add(x, jet_scale(y, -1.0));
}

// Isolates the linear appearance of the order-n coefficient of a scalar jet in
// its own square: [a^2]_n = known.a[n] + multiplier * a_n.  The slot must still
// be free (zero) when the split is taken.
template <class C>
std::pair<Jet<C>, C> jet_linear_slot(const Jet<C>& x, int n) {
  if (!(absval(x.a[n]) == 0.0)) throw SlotAlreadyFixed(n);
  Jet<C> known = jet_mul(x, x);
  const C multiplier = 2.0 * x.a[0];
  return {known, multiplier};
}

}  // namespace tt
