#include "tonguetrace/floquet.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <thread>

namespace tt {

double MonodromyMatrix::max_multiplier() const {
  const double tr = trace(), d = det();
  const double disc = tr * tr - 4.0 * d;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return std::max(std::abs((tr + s) / 2.0), std::abs((tr - s) / 2.0));
  }
  return std::sqrt(std::abs(d));  // complex pair, |mu| = sqrt(det)
}

namespace {

struct State {
  double x, v;
};

// RK4 on x' = v, v' = -(delta + eps*f(t)) x - c v over [t0, t1].
template <class Coef>
State rk4(State s, double t0, double t1, int steps, Coef q, double c) {
  const double h = (t1 - t0) / steps;
  auto deriv = [&](double t, State y) {
    return State{y.v, -q(t) * y.x - c * y.v};
  };
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const State k1 = deriv(t, s);
    const State k2 = deriv(t + h / 2, {s.x + h / 2 * k1.x, s.v + h / 2 * k1.v});
    const State k3 = deriv(t + h / 2, {s.x + h / 2 * k2.x, s.v + h / 2 * k2.v});
    const State k4 = deriv(t + h, {s.x + h * k3.x, s.v + h * k3.v});
    s.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    s.v += h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
  }
  return s;
}

State propagate(Variant variant, double delta, double eps, double c,
                const FloquetOptions& opt, State s) {
  const double T = 2 * M_PI;
  if (variant == Variant::Impulsive) {
    auto q = [&](double) { return delta; };
    s = rk4(s, 0.0, M_PI, opt.steps_per_period / 2, q, 0.0);
    const double sgn = opt.flip_impulse_jump ? 1.0 : -1.0;
    s.v += sgn * eps * s.x;
    s = rk4(s, M_PI, T, opt.steps_per_period / 2, q, 0.0);
    return s;
  }
  auto q = [&](double t) { return delta + eps * std::cos(t); };
  return rk4(s, 0.0, T, opt.steps_per_period,
             q, variant == Variant::Damped ? c : 0.0);
}

}  // namespace

MonodromyMatrix monodromy(Variant variant, double delta, double eps, double c,
                          const FloquetOptions& opt) {
  MonodromyMatrix M;
  const State c1 = propagate(variant, delta, eps, c, opt, {1.0, 0.0});
  const State c2 = propagate(variant, delta, eps, c, opt, {0.0, 1.0});
  M.m[0][0] = c1.x;
  M.m[1][0] = c1.v;
  M.m[0][1] = c2.x;
  M.m[1][1] = c2.v;
  return M;
}

Stability classify(const MonodromyMatrix& m, Variant variant) {
  if (variant == Variant::Damped)
    return m.max_multiplier() > 1.0 + 1e-9 ? Stability::Unstable : Stability::Stable;
  return std::abs(m.trace()) > 2.0 + 1e-9 ? Stability::Unstable : Stability::Stable;
}

double floquet_check(Variant variant, double delta, double eps, double c,
                     const FloquetOptions& opt) {
  const MonodromyMatrix M = monodromy(variant, delta, eps, c, opt);
  if (variant == Variant::Damped) return std::abs(M.max_multiplier() - 1.0);
  return std::abs(std::abs(M.trace()) - 2.0);
}

double StabilityChart::delta_at(int i) const {
  if (spec.nx == 1) return spec.delta_min;
  return spec.delta_min + (spec.delta_max - spec.delta_min) * i / (spec.nx - 1);
}

double StabilityChart::eps_at(int j) const {
  if (spec.ny == 1) return spec.eps_min;
  return spec.eps_min + (spec.eps_max - spec.eps_min) * j / (spec.ny - 1);
}

int default_workers() {
  if (const char* env = std::getenv("TONGUETRACE_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

StabilityChart grid_scan(const ChartSpec& spec, int workers) {
  StabilityChart chart;
  chart.spec = spec;
  chart.cells.assign(static_cast<size_t>(spec.nx) * spec.ny, 0);
  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, spec.ny);

  auto scan_rows = [&](int j0, int stride) {
    for (int j = j0; j < spec.ny; j += stride) {
      const double eps = chart.eps_at(j);
      for (int i = 0; i < spec.nx; ++i) {
        const MonodromyMatrix M =
            monodromy(spec.variant, chart.delta_at(i), eps, spec.damping);
        chart.cells[static_cast<size_t>(j) * spec.nx + i] =
            static_cast<std::uint8_t>(classify(M, spec.variant));
      }
    }
  };

  if (workers <= 1) {
    scan_rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan_rows, w, workers);
    for (auto& t : pool) t.join();
  }
  return chart;
}

std::vector<double> integrate_samples(Variant variant, double delta, double eps,
                                      double c, double T, int nsamples,
                                      double x0, double v0,
                                      const FloquetOptions& opt) {
  if (nsamples < 2) throw Error("integrate_samples: need at least two samples");
  std::vector<double> out;
  out.reserve(nsamples);
  State s{x0, v0};
  out.push_back(s.x);
  const double cc = variant == Variant::Damped ? c : 0.0;
  auto q = [&](double t) {
    return variant == Variant::Impulsive ? delta : delta + eps * std::cos(t);
  };
  const double dt = T / (nsamples - 1);
  const int sub = std::max(1, opt.steps_per_period / std::max(1, nsamples - 1));
  double t = 0.0;
  for (int k = 1; k < nsamples; ++k) {
    const double t1 = k * dt;
    if (variant == Variant::Impulsive) {
      // split the sub-interval at any impulse instant (odd multiples of pi)
      double lo = t;
      while (true) {
        double next_imp = (std::floor((lo / M_PI - 1.0) / 2.0) + 1.0) * 2.0 * M_PI + M_PI;
        if (next_imp <= lo + 1e-12) next_imp += 2.0 * M_PI;
        if (next_imp < t1 - 1e-12) {
          s = rk4(s, lo, next_imp, sub, q, cc);
          s.v -= (opt.flip_impulse_jump ? -eps : eps) * s.x;
          lo = next_imp;
        } else {
          if (t1 > lo + 1e-15) s = rk4(s, lo, t1, sub, q, cc);
          // sample landing exactly on an impulse: x is continuous there, but
          // the jump must be applied before integrating past it
          if (std::abs(t1 - next_imp) <= 1e-12)
            s.v -= (opt.flip_impulse_jump ? -eps : eps) * s.x;
          break;
        }
      }
    } else {
      s = rk4(s, t, t1, sub, q, cc);
    }
    out.push_back(s.x);
    t = t1;
  }
  return out;
}

double impulsive_trace(double Delta, double eps) {
  const double T = 2 * M_PI;
  if (std::abs(Delta) < 1e-24) return 2.0 - eps * T;  // polynomial limit
  if (Delta > 0) {
    const double w = std::sqrt(Delta);
    return 2.0 * std::cos(T * w) - (eps / w) * std::sin(T * w);
  }
  const double w = std::sqrt(-Delta);
  return 2.0 * std::cosh(T * w) - (eps / w) * std::sinh(T * w);
}

}  // namespace tt
