#pragma once

// Independent ground truth: monodromy matrices of the periodic oscillators by
// fixed-step RK4 (with the exact impulse jump for the impulsive variant),
// stability classification, grid charts, and a closed-form trace oracle for
// the impulsive case.

#include <cstdint>
#include <string>
#include <vector>

#include "tonguetrace/problem.hpp"

namespace tt {

struct MonodromyMatrix {
  // columns are the period-2pi solutions from ICs (1,0) and (0,1)
  double m[2][2] = {{0, 0}, {0, 0}};

  double trace() const { return m[0][0] + m[1][1]; }
  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  // largest Floquet-multiplier magnitude
  double max_multiplier() const;
};

struct FloquetOptions {
  int steps_per_period = 2000;
  bool flip_impulse_jump = false;  // debug negative control
};

// One excitation period (2*pi) of x'' + (delta + excitation(t)) x + c x' = 0.
MonodromyMatrix monodromy(Variant variant, double delta, double eps, double c,
                          const FloquetOptions& opt = {});

enum class Stability : std::uint8_t { Stable = 0, Unstable = 1 };

Stability classify(const MonodromyMatrix& m, Variant variant);

// ||trace|-2| (undamped) resp. |max|multiplier|-1| (damped): zero exactly on a
// transition curve.
double floquet_check(Variant variant, double delta, double eps, double c,
                     const FloquetOptions& opt = {});

struct ChartSpec {
  Variant variant = Variant::Classical;
  double delta_min = -0.5, delta_max = 2.1;
  double eps_min = 0.0, eps_max = 4.5;
  int nx = 78, ny = 135;  // delta x eps resolution
  double damping = 0.0;
};

struct StabilityChart {
  ChartSpec spec;
  std::vector<std::uint8_t> cells;  // row-major, delta fastest; 0=stable 1=unstable

  double delta_at(int i) const;
  double eps_at(int j) const;
};

// Data-parallel over rows; output independent of the worker count.
StabilityChart grid_scan(const ChartSpec& spec, int workers = 0);

// Worker-count default: TONGUETRACE_WORKERS env var, else logical cores.
int default_workers();

// Closed-form trace(M) for the impulsive variant (hyperbolic for Delta<0).
double impulsive_trace(double Delta, double eps);

// Sampled RK trajectory x(t_k) on [0, T] from the given ICs, t_k uniform with
// nsamples points; impulsive jumps at odd multiples of pi are applied exactly.
std::vector<double> integrate_samples(Variant variant, double delta, double eps,
                                      double c, double T, int nsamples,
                                      double x0, double v0,
                                      const FloquetOptions& opt = {});

}  // namespace tt
