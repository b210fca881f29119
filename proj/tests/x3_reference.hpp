#pragma once

// Reference N=3 solution for the impulsive 2*pi-periodic case, transcribed as
// a plain closed-form function of (t, Delta, eps, h1, h2, h3).

#include <cmath>

inline double x3_reference(double t, double D, double e, double h1, double h2,
                           double h3) {
  const double pi = M_PI;
  const double H1 = t >= pi ? 1.0 : 0.0;
  double x = std::cos(t);
  x += -e * e * h1 / 2.0 *
       (3 * h1 + h2 + (2 * pi * D + e) * h1 * h1 / pi) * std::cos(t) * H1;
  x += e *
       (3 * h1 + h2 + h3 / 6.0 + (6 * pi * D + 3 * e) * h1 * h1 / (2 * pi) +
        (2 * pi * D + e) * h1 * h2 / (2 * pi) +
        ((1 - pi * pi) * e * e + 4 * pi * D * (pi * D + e)) * h1 * h1 * h1 /
            (4 * pi * pi)) *
       std::sin(t) * H1;
  x += -e / (2 * pi) *
       (3 * h1 + h2 + h3 / 6.0 + 3 * (2 * pi * D + e) * h1 * h1 / (2 * pi) +
        (2 * pi * D + e) * h1 * h2 / (2 * pi) +
        (12 * pi * D * (pi * D + e) + (3 - pi * pi) * e * e) * h1 * h1 * h1 /
            (12 * pi * pi)) *
       t * std::sin(t);
  x += e * e *
       ((2 * pi * D + e) * h1 * h1 * h1 / (2 * pi * pi) +
        3 * h1 * h1 / (2 * pi) + h1 * h2 / (2 * pi)) *
       t * std::cos(t) * H1;
  x += e * e * e * h1 * h1 * h1 / (4 * pi) * t * std::sin(t) * H1;
  x += -e * e * h1 / (8 * pi * pi) *
       (3 * h1 + h2 + (2 * pi * D + e) * h1 * h1 / pi) * t * t * std::cos(t);
  x += -e * e * e * h1 * h1 * h1 / (8 * pi * pi) * t * t * std::sin(t) * H1;
  x += e * e * e * h1 * h1 * h1 / (48 * pi * pi * pi) * t * t * t * std::sin(t);
  return x;
}
