#pragma once

#include <string>
#include <vector>

#include "tonguetrace/errors.hpp"

namespace tt {

enum class Variant { Classical, Damped, Impulsive };
enum class Branch { CosStart, SinStart, ZetaStart };
enum class Zeta0Root { Minus, Plus };
enum class FieldMode { Real, Complex };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::Classical: return "classical";
    case Variant::Damped: return "damped";
    case Variant::Impulsive: return "impulsive";
  }
  return "?";
}

inline Variant variant_from_string(const std::string& s) {
  if (s == "classical") return Variant::Classical;
  if (s == "damped") return Variant::Damped;
  if (s == "impulsive") return Variant::Impulsive;
  throw ConfigError("unknown variant: " + s);
}

struct ProblemSpec {
  Variant variant = Variant::Classical;
  double epsilon = 0.0;
  double delta = 0.0;   // delta for classical/damped, Delta for impulsive
  double damping = 0.0; // c, damped only
  int lambda1 = 2;      // period target: solution period 2*pi*lambda1 in t
  int lambda0 = 1;      // zeroth-order frequency (>1 is experimental)
  Branch branch = Branch::CosStart;
  int order = 3;        // N
  Zeta0Root zeta0_root = Zeta0Root::Minus;
  FieldMode field_mode = FieldMode::Real;

  void validate() const {
    if (order < 1) throw ConfigError("order N must be >= 1");
    if (lambda1 != 1 && lambda1 != 2) throw ConfigError("lambda1 must be 1 or 2");
    if (lambda0 < 1) throw ConfigError("lambda0 must be >= 1");
    if (variant == Variant::Damped) {
      if (branch != Branch::ZetaStart)
        throw ConfigError("damped variant requires the (1,zeta) branch");
      if (damping < 0) throw ConfigError("damping must be >= 0");
    } else if (branch == Branch::ZetaStart) {
      throw ConfigError("(1,zeta) branch is damped-only");
    }
  }
};

// Free unknowns of one fixed-epsilon solve: delta plus h^[1] .. h^[N+1]
// (derivative-value convention).
struct UnknownVector {
  double delta = 0.0;
  std::vector<double> h;

  int dim() const { return 1 + static_cast<int>(h.size()); }
  double operator[](int i) const { return i == 0 ? delta : h[i - 1]; }
  void set(int i, double v) {
    if (i == 0)
      delta = v;
    else
      h[i - 1] = v;
  }
};

}  // namespace tt
