#pragma once

#include <stdexcept>
#include <string>

namespace tt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// signal-algebra
struct DiracProduct : Error {
  DiracProduct() : Error("product of two impulse-carrying signals is undefined") {}
};
struct ImpulseOnBoundary : Error {
  explicit ImpulseOnBoundary(double a)
      : Error("impulse located exactly on an integration boundary (a=" + std::to_string(a) + ")") {}
};

// series-jets
struct SlotAlreadyFixed : Error {
  explicit SlotAlreadyFixed(int n)
      : Error("jet coefficient at order " + std::to_string(n) + " is already fixed") {}
};

// ham-engine
struct SingularSecularSystem : Error {
  using Error::Error;
};
struct ComplexRootInRealMode : Error {
  explicit ComplexRootInRealMode(double disc)
      : Error("zeta0 discriminant is negative (" + std::to_string(disc) +
              ") and field_mode is real") {}
};

// algebraic-solver
struct NoConvergence : Error {
  NoConvergence() : Error("Newton iteration did not converge") {}
};
struct OutsideWindow : Error {
  OutsideWindow() : Error("converged delta lies outside the search window") {}
};
struct SingularJacobian : Error {
  SingularJacobian() : Error("Jacobian is singular") {}
};
struct BranchLost : Error {
  double last_good_eps;
  explicit BranchLost(double eps)
      : Error("continuation lost the branch (last good epsilon = " +
              std::to_string(eps) + ")"),
        last_good_eps(eps) {}
};

// cli-frontend
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace tt
