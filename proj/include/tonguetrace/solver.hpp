#pragma once

// Nonlinear solve of the (N+2)-equation system -- the lambda(1) constraint
// plus the N+1 Galerkin projections -- by damped Newton with forward-difference
// Jacobians, and natural-parameter continuation in epsilon.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tonguetrace/problem.hpp"

namespace tt {

struct AlgebraicSystem {
  ProblemSpec spec;  // epsilon fixed for one solve; delta comes from the unknowns
  std::function<std::vector<double>(const UnknownVector&)> residual_map;
  double delta_lo = -1e30, delta_hi = 1e30;
};

// Builds the full pipeline residual map for one fixed-epsilon solve.
AlgebraicSystem make_system(const ProblemSpec& spec);

struct CurvePoint {
  double epsilon = 0.0;
  double delta = 0.0;
  std::vector<double> h;
  std::optional<double> zeta0;
  int newton_iters = 0;
  double residual_norm = 0.0;
  double floquet_check = 0.0;
};

struct TransitionCurve {
  std::string branch_id;
  std::vector<CurvePoint> points;
};

struct NewtonOptions {
  double tol = 1e-9;
  int max_iters = 50;
};

CurvePoint newton_solve(const AlgebraicSystem& sys, const UnknownVector& u0,
                        double tol = 1e-9, int max_iters = 50);

struct BranchDef {
  std::string id;
  Variant variant = Variant::Classical;
  int lambda1 = 2;
  Branch branch = Branch::CosStart;
  Zeta0Root zeta0_root = Zeta0Root::Minus;
  double emanation = 0.25;  // delta at eps -> 0
  bool straight = false;    // impulsive straight-line branch (delta frozen shape)
};

const std::vector<BranchDef>& branch_catalog();
const BranchDef& branch_by_id(const std::string& id);

// ProblemSpec template for a branch (epsilon/delta filled in later).
ProblemSpec branch_spec(const BranchDef& b, int order, double damping = 0.0);

UnknownVector seed_guess(const ProblemSpec& spec, const BranchDef& b);

TransitionCurve trace_curve(const BranchDef& b, int order, double damping,
                            double eps0, double eps1, double step,
                            const NewtonOptions& opt = {});

// Single fixed-epsilon solve on a branch from the small-eps seed.
CurvePoint solve_point(const BranchDef& b, int order, double damping, double eps,
                       const NewtonOptions& opt = {});

}  // namespace tt
