#pragma once

#include "octupolar/polynomial.hpp"
#include "octupolar/potential.hpp"

#include <array>
#include <string>
#include <vector>

namespace octo {

// One antipodal class (lambda, x) ~ (-lambda, -x); the stored representative
// has x3 > 0, ties broken by x1 > 0 and then x2 > 0.
struct Eigenpair {
  double lambda = 0;
  Eigen::Vector3d x = Eigen::Vector3d::UnitZ();
  std::string branch;  // pole, background, walcher, rho0, k0_equator, k0_line, common_root
  int multiplicity_hint = 1;
};

struct WalcherPoly {
  std::array<double, 7> s_coeffs{};    // S_0 ... S_6
  std::array<double, 2> spurious{};    // s_+, s_- (roots of the t-denominator)
};

// Coefficients of the sextic W(s) whose real roots give the critical points
// off the x2 = 0 circle, in the closed form of the reference derivation.
WalcherPoly walcher_coefficients(const OrientedParams& p);

// The same sextic built as the resultant in t of the two reduced equilibrium
// equations, D(s) t = N(s) and P2 t^2 + P1 t + P0 = 0. Equals W/2.
Poly walcher_resultant(const OrientedParams& p);

struct OrientedSolution {
  OrientedParams params;
  std::vector<Eigenpair> pairs;
  bool continuum = false;  // a whole circle of critical points; pairs lists the isolated ones
  int critical_point_total() const { return 2 * static_cast<int>(pairs.size()); }
};

// All real eigenpairs of the oriented potential for 0 <= rho <= 2 (any chi, K).
OrientedSolution solve_oriented(const OrientedParams& p);

// Upper bound ((r-1)^n - 1)/(r-2) on the number of eigenvalue classes.
long long count_bound(int r, int n);

// Representative of the class {(lambda, x), (-lambda, -x)}.
void canonicalize(Eigen::Vector3d& x, double& lambda);

}  // namespace octo
