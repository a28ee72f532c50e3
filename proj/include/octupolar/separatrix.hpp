#pragma once

#include "octupolar/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace octo {

struct BoundaryEval {
  double g = 0;      // separatrix in the plane chi = -pi/2
  double f = 0;      // separatrix in the plane chi = -pi/6
  double kappa = 0;  // K at which the x2 = 0 background pair exists
  std::optional<double> h;  // cusp height, only for rho > 1
};

BoundaryEval boundary_functions(double rho, double chi);

// rho at which the groin crosses the plane chi: -1/sin(chi).
double cusp_rho(double chi);

// Two-term expansion of K* near the cusp.
double k_star_near_cusp(double rho, double chi);

struct KStar {
  double bigk = 0;
  double s_star = 0;
  std::string branch;  // left (s* < 0), cusp, right (s* > 0)
};

// Critical K where two real roots of W coalesce: W = K^2 U + V, W' = K^2 U' + V'
// are compatible iff U V' - U' V = 0 (degree 10 in s). Throws
// std::runtime_error if no real root gives K^2 > 0.
KStar k_star(double rho, double chi);

struct RegionSample {
  double rho = 0, chi = 0, bigk = 0;
  int count = 0;
  bool continuum = false;
};

// Midpoint grid rho in (0, 2), K in (0, k_max); counts critical points.
std::vector<RegionSample> region_scan(double chi, int rho_steps, double k_max, int k_steps);

}  // namespace octo
