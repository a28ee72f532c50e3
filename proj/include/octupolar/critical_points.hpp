#pragma once

#include "octupolar/eigen_solver.hpp"

#include <string>
#include <vector>

namespace octo {

enum class PointKind { maximum, minimum, saddle, degenerate_saddle, monkey_saddle };

std::string to_string(PointKind k);

struct CriticalPoint {
  Eigen::Vector3d x;
  double lambda = 0;
  PointKind kind = PointKind::saddle;
  int index = -1;
  Eigen::Vector2d hessian_eigs = Eigen::Vector2d::Zero();  // tangential, ascending
};

// Index of the surface gradient field around x, from the winding of its
// tangential components along a small circle.
int winding_index(const Tensor3d& a, const Eigen::Vector3d& x, double radius = 1e-3, int samples = 720);

// Tangential Hessian P (6 (A x) - 3 lambda I) P; degenerate points
// (|h| <= 1e-7 relative, or a multiple root upstream) get their index from
// winding_index at the given radius, which must stay below the distance to
// any other critical point. Throws std::invalid_argument if x is not critical.
CriticalPoint classify(const Tensor3d& a, const Eigenpair& pair, double radius = 1e-3);
CriticalPoint classify(const OctupolarTensord& a, const Eigenpair& pair, double radius = 1e-3);

struct TopologyReport {
  OrientedParams params;
  std::vector<CriticalPoint> points;  // every class and its antipode
  int index_sum = 0;
  bool continuum = false;
  int maxima = 0, minima = 0, saddles = 0, degenerate = 0;
  int total() const { return static_cast<int>(points.size()); }
  int count_index(int iota) const;
};

TopologyReport full_topology(const OrientedParams& p);

struct OracleResult {
  std::vector<CriticalPoint> points;
  bool continuum = false;  // more than 14 distinct points: a ring was hit
};

// Independent check: Newton from `samples` Fibonacci seeds, plus gradient
// ascent/descent from a subsample, deduplicated at 1e-6.
OracleResult oracle_critical_points(const OctupolarTensord& t, int samples);

}  // namespace octo
