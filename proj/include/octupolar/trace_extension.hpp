#pragma once

#include "octupolar/critical_points.hpp"
#include "octupolar/tensor.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace octo {

// Trace-type potential  a1 x1 x3^2 + a2 x2 x1^2 + a3 x3 x2^2.
struct TraceParams {
  double a1 = 0, a2 = 1, a3 = 0;
  double mu() const { return a3 / a2; }  // only meaningful for a2 != 0
  static TraceParams from_mu(double mu, double a2 = 1) { return {0, a2, mu * a2}; }
};

// As a fully symmetric tensor: gamma_i = A_i / 3, everything else zero.
Tensor3d trace_tensor(const TraceParams& p);
double trace_potential(const TraceParams& p, const Eigen::Vector3d& x);

// Northern chart x3 = +sqrt(1 - x1^2 - x2^2); a1 must be zero.
double trace_chart_value(const TraceParams& p, double x1, double x2);
Eigen::Vector2d trace_chart_gradient(const TraceParams& p, double x1, double x2);
Eigen::Matrix2d trace_chart_hessian(const TraceParams& p, double x1, double x2);

struct TraceCriticalPoint {
  std::string label;  // p1..p5
  double x1 = 0, x2 = 0;
  double value = 0;
  PointKind kind = PointKind::saddle;
  int index = -1;
  int multiplicity = 1;
  bool on_continuum = false;  // member of a critical circle; index not defined
  Eigen::Vector2d hessian_eigs = Eigen::Vector2d::Zero();  // chart Hessian, ascending

  Eigen::Vector3d x() const;
};

struct TraceReport {
  TraceParams params;
  std::vector<TraceCriticalPoint> points;  // Northern chart; antipodes implied
  bool meridian_continuum = false;         // a whole great circle is critical
  bool equator_saddles = false;            // a2 = 0: degenerate saddles at (+-1, 0)
  // Sphere total, every listed isolated point counted with its antipode.
  int index_sum() const;
  const TraceCriticalPoint* find(const std::string& label) const;
};

// Throws std::invalid_argument when a1 != 0 or the potential vanishes.
TraceReport trace_critical_points(const TraceParams& p);
std::map<std::string, double> trace_critical_values(const TraceParams& p);
std::map<std::string, std::pair<PointKind, int>> trace_classify(const TraceParams& p);

// xi in (pi/4, pi/2] for 0 < mu <= sqrt 2, mirrored for negative mu.
double xi_of_mu(double mu);

// ---------------------------------------------------------------------------
// Full symmetric potential: traceless part plus trace part.

struct SymFullParams {
  double alpha0 = 0;
  Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
  Eigen::Vector3d A = Eigen::Vector3d::Zero();

  SymTensor3<double> to_sym() const;
  Tensor3d to_tensor() const { return to_sym().to_tensor(); }
  double eval(const Eigen::Vector3d& x) const;
  OctupolarTensord traceless_part() const { return {alpha0, alpha, beta}; }
};

// Oriented tetrahedral potential, alpha2 = 1/sqrt 2, alpha3 = 1, beta3 = -1/2.
SymFullParams tetrahedral_params();
// Its four maxima: the pole and three points at x3 = -1/3.
std::array<Eigen::Vector3d, 4> tetrahedral_vertices();

// Closed form of the level-degenerate tetrahedral slice.
double psi31_potential(double alpha2, double alpha3, const Eigen::Vector3d& x);

// The six matrices of T_d fixing the north pole.
std::array<Eigen::Matrix3d, 6> pole_stabilizer();

enum class TetraMode {
  perturbative,     // deltas added to the tetrahedral potential, scaled by epsilon
  oriented,         // perturbative with alpha1 = beta1 = beta2 = 0 kept
  nonperturbative,  // absolute coefficients
};

// Free parameters. In the perturbative modes they are the deltas.
struct TetraFree {
  double alpha1 = 0;  // perturbative only; ignored in oriented mode
  double alpha2 = 0, alpha3 = 0, beta3 = 0;
  double beta1 = 0;  // nonperturbative only
  double epsilon = 1;
  // Also ask for equal values at the three southern vertices; beta3 is then
  // overwritten, and so is beta1 (nonperturbative) or alpha1 (perturbative).
  bool equal_levels = false;
};

struct TetraHessians {
  double p1 = 0;                     // double eigenvalue at the pole
  Eigen::Vector2d p234 = Eigen::Vector2d::Zero();  // Southern chart, at each of p2..p4
};

struct TetraResult {
  SymFullParams coeffs;
  std::array<double, 4> values{};      // potential at the four vertices
  std::optional<TetraHessians> hessian;  // nonperturbative with equal_levels
  bool all_maxima = false;               // from the closed forms, when available
};

TetraResult tetra_constraints(const TetraFree& f, TetraMode mode);

// G-invariance conditions on a general coefficient set: the traceless part is
// kept, the rest of the set is forced (A3 = 3 (alpha3 + 2 beta3)).
SymFullParams g_invariant_projection(const SymFullParams& s);

}  // namespace octo
