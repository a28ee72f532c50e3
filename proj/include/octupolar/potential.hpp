#pragma once

#include "octupolar/tensor.hpp"

#include <vector>

namespace octo {

// Phi(x) = A_ijk x_i x_j x_k; only the symmetric part of A contributes.
template <typename S> S eval_potential(const Tensor3<S>& a, const Vec3<S>& x) {
  return x.dot(contract2(a, x));
}
template <typename S> S eval_potential(const OctupolarTensor<S>& a, const Vec3<S>& x) {
  return eval_potential(a.to_tensor(), x);
}

// grad Phi; equals 3 A x^2 when A is symmetric.
template <typename S> Vec3<S> gradient(const Tensor3<S>& a, const Vec3<S>& x) {
  return contract2(a, x) + contract2(permute(a, {1, 0, 2}), x) + contract2(permute(a, {1, 2, 0}), x);
}
template <typename S> Vec3<S> gradient(const OctupolarTensor<S>& a, const Vec3<S>& x) {
  return S(3) * contract2(a.to_tensor(), x);
}

// Reduced parameters of an oriented octupolar potential (the paper's rho, chi, K).
struct OrientedParams {
  double rho = 0;
  double chi = -1.5707963267948966;
  double bigk = 0;
};

bool in_sector(const OrientedParams& p, double tol = 1e-12);

// alpha0 = rho cos(chi)/2, alpha2 = K, beta3 = (rho sin(chi) - 1)/2, alpha3 = 1.
OctupolarTensord from_rho_chi_K(const OrientedParams& p);

struct Orientation {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  // x' = rotation * x
  double scale = 1;                                        // Phi(north) before scaling
  OrientedParams params;
  bool mirrored = false;    // rotation has determinant -1
  bool continuum = false;   // rho = K = 0: a whole circle of critical points
};

// Rotates a global maximum to the north pole, scales it to 1, and reduces the
// parameters into the sector 0 <= rho <= 2, -pi/2 <= chi <= -pi/6, K >= 0.
// from_rho_chi_K(o.params) == rotate(t, o.rotation) / o.scale.
Orientation orient(const OctupolarTensord& t);

// Undoes an orientation: returns scale * rotate(from_rho_chi_K(params), R^T).
OctupolarTensord unorient(const Orientation& o);

// Sphere sampling in x = (cos th cos ph, sin th cos ph, sin ph),
// th in [0, 2 pi], ph in [-pi/2, pi/2], endpoints included.
struct SphereGrid {
  int theta_steps = 181;
  int phi_steps = 91;
};

enum class Chart { sphere, north, south, x2_positive };

struct GridRow {
  double theta;
  double phi;
  Eigen::Vector3d x;
  double value;
};

// Chart::north/south restrict ph to one hemisphere (x3 = +-sqrt(1 - x1^2 - x2^2));
// Chart::x2_positive uses x2 as the polar axis with x2 >= 0.
std::vector<GridRow> sample_grid(const Tensor3d& t, const SphereGrid& grid, Chart chart = Chart::sphere);

// ---------------------------------------------------------------------------
// Critical-point polishing shared by the solvers and the oracle.

// max_i |(A x^2)_i - lambda x_i| for a symmetric A.
double eigen_residual(const Tensor3d& a, const Eigen::Vector3d& x, double lambda);

struct PolishResult {
  Eigen::Vector3d x;
  double lambda;
  double residual;
  int iterations;
};

// Newton on the bordered system A x^2 - lambda x = 0, (|x|^2 - 1)/2 = 0 with
// step halving whenever the residual grows.
PolishResult newton_polish(const Tensor3d& a, const Eigen::Vector3d& x0, int max_iter = 50);

// Shifted power iteration x <- normalize(+-A x^2 + shift x): monotone ascent
// (sign = +1) or descent (sign = -1) of Phi on the sphere.
Eigen::Vector3d power_ascent(const Tensor3d& a, const Eigen::Vector3d& x0, int sign, int iterations);

// Quasi-uniform Fibonacci points on the unit sphere.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

}  // namespace octo
