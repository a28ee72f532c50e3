#pragma once

#include "octupolar/tensor.hpp"

namespace octo {

// g = grad n, g(i, j) = d n_i / d x_j.
struct DirectorGradient {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  Eigen::Vector3d n = Eigen::Vector3d::UnitZ();
};

struct DistortionFrame {
  Eigen::Vector3d n1 = Eigen::Vector3d::UnitX();
  Eigen::Vector3d n2 = Eigen::Vector3d::UnitY();
  Eigen::Vector3d n = Eigen::Vector3d::UnitZ();
};

struct DistortionCharacteristics {
  double S = 0;  // splay
  double T = 0;  // twist
  double b1 = 0, b2 = 0;
  double q = 0;  // octupolar splay, >= 0
  DistortionFrame frame;
  bool frame_arbitrary = false;  // q = 0: n1 is a conventional completion
};

struct FrankConstants {
  double k11 = 0, k22 = 0, k33 = 0, k24 = 0;
};

struct FrankEnergy {
  double w_classic = 0;
  double w_selinger = 0;
  bool ericksen_ok = false;
};

// Throws std::invalid_argument if |n| != 1 or g^T n != 0 beyond 1e-10.
DistortionCharacteristics decompose_gradient(const DirectorGradient& dg);
// Throws std::invalid_argument if the frame is not orthonormal and right handed.
DirectorGradient reconstruct_gradient(const DistortionCharacteristics& dc);

bool ericksen(const FrankConstants& k);
FrankEnergy oseen_frank(const DistortionCharacteristics& dc, const FrankConstants& k);

// Potential of irr(grad n (x) n) at x given in distortion-frame coordinates.
// Homogeneous of degree 3 (the |x|^2 factor is kept).
double lc_octupolar_potential(const DistortionCharacteristics& dc, const Eigen::Vector3d& x);

// The same tensor in lab coordinates, built through the detracer.
OctupolarTensord lc_octupolar_tensor(const DirectorGradient& dg);

}  // namespace octo
