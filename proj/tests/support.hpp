#pragma once

#include "octupolar/tensor.hpp"

#include <cmath>
#include <random>

namespace testing_support {

inline constexpr double kPi = 3.14159265358979323846;

using Rng = std::mt19937_64;

inline double uniform(Rng& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }

inline Eigen::Vector3d random_unit(Rng& r) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v(n(r), n(r), n(r));
  return v.normalized();
}

inline octo::Tensor3d random_tensor(Rng& r) {
  octo::Tensor3d t;
  for (int i = 0; i < 27; ++i) t.c[i] = uniform(r, -1, 1);
  return t;
}

inline octo::OctupolarTensord random_octupolar(Rng& r) {
  octo::OctupolarTensord o;
  o.alpha0 = uniform(r, -1, 1);
  for (int i = 0; i < 3; ++i) {
    o.alpha[i] = uniform(r, -1, 1);
    o.beta[i] = uniform(r, -1, 1);
  }
  return o;
}

inline double max_abs_diff(const octo::Tensor3d& a, const octo::Tensor3d& b) {
  return (a.c - b.c).cwiseAbs().maxCoeff();
}

// Random proper rotation from a normalized quaternion.
inline Eigen::Matrix3d random_rotation(Rng& r) {
  Eigen::Quaterniond q(uniform(r, -1, 1), uniform(r, -1, 1), uniform(r, -1, 1), uniform(r, -1, 1));
  return q.normalized().toRotationMatrix();
}

}  // namespace testing_support
