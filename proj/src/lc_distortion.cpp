#include "octupolar/lc_distortion.hpp"

#include <cmath>
#include <stdexcept>

namespace octo {

namespace {

constexpr double kTol = 1e-10;

// Skew tensor with axial vector n: W v = n x v.
Eigen::Matrix3d axial(const Eigen::Vector3d& n) {
  Eigen::Matrix3d w;
  w << 0, -n[2], n[1], n[2], 0, -n[0], -n[1], n[0], 0;
  return w;
}

// First Cartesian axis whose projection off n is comfortably nonzero.
Eigen::Vector3d completion(const Eigen::Vector3d& n) {
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
    e -= e.dot(n) * n;
    if (e.norm() >= 0.5) return e.normalized();
  }
  return Eigen::Vector3d::UnitX();  // unreachable for unit n
}

// Sign convention for an eigenvector: first non-negligible component positive.
Eigen::Vector3d fix_sign(Eigen::Vector3d v) {
  for (int i = 0; i < 3; ++i)
    if (std::abs(v[i]) > 1e-12) return v[i] < 0 ? Eigen::Vector3d(-v) : v;
  return v;
}

}  // namespace

DistortionCharacteristics decompose_gradient(const DirectorGradient& dg) {
  const Eigen::Vector3d& n = dg.n;
  const Eigen::Matrix3d& g = dg.g;
  if (std::abs(n.norm() - 1) > kTol) throw std::invalid_argument("director must be a unit vector");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g.transpose() * n).lpNorm<Eigen::Infinity>() > kTol * scale)
    throw std::invalid_argument("gradient violates g^T n = 0");

  DistortionCharacteristics dc;
  dc.S = g.trace();
  // T = n . curl n, curl_i = eps_ijk g_kj
  const Eigen::Vector3d curl(g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1));
  dc.T = n.dot(curl);
  const Eigen::Vector3d b = -g * n;

  const Eigen::Matrix3d P = Eigen::Matrix3d::Identity() - n * n.transpose();
  Eigen::Matrix3d D = g + b * n.transpose() - 0.5 * dc.T * axial(n) - 0.5 * dc.S * P;
  D = 0.5 * (D + D.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(D);
  dc.q = std::max(0.0, es.eigenvalues()[2]);
  Eigen::Vector3d n1;
  if (dc.q > kTol * scale) {
    n1 = fix_sign(es.eigenvectors().col(2));
    n1 = (n1 - n1.dot(n) * n).normalized();
  } else {
    dc.q = 0;
    dc.frame_arbitrary = true;
    n1 = completion(n);
  }
  dc.frame = {n1, n.cross(n1), n};
  dc.b1 = b.dot(dc.frame.n1);
  dc.b2 = b.dot(dc.frame.n2);
  return dc;
}

DirectorGradient reconstruct_gradient(const DistortionCharacteristics& dc) {
  const auto& f = dc.frame;
  Eigen::Matrix3d m;
  m << f.n1, f.n2, f.n;
  if ((m.transpose() * m - Eigen::Matrix3d::Identity()).lpNorm<Eigen::Infinity>() > kTol ||
      (f.n1.cross(f.n2) - f.n).lpNorm<Eigen::Infinity>() > kTol)
    throw std::invalid_argument("distortion frame must be orthonormal and right handed");

  DirectorGradient dg;
  dg.n = f.n;
  dg.g = (dc.S / 2 + dc.q) * f.n1 * f.n1.transpose() + (dc.S / 2 - dc.q) * f.n2 * f.n2.transpose() -
         dc.b1 * f.n1 * f.n.transpose() - dc.b2 * f.n2 * f.n.transpose() +
         0.5 * dc.T * (f.n2 * f.n1.transpose() - f.n1 * f.n2.transpose());
  return dg;
}

bool ericksen(const FrankConstants& k) {
  return k.k11 >= k.k24 && k.k22 >= k.k24 && k.k24 >= 0 && k.k33 >= 0;
}

FrankEnergy oseen_frank(const DistortionCharacteristics& dc, const FrankConstants& k) {
  const DirectorGradient dg = reconstruct_gradient(dc);
  const Eigen::Matrix3d& g = dg.g;
  const Eigen::Vector3d& n = dg.n;
  const Eigen::Vector3d curl(g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1));
  const double div = g.trace();
  const double twist = n.dot(curl);
  const double bend2 = n.cross(curl).squaredNorm();

  FrankEnergy e;
  e.w_classic = 0.5 * k.k11 * div * div + 0.5 * k.k22 * twist * twist + 0.5 * k.k33 * bend2 +
                k.k24 * ((g * g).trace() - div * div);
  const double b2 = dc.b1 * dc.b1 + dc.b2 * dc.b2;
  e.w_selinger = 0.5 * (k.k11 - k.k24) * dc.S * dc.S + 0.5 * (k.k22 - k.k24) * dc.T * dc.T +
                 0.5 * k.k33 * b2 + k.k24 * 2 * dc.q * dc.q;
  e.ericksen_ok = ericksen(k);
  return e;
}

double lc_octupolar_potential(const DistortionCharacteristics& dc, const Eigen::Vector3d& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  return (dc.S / 2 + dc.q) * x1 * x1 * x3 + (dc.S / 2 - dc.q) * x2 * x2 * x3 - dc.b1 * x1 * x3 * x3 -
         dc.b2 * x2 * x3 * x3 + x.squaredNorm() * (dc.b1 * x1 + dc.b2 * x2 - dc.S * x3) / 5;
}

OctupolarTensord lc_octupolar_tensor(const DirectorGradient& dg) {
  Tensor3d gn;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) gn(i, j, k) = dg.g(i, j) * dg.n[k];
  return detrace_symmetric(SymTensor3<double>::from_tensor(gn)).first;
}

}  // namespace octo
