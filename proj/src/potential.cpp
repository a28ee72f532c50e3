#include "octupolar/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace octo {

using Eigen::Matrix3d;
using Eigen::Vector3d;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix3d basis_with_third_row(const Vector3d& m) {
  Vector3d seed = std::abs(m.x()) < 0.9 ? Vector3d::UnitX() : Vector3d::UnitY();
  Vector3d u = (seed - seed.dot(m) * m).normalized();
  Vector3d w = m.cross(u);
  Matrix3d r;
  r.row(0) = u;
  r.row(1) = w;
  r.row(2) = m;
  return r;
}

Matrix3d rot_z_rows(double psi) {
  Matrix3d r;
  r << std::cos(psi), std::sin(psi), 0, -std::sin(psi), std::cos(psi), 0, 0, 0, 1;
  return r;
}

OrientedParams read_params(const OctupolarTensord& o) {
  const double rc = 2 * o.alpha0, rs = 2 * o.beta[2] + 1;
  OrientedParams p;
  p.rho = std::hypot(rc, rs);
  p.chi = p.rho < 1e-12 ? -kPi / 2 : std::atan2(rs, rc);
  p.bigk = o.alpha[1];
  if (p.rho < 1e-12) p.rho = 0;
  return p;
}

}  // namespace

bool in_sector(const OrientedParams& p, double tol) {
  return p.rho >= -tol && p.rho <= 2 + tol && p.chi >= -kPi / 2 - tol && p.chi <= -kPi / 6 + tol &&
         p.bigk >= -tol;
}

OctupolarTensord from_rho_chi_K(const OrientedParams& p) {
  if (!std::isfinite(p.rho) || !std::isfinite(p.chi) || !std::isfinite(p.bigk))
    throw std::invalid_argument("oriented parameters must be finite");
  if (p.rho < -1e-12 || p.rho > 2 + 1e-12) throw std::invalid_argument("rho must lie in [0, 2]");
  OctupolarTensord o;
  o.alpha0 = 0.5 * p.rho * std::cos(p.chi);
  o.alpha = Vector3d(0, p.bigk, 1);
  o.beta = Vector3d(0, 0, 0.5 * (p.rho * std::sin(p.chi) - 1));
  return o;
}

Orientation orient(const OctupolarTensord& t) {
  const Tensor3d a = t.to_tensor();
  const double norm = a.norm();
  if (!(norm > 0) || !std::isfinite(norm)) throw std::invalid_argument("cannot orient a zero or non-finite tensor");

  // Local maxima from ascent runs, polished by Newton.
  std::vector<std::pair<double, Vector3d>> maxima;
  for (const Vector3d& seed : fibonacci_sphere(240)) {
    const Vector3d y = power_ascent(a, seed, +1, 400);
    const PolishResult pr = newton_polish(a, y);
    if (pr.residual > 1e-10 * norm) continue;
    bool dup = false;
    for (const auto& m : maxima)
      if ((m.second - pr.x).norm() < 1e-6) dup = true;
    if (!dup) maxima.emplace_back(pr.lambda, pr.x);
  }
  if (maxima.empty()) throw std::runtime_error("orient: no maximum found");
  double vmax = maxima.front().first;
  for (const auto& m : maxima) vmax = std::max(vmax, m.first);

  Orientation best;
  bool have = false;
  auto better = [](const Orientation& a, const Orientation& b) {
    constexpr double e = 1e-9;
    if (std::abs(a.params.rho - b.params.rho) > e) return a.params.rho < b.params.rho;
    if (std::abs(a.params.chi - b.params.chi) > e) return a.params.chi < b.params.chi;
    if (std::abs(a.params.bigk - b.params.bigk) > e) return a.params.bigk < b.params.bigk;
    return false;
  };

  for (const auto& m : maxima) {
    if (m.first < vmax - 1e-9 * std::abs(vmax)) continue;
    const Matrix3d r0 = basis_with_third_row(m.second);
    const Tensor3d a1 = (1.0 / m.first) * rotate(a, r0);
    // With the pole critical, Phi on the equator is a cos 3psi + b sin 3psi.
    const double ca = eval_potential(a1, Vector3d(1, 0, 0));
    const double cb = eval_potential(a1, Vector3d(std::cos(kPi / 6), std::sin(kPi / 6), 0));
    const double psi0 = std::atan2(-ca, cb) / 3;
    for (int mirror = 0; mirror < 2; ++mirror)
      for (int k = 0; k < 6; ++k) {
        Matrix3d q = rot_z_rows(psi0 + k * kPi / 3) * r0;
        if (mirror) q.row(0) *= -1;
        const OctupolarTensord o = OctupolarTensord::from_tensor((1.0 / m.first) * rotate(a, q));
        Orientation cand;
        cand.rotation = q;
        cand.scale = m.first;
        cand.params = read_params(o);
        cand.mirrored = mirror == 1;
        if (!in_sector(cand.params, 1e-9)) continue;
        if (!have || better(cand, best)) {
          best = cand;
          have = true;
        }
      }
  }
  if (!have) throw std::runtime_error("orient: could not reduce parameters into the sector");
  OrientedParams& p = best.params;
  p.rho = std::clamp(p.rho, 0.0, 2.0);
  p.chi = std::clamp(p.chi, -kPi / 2, -kPi / 6);
  p.bigk = std::max(p.bigk, 0.0);
  best.continuum = p.rho < 1e-9 && p.bigk < 1e-9;
  return best;
}

OctupolarTensord unorient(const Orientation& o) {
  const Tensor3d a = rotate(from_rho_chi_K(o.params).to_tensor(), Matrix3d(o.rotation.transpose()));
  return OctupolarTensord::from_tensor(o.scale * a);
}

std::vector<GridRow> sample_grid(const Tensor3d& t, const SphereGrid& grid, Chart chart) {
  if (grid.theta_steps < 2 || grid.phi_steps < 2) throw std::invalid_argument("grid needs at least 2 steps per axis");
  double lo = -kPi / 2, hi = kPi / 2;
  if (chart == Chart::north || chart == Chart::x2_positive) lo = 0;
  if (chart == Chart::south) hi = 0;
  std::vector<GridRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.theta_steps) * grid.phi_steps);
  for (int i = 0; i < grid.theta_steps; ++i) {
    const double th = 2 * kPi * i / (grid.theta_steps - 1);
    for (int j = 0; j < grid.phi_steps; ++j) {
      const double ph = lo + (hi - lo) * j / (grid.phi_steps - 1);
      const double u = std::cos(th) * std::cos(ph), v = std::sin(th) * std::cos(ph), w = std::sin(ph);
      const Vector3d x = chart == Chart::x2_positive ? Vector3d(u, w, v) : Vector3d(u, v, w);
      rows.push_back({th, ph, x, eval_potential(t, x)});
    }
  }
  return rows;
}

double eigen_residual(const Tensor3d& a, const Vector3d& x, double lambda) {
  return (contract2(a, x) - lambda * x).cwiseAbs().maxCoeff();
}

PolishResult newton_polish(const Tensor3d& a, const Vector3d& x0, int max_iter) {
  Vector3d x = x0.normalized();
  double lambda = x.dot(contract2(a, x));
  auto residual = [&a](const Vector3d& y, double l) {
    Eigen::Vector4d r;
    r.head<3>() = contract2(a, y) - l * y;
    r[3] = 0.5 * (y.squaredNorm() - 1);
    return r;
  };
  Eigen::Vector4d r = residual(x, lambda);
  double rn = r.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < max_iter && rn > 0; ++it) {
    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    j.topLeftCorner<3, 3>() = 2 * contract_first(a, x) - lambda * Matrix3d::Identity();
    j.block<3, 1>(0, 3) = -x;
    j.block<1, 3>(3, 0) = x.transpose();
    const Eigen::Vector4d d = j.fullPivLu().solve(-r);
    if (!d.allFinite()) break;
    double step = 1;
    bool improved = false;
    for (int h = 0; h < 30; ++h, step *= 0.5) {
      const Vector3d xn = x + step * d.head<3>();
      const double ln = lambda + step * d[3];
      const Eigen::Vector4d rr = residual(xn, ln);
      const double rrn = rr.cwiseAbs().maxCoeff();
      if (rrn < rn) {
        x = xn;
        lambda = ln;
        r = rr;
        rn = rrn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  x.normalize();
  lambda = x.dot(contract2(a, x));
  return {x, lambda, eigen_residual(a, x, lambda), it};
}

Vector3d power_ascent(const Tensor3d& a, const Vector3d& x0, int sign, int iterations) {
  const double shift = 2 * a.norm() + 1e-300;
  Vector3d x = x0.normalized();
  for (int i = 0; i < iterations; ++i) {
    Vector3d y = static_cast<double>(sign) * contract2(a, x) + shift * x;
    const double n = y.norm();
    if (!(n > 0)) break;
    y /= n;
    if ((y - x).norm() < 1e-15) {
      x = y;
      break;
    }
    x = y;
  }
  return x;
}

std::vector<Vector3d> fibonacci_sphere(int n) {
  std::vector<Vector3d> pts;
  pts.reserve(n);
  const double golden = kPi * (3 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1 - (2.0 * i + 1) / n;
    const double r = std::sqrt(std::max(0.0, 1 - z * z));
    const double ph = golden * i;
    pts.emplace_back(r * std::cos(ph), r * std::sin(ph), z);
  }
  return pts;
}

}  // namespace octo
