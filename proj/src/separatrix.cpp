#include "octupolar/separatrix.hpp"

#include "octupolar/eigen_solver.hpp"
#include "octupolar/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace octo {

BoundaryEval boundary_functions(double rho, double chi) {
  if (!(rho >= 0 && rho <= 2)) throw std::invalid_argument("rho must lie in [0, 2]");
  BoundaryEval b;
  const double r2 = rho * rho;
  // K_1 below rho = 1, the x2 = 0 branch above
  b.g = rho <= 1 ? std::sqrt(2 * r2 * (1 - rho) / (3 * (6 - rho))) : std::sqrt(std::max(0.0, 2 * (2 - rho) * (rho - 1)));
  b.f = std::sqrt(2 * r2 * (1 + rho) / (3 * (6 + rho)));
  double c = std::cos(chi);
  const double s = std::sin(chi);
  if (std::abs(c) < 1e-15) c = 0;
  b.kappa = rho * c * std::sqrt((1 - rho * s) / (2 * (2 - rho * s)));
  if (rho > 1) b.h = std::sqrt((r2 - 1) / 3);
  return b;
}

double cusp_rho(double chi) { return -1 / std::sin(chi); }

double k_star_near_cusp(double rho, double chi) {
  // Coefficient of |d|^(2/3) is 3^(1/6) 2^(-4/3) ((3 - 4 c^2) |s| / c)^(1/3), fitted
  // against k_star over the sector; it is not (3 - 4 c^2) / (c s^2).
  const double c = std::cos(chi), s = std::sin(chi);
  const double d = rho + 1 / s;
  return -c / (std::sqrt(3.0) * s) +
         std::pow(3.0, 1.0 / 6) / std::pow(2.0, 4.0 / 3) * std::cbrt((3 - 4 * c * c) * std::abs(s) / c) * std::cbrt(d * d);
}

namespace {

// sum |c_i s^i|: the size of the terms that cancel in p(s)
double term_scale(const Poly& p, double s) {
  double t = 0, pw = 1;
  for (double c : p) {
    t += std::abs(c) * pw;
    pw *= std::abs(s);
  }
  return t;
}

}  // namespace

KStar k_star(double rho, double chi) {
  if (!(rho > 0 && rho <= 2)) throw std::invalid_argument("k_star needs 0 < rho <= 2");
  if (!(chi > -M_PI / 2 && chi < -M_PI / 6)) throw std::invalid_argument("k_star needs -pi/2 < chi < -pi/6");
  // On the groin W keeps only three distinct roots and U = V = 0 at s = 0.
  if (std::abs(rho * std::sin(chi) + 1) <= 1e-12) return {std::sqrt((rho * rho - 1) / 3), 0.0, "cusp"};
  const WalcherPoly w0 = walcher_coefficients({rho, chi, 0.0});
  const WalcherPoly w1 = walcher_coefficients({rho, chi, 1.0});
  Poly v(w0.s_coeffs.begin(), w0.s_coeffs.end());
  Poly u(7);
  for (int i = 0; i < 7; ++i) u[i] = w1.s_coeffs[i] - w0.s_coeffs[i];
  const Poly du = poly_derivative(u), dv = poly_derivative(v);
  Poly det = poly_add(poly_mul(u, dv), poly_scale(poly_mul(du, v), -1));
  // V carries the factor D^2 of the reduction, so D divides det. Removing its
  // roots keeps s_+ ~ c/2 from clustering with s* ~ c/4 as chi -> -pi/2.
  const double c = std::cos(chi), sn = std::sin(chi);
  det = poly_trim(det, 1e-14);
  for (const RealRoot& r : quadratic_roots(c, -2 * sn, -c).roots) det = poly_deflate(det, r.value);

  // V = P0 D^2 has the double roots of D, which show up here with K^2 ~ 0;
  // those are not coalescences. What remains has been a single root.
  std::optional<KStar> best;
  for (const RealRoot& r : real_roots(det, 0.0)) {
    const double s = r.value;
    const double uu = poly_eval(u, s), vv = poly_eval(v, s);
    const double uu1 = poly_eval(du, s), vv1 = poly_eval(dv, s);
    if (std::abs(uu) <= 1e-12 * term_scale(u, s)) continue;
    const double k2 = -vv / uu;
    if (!(k2 > 1e-12)) continue;
    if (std::abs(uu1) > 1e-12 * term_scale(du, s)) {
      const double k2b = -vv1 / uu1;
      if (std::abs(k2b - k2) > 1e-8 * std::max(1.0, k2)) continue;
    }
    KStar ks{std::sqrt(k2), s, s < -1e-9 ? "left" : (s > 1e-9 ? "right" : "cusp")};
    if (!best || ks.bigk > best->bigk) best = ks;
  }
  if (!best) throw std::runtime_error("k_star: no real double root with K^2 > 0");
  return *best;
}

std::vector<RegionSample> region_scan(double chi, int rho_steps, double k_max, int k_steps) {
  if (rho_steps < 2 || k_steps < 2) throw std::invalid_argument("region_scan needs at least 2 steps per axis");
  if (!(k_max > 0)) throw std::invalid_argument("region_scan needs k_max > 0");
  std::vector<RegionSample> out(static_cast<std::size_t>(rho_steps) * k_steps);
  parallel_for(out.size(), [&](std::size_t n) {
    const int i = static_cast<int>(n / k_steps), j = static_cast<int>(n % k_steps);
    RegionSample& r = out[n];
    r.rho = 2 * (i + 0.5) / rho_steps;
    r.chi = chi;
    r.bigk = k_max * (j + 0.5) / k_steps;
    const OrientedSolution sol = solve_oriented({r.rho, chi, r.bigk});
    r.count = sol.critical_point_total();
    r.continuum = sol.continuum;
  });
  return out;
}

}  // namespace octo
