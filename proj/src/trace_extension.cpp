#include "octupolar/trace_extension.hpp"

#include "octupolar/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace octo {

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;
const double kPoleRow = std::sqrt(2.0 / 3.0);  // |x2| of p2, p3

void check(const TraceParams& p) {
  if (p.a1 != 0.0) throw std::invalid_argument("trace potential: a1 must be 0 (pole not critical)");
  if (p.a2 == 0.0 && p.a3 == 0.0) throw std::invalid_argument("trace potential vanishes identically");
}

double scale_of(const TraceParams& p) { return std::max(std::abs(p.a2), std::abs(p.a3)); }

double zc(double x1, double x2) { return std::sqrt(std::max(0.0, 1.0 - x1 * x1 - x2 * x2)); }

// Ring probe in the chart: +1 if every neighbour is below, -1 if every one is above.
int probe(const TraceParams& p, double x1, double x2) {
  const double c = trace_chart_value(p, x1, x2);
  const double r = 1e-2;
  bool below = true, above = true;
  for (int k = 0; k < 64; ++k) {
    const double t = 2 * std::numbers::pi * k / 64;
    double u = x1 + r * std::cos(t), v = x2 + r * std::sin(t);
    const double n = std::hypot(u, v);
    if (n > 1) u /= n, v /= n;  // stay on the closed hemisphere
    const double d = trace_chart_value(p, u, v) - c;
    below = below && d < 0;
    above = above && d > 0;
  }
  return below ? 1 : above ? -1 : 0;
}

// On the equator the chart is singular; use the tangent-plane Hessian there.
Eigen::Matrix2d tangent_hessian(const TraceParams& p, const Eigen::Vector3d& x) {
  const Tensor3d a = trace_tensor(p);
  const Eigen::Matrix3d h = 6 * contract_first(a, x) - 3 * eval_potential(a, x) * Eigen::Matrix3d::Identity();
  Eigen::Matrix<double, 3, 2> t;
  t.col(0) = Eigen::Vector3d::UnitZ();
  t.col(1) = x.cross(Eigen::Vector3d::UnitZ()).normalized();
  return t.transpose() * h * t;
}

void classify_point(const TraceParams& p, TraceCriticalPoint& q) {
  const bool equator = std::abs(1 - q.x1 * q.x1 - q.x2 * q.x2) < 1e-12;
  const Eigen::Matrix2d h = equator ? tangent_hessian(p, q.x()) : trace_chart_hessian(p, q.x1, q.x2);
  q.hessian_eigs = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvalues();
  if (q.on_continuum) {
    q.kind = PointKind::degenerate_saddle;
    q.index = 0;
    return;
  }
  const double tol = 1e-9 * scale_of(p);
  const double lo = q.hessian_eigs[0], hi = q.hessian_eigs[1];
  if (std::min(std::abs(lo), std::abs(hi)) > tol && q.multiplicity == 1) {
    if (hi < 0) q.kind = PointKind::maximum, q.index = 1;
    else if (lo > 0) q.kind = PointKind::minimum, q.index = 1;
    else q.kind = PointKind::saddle, q.index = -1;
    return;
  }
  q.index = winding_index(trace_tensor(p), q.x());
  if (q.index == 1) {
    q.kind = probe(p, q.x1, q.x2) >= 0 ? PointKind::maximum : PointKind::minimum;
  } else {
    q.kind = PointKind::degenerate_saddle;
  }
}

}  // namespace

Tensor3d trace_tensor(const TraceParams& p) {
  SymTensor3<double> s;
  s.gamma = Eigen::Vector3d(p.a1, p.a2, p.a3) / 3.0;
  return s.to_tensor();
}

double trace_potential(const TraceParams& p, const Eigen::Vector3d& x) {
  return p.a1 * x[0] * x[2] * x[2] + p.a2 * x[1] * x[0] * x[0] + p.a3 * x[2] * x[1] * x[1];
}

double trace_chart_value(const TraceParams& p, double x1, double x2) {
  return trace_potential(p, Eigen::Vector3d(x1, x2, zc(x1, x2)));
}

Eigen::Vector2d trace_chart_gradient(const TraceParams& p, double x1, double x2) {
  const double z = zc(x1, x2);
  const double z1 = -x1 / z, z2 = -x2 / z;
  return {2 * p.a2 * x1 * x2 + p.a3 * x2 * x2 * z1,
          p.a2 * x1 * x1 + p.a3 * (2 * x2 * z + x2 * x2 * z2)};
}

Eigen::Matrix2d trace_chart_hessian(const TraceParams& p, double x1, double x2) {
  const double z = zc(x1, x2), z3 = z * z * z;
  const double z1 = -x1 / z, z2 = -x2 / z;
  const double z11 = -(1 - x2 * x2) / z3, z22 = -(1 - x1 * x1) / z3, z12 = -x1 * x2 / z3;
  Eigen::Matrix2d h;
  h(0, 0) = 2 * p.a2 * x2 + p.a3 * x2 * x2 * z11;
  h(0, 1) = h(1, 0) = 2 * p.a2 * x1 + p.a3 * (2 * x2 * z1 + x2 * x2 * z12);
  h(1, 1) = p.a3 * (2 * z + 4 * x2 * z2 + x2 * x2 * z22);
  return h;
}

Eigen::Vector3d TraceCriticalPoint::x() const { return {x1, x2, zc(x1, x2)}; }

int TraceReport::index_sum() const {
  int s = 0;
  for (const auto& q : points)
    if (!q.on_continuum) s += 2 * q.index;
  return s;
}

const TraceCriticalPoint* TraceReport::find(const std::string& label) const {
  for (const auto& q : points)
    if (q.label == label) return &q;
  return nullptr;
}

double xi_of_mu(double mu) {
  if (mu == 0.0 || std::abs(mu) > kSqrt2 + 1e-15) throw std::domain_error("xi_of_mu: need 0 < |mu| <= sqrt 2");
  const double s = std::min(1.0, std::sqrt(2.0 / (4.0 - mu * mu)));
  return std::copysign(std::asin(s), mu);
}

TraceReport trace_critical_points(const TraceParams& p) {
  check(p);
  TraceReport r;
  r.params = p;
  auto add = [&](const char* label, double x1, double x2, bool cont = false, int mult = 1) {
    TraceCriticalPoint q;
    q.label = label;
    q.x1 = x1;
    q.x2 = x2;
    q.value = trace_chart_value(p, x1, x2);
    q.on_continuum = cont;
    q.multiplicity = mult;
    classify_point(p, q);
    r.points.push_back(q);
  };

  if (p.a2 == 0.0) {
    // x2 = 0 is a critical great circle through the pole and (+-1, 0, 0)
    r.meridian_continuum = true;
    r.equator_saddles = true;
    add("p1", 0, 0, true);
    add("p2", 0, -kPoleRow);
    add("p3", 0, kPoleRow);
    return r;
  }

  const double mu = p.mu();
  if (mu == 0.0) {
    // x1 = 0 is critical; the two equatorial maxima (for a2 > 0) stand in for p4, p5
    r.meridian_continuum = true;
    add("p1", 0, 0, true);
    add("p2", 0, -kPoleRow, true);
    add("p3", 0, kPoleRow, true);
    const double s = p.a2 > 0 ? 1.0 : -1.0;
    add("p4", -kPoleRow, s / kSqrt3);
    add("p5", kPoleRow, s / kSqrt3);
    return r;
  }

  const double edge = std::abs(std::abs(mu) - kSqrt2);
  const bool merged = edge <= 1e-12;
  add("p1", 0, 0);
  add("p2", 0, -kPoleRow, false, merged && mu < 0 ? 2 : 1);
  add("p3", 0, kPoleRow, false, merged && mu > 0 ? 2 : 1);
  if (!merged && std::abs(mu) < kSqrt2) {
    const double xi = xi_of_mu(mu);
    const double u = 2 / kSqrt3 * std::cos(xi), v = kPoleRow * std::sin(xi);
    add("p4", -u, v);
    add("p5", u, v);
  }
  return r;
}

std::map<std::string, double> trace_critical_values(const TraceParams& p) {
  check(p);
  const double c23 = 2 / (3 * kSqrt3);
  std::map<std::string, double> v;
  v["p1"] = 0;
  if (p.a2 == 0.0) {
    v["p2"] = v["p3"] = c23 * p.a3;
    return v;
  }
  const double mu = p.mu();
  v["p2"] = v["p3"] = c23 * mu * p.a2;
  if (mu == 0.0) {
    v["p4"] = v["p5"] = c23 * std::abs(p.a2);
  } else if (std::abs(mu) < kSqrt2 - 1e-12) {
    v["p4"] = v["p5"] = std::copysign(4.0, mu) / (3 * kSqrt3 * std::sqrt(4 - mu * mu)) * p.a2;
  }
  return v;
}

std::map<std::string, std::pair<PointKind, int>> trace_classify(const TraceParams& p) {
  std::map<std::string, std::pair<PointKind, int>> out;
  for (const auto& q : trace_critical_points(p).points) out[q.label] = {q.kind, q.index};
  return out;
}

// ---------------------------------------------------------------------------

SymTensor3<double> SymFullParams::to_sym() const {
  SymTensor3<double> s;
  s.alpha0 = alpha0;
  s.alpha = alpha;
  s.beta = beta;
  s.gamma = A / 3.0 - (alpha + beta);
  return s;
}

double SymFullParams::eval(const Eigen::Vector3d& x) const {
  const Eigen::Vector3d g = A / 3.0 - (alpha + beta);
  double v = 6 * alpha0 * x[0] * x[1] * x[2];
  for (int i = 0; i < 3; ++i) {
    const double next = x[(i + 1) % 3], prev = x[(i + 2) % 3];
    v += alpha[i] * x[i] * x[i] * x[i] + 3 * beta[i] * x[i] * next * next + 3 * g[i] * x[i] * prev * prev;
  }
  return v;
}

SymFullParams tetrahedral_params() {
  SymFullParams s;
  s.alpha = {0, 1 / kSqrt2, 1};
  s.beta = {0, 0, -0.5};
  return s;
}

std::array<Eigen::Vector3d, 4> tetrahedral_vertices() {
  return {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0, 2 * kSqrt2 / 3, -1.0 / 3),
          Eigen::Vector3d(-kPoleRow, -kSqrt2 / 3, -1.0 / 3), Eigen::Vector3d(kPoleRow, -kSqrt2 / 3, -1.0 / 3)};
}

double psi31_potential(double alpha2, double alpha3, const Eigen::Vector3d& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  return 0.5 * alpha3 * x3 * (2 * x3 * x3 - x1 * x1 - x2 * x2) -
         alpha2 * ((3 * x2 + kSqrt2 * x3) * x1 * x1 + x2 * x2 * (kSqrt2 * x3 - x2));
}

std::array<Eigen::Matrix3d, 6> pole_stabilizer() {
  const double h = 0.5, r = kSqrt3 / 2;
  std::array<Eigen::Matrix3d, 6> m;
  m[0] = Eigen::Matrix3d::Identity();
  m[1] << -h, r, 0, -r, -h, 0, 0, 0, 1;
  m[2] << -h, -r, 0, r, -h, 0, 0, 0, 1;
  m[3] << -1, 0, 0, 0, 1, 0, 0, 0, 1;
  m[4] << h, -r, 0, -r, -h, 0, 0, 0, 1;
  m[5] << h, r, 0, r, -h, 0, 0, 0, 1;
  return m;
}

namespace {

// Trace coefficients that keep the vertices critical, given the traceless part.
Eigen::Vector3d vertex_trace(double beta1, double alpha2, double alpha3, double beta3) {
  return {12 * beta1, 2 * alpha2 + alpha3 / kSqrt2 + 3 * kSqrt2 * beta3,
          -kSqrt2 * alpha2 + 2.5 * alpha3 + 3 * beta3};
}

double level_beta3(double alpha2, double alpha3) { return -(2 * kSqrt2 * alpha2 + alpha3) / 6; }

}  // namespace

TetraResult tetra_constraints(const TetraFree& f, TetraMode mode) {
  TetraResult out;
  if (mode == TetraMode::nonperturbative) {
    const double b1 = f.equal_levels ? 0.0 : f.beta1;
    const double b3 = f.equal_levels ? level_beta3(f.alpha2, f.alpha3) : f.beta3;
    SymFullParams& s = out.coeffs;
    s.alpha0 = kSqrt2 * b1;
    s.alpha = {3 * b1, f.alpha2, f.alpha3};
    s.beta = {b1, 0, b3};
    s.A = vertex_trace(b1, f.alpha2, f.alpha3, b3);
    if (f.equal_levels) {
      TetraHessians h;
      h.p1 = -2 * (kSqrt2 * f.alpha2 + 2 * f.alpha3);
      const double l1 = -6 * kSqrt2 * f.alpha2, l2 = -6 * (5 * kSqrt2 * f.alpha2 + 4 * f.alpha3);
      h.p234 = {std::min(l1, l2), std::max(l1, l2)};
      out.hessian = h;
      out.all_maxima = h.p1 < 0 && h.p234[1] < 0;
    }
  } else {
    // the perturbation itself obeys the same linear relations, written with
    // alpha1 as the free parameter instead of beta1
    // equal southern levels only survive with the oriented deltas
    const double a1 = mode == TetraMode::oriented || f.equal_levels ? 0.0 : f.alpha1;
    const double b1 = a1 / 3;
    const double b3 = f.equal_levels ? level_beta3(f.alpha2, f.alpha3) : f.beta3;
    SymFullParams d;
    d.alpha0 = kSqrt2 * b1;
    d.alpha = {a1, f.alpha2, f.alpha3};
    d.beta = {b1, 0, b3};
    d.A = vertex_trace(b1, f.alpha2, f.alpha3, b3);
    SymFullParams& s = out.coeffs;
    s = tetrahedral_params();
    s.alpha0 += f.epsilon * d.alpha0;
    s.alpha += f.epsilon * d.alpha;
    s.beta += f.epsilon * d.beta;
    s.A += f.epsilon * d.A;
  }
  const auto v = tetrahedral_vertices();
  for (int i = 0; i < 4; ++i) out.values[i] = out.coeffs.eval(v[i]);
  return out;
}

SymFullParams g_invariant_projection(const SymFullParams& s) {
  SymFullParams g;
  g.alpha = {0, s.alpha[1], s.alpha[2]};
  g.beta = {0, 0, s.beta[2]};
  g.A = {0, 0, 3 * (s.alpha[2] + 2 * s.beta[2])};
  return g;
}

}  // namespace octo
