#include "octupolar/critical_points.hpp"

#include "octupolar/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace octo {

using Eigen::Matrix3d;
using Eigen::Vector3d;

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::maximum: return "maximum";
    case PointKind::minimum: return "minimum";
    case PointKind::saddle: return "saddle";
    case PointKind::degenerate_saddle: return "degenerate_saddle";
    case PointKind::monkey_saddle: return "monkey_saddle";
  }
  return "saddle";
}

namespace {

// Orthonormal e1, e2 with e1 x e2 = x.
std::pair<Vector3d, Vector3d> tangent_basis(const Vector3d& x) {
  const Vector3d seed = std::abs(x[0]) < 0.9 ? Vector3d::UnitX() : Vector3d::UnitY();
  const Vector3d e1 = (seed - seed.dot(x) * x).normalized();
  return {e1, x.cross(e1)};
}

}  // namespace

int winding_index(const Tensor3d& a, const Vector3d& x, double radius, int samples) {
  const auto [e1, e2] = tangent_basis(x);
  double total = 0, prev = 0;
  for (int i = 0; i <= samples; ++i) {
    const double th = 2 * std::numbers::pi * i / samples;
    const Vector3d y = (x + radius * (std::cos(th) * e1 + std::sin(th) * e2)).normalized();
    const Vector3d g = gradient(a, y);
    const Vector3d gs = g - g.dot(y) * y;
    const double ang = std::atan2(gs.dot(e2), gs.dot(e1));
    if (i > 0) {
      double d = ang - prev;
      while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
      total += d;
    }
    prev = ang;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

CriticalPoint classify(const Tensor3d& a, const Eigenpair& pair, double radius) {
  const double scale = std::max(a.norm(), 1e-300);
  if (eigen_residual(a, pair.x, pair.lambda) > 1e-7 * scale)
    throw std::invalid_argument("classify: point is not critical");

  CriticalPoint cp;
  cp.x = pair.x.normalized();
  cp.lambda = pair.lambda;
  const auto [e1, e2] = tangent_basis(cp.x);
  const Matrix3d h3 = 6 * contract_first(a, cp.x) - 3 * pair.lambda * Matrix3d::Identity();
  Eigen::Matrix2d h;
  h << e1.dot(h3 * e1), e1.dot(h3 * e2), e2.dot(h3 * e1), e2.dot(h3 * e2);
  cp.hessian_eigs = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvalues();

  const double hmax = cp.hessian_eigs.cwiseAbs().maxCoeff();
  const double hmin = cp.hessian_eigs.cwiseAbs().minCoeff();
  const bool flat = hmax <= 1e-7 * scale;
  const bool degenerate = flat || hmin <= 1e-7 * hmax || pair.multiplicity_hint > 1;
  if (!degenerate) {
    const double d = cp.hessian_eigs[0] * cp.hessian_eigs[1];
    cp.index = d > 0 ? 1 : -1;
    cp.kind = d < 0 ? PointKind::saddle : (cp.hessian_eigs[1] < 0 ? PointKind::maximum : PointKind::minimum);
    return cp;
  }
  cp.index = winding_index(a, cp.x, radius);
  if (cp.index == 1) {
    // degenerate extremum: look at the values around it
    const double probe = eval_potential(a, Vector3d((cp.x + radius * e1).normalized()));
    cp.kind = probe < cp.lambda ? PointKind::maximum : PointKind::minimum;
  } else if (cp.index == -1 && !flat && hmin > 1e-7 * hmax) {
    cp.kind = PointKind::saddle;
  } else if (cp.index == -2 && flat) {
    cp.kind = PointKind::monkey_saddle;
  } else if (cp.index == -1) {
    cp.kind = PointKind::saddle;
  } else {
    cp.kind = PointKind::degenerate_saddle;
  }
  return cp;
}

CriticalPoint classify(const OctupolarTensord& a, const Eigenpair& pair, double radius) {
  return classify(a.to_tensor(), pair, radius);
}

int TopologyReport::count_index(int iota) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const CriticalPoint& c) { return c.index == iota; }));
}

namespace {

void tally(TopologyReport& r) {
  r.index_sum = 0;
  r.maxima = r.minima = r.saddles = r.degenerate = 0;
  for (const CriticalPoint& c : r.points) {
    r.index_sum += c.index;
    switch (c.kind) {
      case PointKind::maximum: ++r.maxima; break;
      case PointKind::minimum: ++r.minima; break;
      case PointKind::saddle: ++r.saddles; break;
      default: ++r.degenerate; break;
    }
  }
}

// Winding circles must not enclose a neighbour; antipodes count as neighbours.
double winding_radius(const Vector3d& x, const std::vector<Eigenpair>& all) {
  double d = std::numeric_limits<double>::infinity();
  for (const Eigenpair& o : all)
    for (const Vector3d& y : {o.x, Vector3d(-o.x)}) {
      const double dist = (y - x).norm();
      if (dist > 0) d = std::min(d, dist);
    }
  return std::min(1e-3, 0.4 * d);
}

CriticalPoint antipode(const CriticalPoint& c) {
  CriticalPoint m = c;
  m.x = -c.x;
  m.lambda = -c.lambda;
  m.hessian_eigs = Eigen::Vector2d(-c.hessian_eigs[1], -c.hessian_eigs[0]);
  if (c.kind == PointKind::maximum) m.kind = PointKind::minimum;
  else if (c.kind == PointKind::minimum) m.kind = PointKind::maximum;
  return m;
}

}  // namespace

TopologyReport full_topology(const OrientedParams& p) {
  const OrientedSolution sol = solve_oriented(p);
  const Tensor3d a = from_rho_chi_K(p).to_tensor();
  TopologyReport r;
  r.params = p;
  r.continuum = sol.continuum;
  for (const Eigenpair& e : sol.pairs) {
    const CriticalPoint c = classify(a, e, winding_radius(e.x, sol.pairs));
    r.points.push_back(c);
    r.points.push_back(antipode(c));
  }
  tally(r);
  return r;
}

OracleResult oracle_critical_points(const OctupolarTensord& t, int samples) {
  if (samples < 1000) throw std::invalid_argument("oracle needs at least 1000 samples");
  const Tensor3d a = t.to_tensor();
  const double scale = std::max(a.norm(), 1e-300);
  const std::vector<Vector3d> seeds = fibonacci_sphere(samples);
  constexpr int kAscentStride = 16;

  // Up to three candidates per seed: Newton from the seed, and for every
  // kAscentStride-th seed also an ascent and a descent run.
  std::vector<std::optional<PolishResult>> found(3 * seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    auto keep = [&](std::size_t slot, const PolishResult& pr) {
      if (pr.residual <= 1e-9 * scale) found[slot] = pr;
    };
    keep(3 * i, newton_polish(a, seeds[i]));
    if (i % kAscentStride == 0) {
      keep(3 * i + 1, newton_polish(a, power_ascent(a, seeds[i], +1, 300)));
      keep(3 * i + 2, newton_polish(a, power_ascent(a, seeds[i], -1, 300)));
    }
  });

  OracleResult out;
  std::vector<PolishResult> distinct;
  for (const auto& f : found) {
    if (!f) continue;
    if (distinct.size() > 64) break;  // a ring; no point listing it further
    bool dup = false;
    for (const PolishResult& d : distinct)
      if ((d.x - f->x).norm() <= 1e-6) dup = true;
    if (!dup) distinct.push_back(*f);
  }
  out.continuum = distinct.size() > 14;
  std::vector<Eigenpair> pairs;
  for (const PolishResult& d : distinct) {
    Eigenpair e;
    e.x = d.x;
    e.lambda = d.lambda;
    pairs.push_back(e);
  }
  for (const Eigenpair& e : pairs) out.points.push_back(classify(a, e, winding_radius(e.x, pairs)));
  std::sort(out.points.begin(), out.points.end(), [](const CriticalPoint& l, const CriticalPoint& r) {
    if (l.lambda != r.lambda) return l.lambda > r.lambda;
    return std::lexicographical_compare(l.x.data(), l.x.data() + 3, r.x.data(), r.x.data() + 3);
  });
  return out;
}

}  // namespace octo
