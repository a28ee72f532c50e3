#include "octupolar/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octo {

using Eigen::Vector3d;

namespace {

struct Trig {
  double c, s;
};

// cos/sin with the sector's special angles landing on exact values.
Trig trig(double chi) {
  double c = std::cos(chi), s = std::sin(chi);
  if (std::abs(c) < 1e-15) c = 0;
  if (std::abs(std::abs(s) - 1) < 1e-15) s = s > 0 ? 1 : -1;
  return {c, s};
}

// Reduced equilibrium equations in s = x1/x2, t = x3/x2:
//   D(s) t = N(s),  P2(s) t^2 + P1(s) t + P0(s) = 0.
struct Reduced {
  Poly d, n, p2, p1, p0;
};

Reduced reduced(const OrientedParams& p) {
  const auto [c, s] = trig(p.chi);
  const double r = p.rho, k = p.bigk;
  return {{-r * c, -2 * r * s, r * c},
          {0, -3 * k, 0, k},
          {r * s + 2, -r * c},
          {-k, 0, k},
          {-0.5 * (r * s + 1), r * c, 0.5 * (r * s - 1)}};
}

struct Candidate {
  Vector3d x;
  double lambda;
  std::string branch;
  int mult;
  bool verify = false;  // ill-conditioned origin: keep only if it polishes to a critical point
};

Candidate from_st(const OrientedParams& p, double s, double t, const std::string& branch, int mult) {
  const auto [c, sn] = trig(p.chi);
  const Vector3d v(s, 1, t);
  const double n = v.norm();
  const double mu = p.rho * c * s * t - p.bigk * (s * s - 1) - (p.rho * sn + 1) * t;
  return {v / n, mu / n, branch, mult};
}

}  // namespace

WalcherPoly walcher_coefficients(const OrientedParams& p) {
  const auto [c, s] = trig(p.chi);
  const double r = p.rho, k2 = p.bigk * p.bigk, r2 = r * r, c2 = c * c;
  WalcherPoly w;
  auto& S = w.s_coeffs;
  S[0] = -r2 * c2 * (1 + r * s);
  S[1] = -6 * k2 * r * c + 2 * r2 * c * (3 * r * c2 - 2 * s - 2 * r);
  S[2] = 6 * k2 * (r * s + 6) + 5 * r2 * c2 * (3 * r * s + 1) - 4 * r2 * (1 + r * s);
  S[3] = 4 * r * c * (r2 * (4 - 5 * c2) - k2);
  // The middle term carries (1 - 3 rho sin chi); with (1 - rho sin chi) the
  // sextic is not the resultant and W(s_+) = 0 fails at rho = 2.
  S[4] = 4 * k2 * (r * s - 6) + 5 * r2 * c2 * (1 - 3 * r * s) + 4 * r2 * (r * s - 1);
  S[5] = 2 * r * c * (k2 + r * (3 * r * c2 + 2 * s - 2 * r));
  S[6] = 2 * k2 * (2 - r * s) + r2 * c2 * (r * s - 1);
  const double inf = std::numeric_limits<double>::infinity();
  if (c == 0) {
    w.spurious = {s < 0 ? 0.0 : inf, s < 0 ? -inf : 0.0};
  } else {
    const double sg = c > 0 ? 1 : -1;
    w.spurious = {(s + sg) / c, (s - sg) / c};
  }
  return w;
}

Poly walcher_resultant(const OrientedParams& p) {
  const Reduced q = reduced(p);
  Poly w = poly_mul(q.p2, poly_mul(q.n, q.n));
  w = poly_add(w, poly_mul(q.p1, poly_mul(q.n, q.d)));
  w = poly_add(w, poly_mul(q.p0, poly_mul(q.d, q.d)));
  w.resize(7);  // the s^7 terms cancel identically
  return w;
}

long long count_bound(int r, int n) {
  if (r <= 2) throw std::invalid_argument("count_bound needs r > 2");
  if (n < 1) throw std::invalid_argument("count_bound needs n >= 1");
  long long pw = 1;
  for (int i = 0; i < n; ++i) pw *= (r - 1);
  return (pw - 1) / (r - 2);
}

void canonicalize(Vector3d& x, double& lambda) {
  constexpr double e = 1e-12;
  const bool flip = x[2] < -e || (std::abs(x[2]) <= e && (x[0] < -e || (std::abs(x[0]) <= e && x[1] < 0)));
  if (flip) {
    x = -x;
    lambda = -lambda;
  }
}

OrientedSolution solve_oriented(const OrientedParams& p) {
  if (!std::isfinite(p.rho) || !std::isfinite(p.chi) || !std::isfinite(p.bigk))
    throw std::invalid_argument("oriented parameters must be finite");
  if (p.rho < -1e-12 || p.rho > 2 + 1e-12) throw std::invalid_argument("rho must lie in [0, 2]");

  OrientedSolution sol;
  sol.params = p;
  const auto [c, sn] = trig(p.chi);
  const double rho = p.rho, k = p.bigk;
  const bool rho0 = std::abs(rho) <= 1e-14, k0 = std::abs(k) <= 1e-14;
  const Reduced q = reduced(p);
  std::vector<Candidate> cand;

  cand.push_back({Vector3d::UnitZ(), 1.0, "pole", 1});

  auto add_quadratic_in_t = [&](double s, const std::string& branch) {
    const QuadraticRoots qr =
        quadratic_roots(poly_eval(q.p2, s), poly_eval(q.p1, s), poly_eval(q.p0, s));
    if (qr.identically_zero) sol.continuum = true;
    for (const RealRoot& t : qr.roots) cand.push_back(from_st(p, s, t.value, branch, t.multiplicity));
  };

  // x2 = 0, x1 != 0: lambda = (rho sin chi - 1) x3, (2 - rho sin chi) x3^2 = (1 - rho sin chi) x1^2 / 2,
  // and rho cos chi x3 = K x1.
  bool background = false;
  if (rho0 && k0) {
    sol.continuum = true;
  } else if (k0) {
    background = rho * c == 0;
  }

  if (rho0 && k0) {
    // continuum: the rings x3^2 = 1/5 are not listed
  } else if (rho0) {
    for (double s : {0.0, std::sqrt(3.0), -std::sqrt(3.0)}) add_quadratic_in_t(s, "rho0");
  } else if (k0) {
    for (const RealRoot& s : quadratic_roots(q.p0[2], q.p0[1], q.p0[0]).roots)
      cand.push_back(from_st(p, s.value, 0.0, "k0_equator", s.multiplicity));
    for (const RealRoot& s : quadratic_roots(q.d[2], q.d[1], q.d[0]).roots) add_quadratic_in_t(s.value, "k0_line");
  } else {
    // Common roots of D and N admit a whole t-line; solve the quadratic there
    // and remove the shared factor before forming the resultant.
    Poly nt = q.n, dt = q.d;
    int deflated = 0;
    for (const RealRoot& r : quadratic_roots(q.d[2], q.d[1], q.d[0]).roots) {
      const double scale = std::abs(k) * std::max(1.0, std::pow(std::abs(r.value), 3));
      if (std::abs(poly_eval(q.n, r.value)) > 1e-10 * scale) continue;
      add_quadratic_in_t(r.value, "common_root");
      nt = poly_deflate(nt, r.value);
      dt = poly_deflate(dt, r.value);
      ++deflated;
    }
    const Poly a = poly_mul(q.p2, poly_mul(nt, nt));
    const Poly b = poly_mul(q.p1, poly_mul(nt, dt));
    const Poly cc = poly_mul(q.p0, poly_mul(dt, dt));
    Poly w = poly_add(poly_add(a, b), cc);
    const double terms = std::max({poly_max_abs(a), poly_max_abs(b), poly_max_abs(cc)});
    // The top power of P2 N^2 always cancels against P1 N D.
    w.resize(7 - 2 * deflated);
    if (poly_max_abs(w) <= 1e-10 * terms) {
      sol.continuum = true;
    } else {
      const Poly wt = poly_trim(w, 1e-10);
      // A vanishing leading coefficient sends one root to infinity, i.e. onto x2 = 0.
      background = wt.size() < w.size();
      const double wmax = poly_max_abs(wt);
      std::vector<double> poles;
      if (dt.size() == 3) {
        for (const RealRoot& r : quadratic_roots(dt[2], dt[1], dt[0]).roots) poles.push_back(r.value);
      } else if (dt.size() == 2 && dt[1] != 0) {
        poles.push_back(-dt[0] / dt[1]);
      }
      // W = P2 N^2 at a zero of D, so a genuine spurious root needs P2 = 0 there;
      // a small N instead means a near-common root with real solutions next to it.
      std::vector<double> spurious;
      const double p2max = poly_max_abs(q.p2);
      for (double pl : poles)
        if (std::abs(poly_eval(wt, pl)) <= 1e-10 * wmax &&
            std::abs(poly_eval(q.p2, pl)) <= 1e-8 * p2max * (1 + std::abs(pl)))
          spurious.push_back(pl);
      if (wt.size() > 1) {
        for (const RealRoot& r : real_roots(wt)) {
          bool drop = false;
          for (double sp : spurious)
            if (std::abs(r.value - sp) <= 1e-8 * (1 + std::abs(sp))) drop = true;
          if (drop) continue;
          // Close to a zero of D the ratio N/D is unreliable (and near
          // chi = -pi/2 two roots of W straddle one); take t from the quadratic too.
          bool near_pole = false;
          for (double pl : poles)
            if (std::abs(r.value - pl) <= 1e-3 * (1 + std::abs(pl))) near_pole = true;
          const double den = poly_eval(dt, r.value);
          if (den != 0) {
            cand.push_back(from_st(p, r.value, poly_eval(nt, r.value) / den, "walcher", r.multiplicity));
            cand.back().verify = near_pole;
          }
          if (near_pole) {
            const QuadraticRoots qr =
                quadratic_roots(poly_eval(q.p2, r.value), poly_eval(q.p1, r.value), poly_eval(q.p0, r.value));
            for (const RealRoot& t : qr.roots) {
              cand.push_back(from_st(p, r.value, t.value, "walcher", t.multiplicity));
              cand.back().verify = true;
            }
          }
        }
      }
    }
  }

  if (background) {
    const double a = std::sqrt(2 * (2 - rho * sn) / (5 - 3 * rho * sn));
    const double b = std::sqrt((1 - rho * sn) / (5 - 3 * rho * sn));
    for (double sb : {1.0, -1.0}) {
      const double x1 = a, x3 = sb * b;
      const bool exact = k0 && rho * c == 0;
      const bool matches = std::abs(rho * c * x3 - k * x1) <= std::abs(rho * c * x3 + k * x1);
      if (exact || matches) cand.push_back({Vector3d(x1, 0, x3), (rho * sn - 1) * x3, "background", 1});
    }
  }

  // Polish on the raw equations and merge antipodal duplicates.
  const Tensor3d at = from_rho_chi_K(p).to_tensor();
  for (Candidate& cd : cand) {
    const double before = eigen_residual(at, cd.x, cd.lambda);
    const PolishResult pr = newton_polish(at, cd.x);
    if (pr.residual <= before && (pr.x - cd.x).norm() < 1e-3) {
      cd.x = pr.x;
      cd.lambda = pr.lambda;
    }
    canonicalize(cd.x, cd.lambda);
  }
  const double tol = 1e-12 * std::max(1.0, at.norm());
  std::erase_if(cand, [&](const Candidate& cd) { return cd.verify && eigen_residual(at, cd.x, cd.lambda) > tol; });
  for (const Candidate& cd : cand) {
    bool merged = false;
    for (Eigenpair& e : sol.pairs)
      if (std::min((e.x - cd.x).norm(), (e.x + cd.x).norm()) <= 1e-6) {
        e.multiplicity_hint = std::max(e.multiplicity_hint, cd.mult);
        merged = true;
        break;
      }
    if (!merged) sol.pairs.push_back({cd.lambda, cd.x, cd.branch, cd.mult});
  }
  std::sort(sol.pairs.begin(), sol.pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return std::lexicographical_compare(a.x.data(), a.x.data() + 3, b.x.data(), b.x.data() + 3);
  });
  return sol;
}

}  // namespace octo
