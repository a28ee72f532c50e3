#include "octupolar/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace octo {

namespace {

constexpr double kCluster = 1e-6;
constexpr double kImag = 1e-8;

std::complex<double> eval_complex(const Poly& p, std::complex<double> z) {
  std::complex<double> v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
  return v;
}

std::complex<double> newton_polish(const Poly& p, const Poly& dp, std::complex<double> z) {
  double best = std::abs(eval_complex(p, z));
  for (int it = 0; it < 20 && best > 0; ++it) {
    const std::complex<double> d = eval_complex(dp, z);
    if (std::abs(d) == 0) break;
    const std::complex<double> zn = z - eval_complex(p, z) / d;
    const double v = std::abs(eval_complex(p, zn));
    if (!(v < best)) break;
    z = zn;
    best = v;
  }
  return z;
}

}  // namespace

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_scale(const Poly& a, double s) {
  Poly r(a);
  for (double& c : r) c *= s;
  return r;
}

Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {0.0};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<double>(i);
  return r;
}

double poly_eval(const Poly& a, double s) {
  double v = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * s + *it;
  return v;
}

double poly_max_abs(const Poly& a) {
  double m = 0;
  for (double c : a) m = std::max(m, std::abs(c));
  return m;
}

Poly poly_deflate(const Poly& a, double r) {
  if (a.size() <= 1) return {0.0};
  Poly q(a.size() - 1);
  if (std::abs(r) > 1) {
    // from the constant term up; stable for large roots
    q[0] = -a[0] / r;
    for (std::size_t i = 1; i < q.size(); ++i) q[i] = (q[i - 1] - a[i]) / r;
    return q;
  }
  double carry = 0;
  for (std::size_t i = a.size() - 1; i >= 1; --i) {
    carry = a[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

Poly poly_trim(const Poly& a, double rel_tol) {
  Poly r(a);
  const double m = poly_max_abs(a);
  while (r.size() > 1 && std::abs(r.back()) <= rel_tol * m) r.pop_back();
  return r;
}

std::vector<RealRoot> real_roots(const Poly& p, double snap) {
  const double scale = poly_max_abs(p);
  if (!(scale > 0) || !std::isfinite(scale)) throw std::invalid_argument("real_roots: zero or non-finite polynomial");

  Poly q = poly_scale(p, 1.0 / scale);
  for (double& c : q)
    if (std::abs(c) <= snap) c = 0;
  while (q.size() > 1 && q.back() == 0) q.pop_back();

  int zeros = 0;
  while (zeros + 1 < static_cast<int>(q.size()) && q[zeros] == 0) ++zeros;
  q.erase(q.begin(), q.begin() + zeros);

  const int deg = static_cast<int>(q.size()) - 1;
  std::vector<std::complex<double>> z;
  if (deg == 1) {
    z.emplace_back(-q[0] / q[1], 0.0);
  } else if (deg >= 2) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -q[i] / q[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("real_roots: companion eigensolver failed");
    const Poly dq = poly_derivative(q);
    for (int i = 0; i < deg; ++i) z.push_back(newton_polish(q, dq, es.eigenvalues()[i]));
  }
  for (int i = 0; i < zeros; ++i) z.emplace_back(0.0, 0.0);

  // Single-link clustering of nearby roots; cluster size is the multiplicity.
  const std::size_t n = z.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= kCluster * std::max(1.0, std::abs(z[i]))) parent[find(i)] = find(j);

  std::vector<RealRoot> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    std::complex<double> sum = 0;
    int m = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == i) {
        sum += z[j];
        ++m;
      }
    const std::complex<double> mean = sum / static_cast<double>(m);
    if (std::abs(mean.imag()) <= kImag * (1.0 + std::abs(mean.real()))) out.push_back({mean.real(), m});
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

QuadraticRoots quadratic_roots(double a, double b, double c) {
  QuadraticRoots r;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0) {
    r.identically_zero = true;
    return r;
  }
  a /= scale;
  b /= scale;
  c /= scale;
  constexpr double tiny = 1e-12;
  if (std::abs(a) <= tiny) {
    if (std::abs(b) > tiny) r.roots.push_back({-c / b, 1});
    return r;
  }
  const double disc = b * b - 4 * a * c;
  const double tol = tiny * (b * b + 4 * std::abs(a * c));
  if (disc < -tol) return r;
  if (std::abs(disc) <= tol) {
    r.roots.push_back({-b / (2 * a), 2});
    return r;
  }
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (b + (b >= 0 ? sq : -sq));
  double t1 = qq / a, t2 = c / qq;
  if (t1 > t2) std::swap(t1, t2);
  r.roots.push_back({t1, 1});
  r.roots.push_back({t2, 1});
  return r;
}

}  // namespace octo
