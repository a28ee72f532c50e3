#include "octupolar/c_eigen.hpp"

#include "octupolar/parallel.hpp"
#include "octupolar/potential.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace octo {

namespace {

using Vec = Eigen::Vector3d;

void check(const Tensor3d& t, int starts) {
  if (starts < 1) throw std::invalid_argument("c_eigenpairs: starts must be >= 1");
  if (!is_piezo_symmetric(t)) throw std::invalid_argument("c_eigenpairs: tensor lacks A_ijk = A_ikj symmetry");
}

Vec first_positive(const Vec& v) {
  for (int i = 0; i < 3; ++i)
    if (std::abs(v[i]) > 1e-9) return v[i] < 0 ? Vec(-v) : v;
  return v;
}

// (B_y)_im = A_imk y_k
Eigen::Matrix3d mid_contract(const Tensor3d& t, const Vec& y) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(i, j) += t(i, j, k) * y[k];
  return m;
}

std::optional<CEigenTriple> canonical(double lambda, Vec x, Vec y) {
  if (!(std::abs(lambda) > 0)) return std::nullopt;
  if (lambda < 0) lambda = -lambda, x = -x;
  return CEigenTriple{lambda, x, first_positive(y)};
}

// Gauss-Newton on the 8 x 7 system (two eigen equations, two unit constraints).
CEigenTriple newton(const Tensor3d& t, CEigenTriple c, int iters = 40) {
  for (int it = 0; it < iters; ++it) {
    const Eigen::Matrix3d Mx = contract_first(t, c.x);  // symmetric
    const Eigen::Matrix3d By = mid_contract(t, c.y);
    Eigen::Matrix<double, 8, 1> f;
    f.segment<3>(0) = contract2(t, c.y) - c.lambda * c.x;
    f.segment<3>(3) = Mx * c.y - c.lambda * c.y;
    f[6] = 0.5 * (c.x.squaredNorm() - 1);
    f[7] = 0.5 * (c.y.squaredNorm() - 1);
    if (f.lpNorm<Eigen::Infinity>() < 1e-15) break;
    Eigen::Matrix<double, 8, 7> j = Eigen::Matrix<double, 8, 7>::Zero();
    j.block<3, 3>(0, 0) = -c.lambda * Eigen::Matrix3d::Identity();
    j.block<3, 3>(0, 3) = 2 * By;
    j.block<3, 1>(0, 6) = -c.x;
    j.block<3, 3>(3, 0) = By.transpose();  // d(x_i A_ijk y_j)/dx_i
    j.block<3, 3>(3, 3) = Mx - c.lambda * Eigen::Matrix3d::Identity();
    j.block<3, 1>(3, 6) = -c.y;
    j.block<1, 3>(6, 0) = c.x.transpose();
    j.block<1, 3>(7, 3) = c.y.transpose();
    const Eigen::Matrix<double, 7, 1> d = j.colPivHouseholderQr().solve(-f);
    if (!d.allFinite()) break;
    c.x += d.segment<3>(0);
    c.y += d.segment<3>(3);
    c.lambda += d[6];
    if (d.lpNorm<Eigen::Infinity>() < 1e-16) break;
  }
  c.x.normalize();
  c.y.normalize();
  c.lambda = curie_potential(t, c.x, c.y);
  return c;
}

CEigenTriple ascend(const Tensor3d& t, Vec y, int iters = 500) {
  Vec x = contract2(t, y);
  if (x.norm() == 0) x = Vec::UnitX();
  x.normalize();
  double last = -1e300;
  for (int it = 0; it < iters; ++it) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(contract_first(t, x));
    y = es.eigenvectors().col(2);
    Vec v = contract2(t, y);
    if (v.norm() == 0) break;
    x = v.normalized();
    const double val = curie_potential(t, x, y);
    if (std::abs(val - last) <= 1e-15 * std::max(1.0, std::abs(val))) break;
    last = val;
  }
  return {curie_potential(t, x, y), x, y};
}

bool same_class(const CEigenTriple& a, const CEigenTriple& b, double scale) {
  return std::abs(a.lambda - b.lambda) <= 1e-6 * scale && (a.x - b.x).norm() <= 1e-6 &&
         (a.y - b.y).norm() <= 1e-6;
}

}  // namespace

bool is_piezo_symmetric(const Tensor3d& t, double tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k)
        if (std::abs(t(i, j, k) - t(i, k, j)) > tol) return false;
  return true;
}

double curie_potential(const Tensor3d& t, const Vec& x, const Vec& y) {
  return x.dot(contract2(t, y));
}

double c_residual(const Tensor3d& t, const CEigenTriple& c) {
  const double r1 = (contract2(t, c.y) - c.lambda * c.x).lpNorm<Eigen::Infinity>();
  const double r2 = (contract_first(t, c.x) * c.y - c.lambda * c.y).lpNorm<Eigen::Infinity>();
  return std::max(r1, r2);
}

std::vector<CEigenTriple> c_eigenpairs(const Tensor3d& t, int starts) {
  check(t, starts);
  const double scale = std::max(t.norm(), 1e-300);
  const auto seeds = fibonacci_sphere(starts);
  std::vector<std::optional<CEigenTriple>> found(2 * seeds.size());
  parallel_for(seeds.size(), [&](std::size_t s) {
    auto keep = [&](const CEigenTriple& c, std::size_t slot) {
      if (c_residual(t, c) <= 1e-10 * scale && std::abs(c.lambda) > 1e-10 * scale)
        found[slot] = canonical(c.lambda, c.x, c.y);
    };
    keep(newton(t, ascend(t, seeds[s])), 2 * s);
    // plain Newton from the seed pair also reaches saddle-type triples
    Vec x = contract2(t, seeds[s]);
    if (x.norm() > 0) {
      x.normalize();
      keep(newton(t, {curie_potential(t, x, seeds[s]), x, seeds[s]}), 2 * s + 1);
    }
  });

  std::vector<CEigenTriple> out;
  for (const auto& f : found) {
    if (!f) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const CEigenTriple& o) { return same_class(o, *f, scale); });
    if (!dup) out.push_back(*f);
  }
  std::sort(out.begin(), out.end(), [](const CEigenTriple& a, const CEigenTriple& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return std::lexicographical_compare(a.x.data(), a.x.data() + 3, b.x.data(), b.x.data() + 3);
  });
  return out;
}

Tensor3d rank_one(const CEigenTriple& c) { return c.lambda * outer<double>(c.x, c.y, c.y); }

RankOneTerm best_rank_one(const Tensor3d& t, int starts) {
  const auto all = c_eigenpairs(t, starts);
  if (all.empty()) return {{0, Vec::UnitX(), Vec::UnitX()}, t.norm()};
  // ||A - l x y y||^2 = ||A||^2 - l^2 at a C-eigenpair, so the top one wins
  return {all.front(), (t - rank_one(all.front())).norm()};
}

std::vector<RankOneTerm> rank_one_deflation(const Tensor3d& t, int steps, int starts) {
  check(t, starts);
  std::vector<RankOneTerm> terms;
  Tensor3d rest = t;
  const double floor = 1e-12 * t.norm();
  for (int s = 0; s < steps && rest.norm() > floor; ++s) {
    RankOneTerm term = best_rank_one(rest, starts);
    if (term.triple.lambda == 0) break;
    rest = rest - rank_one(term.triple);
    term.residual_norm = rest.norm();
    terms.push_back(term);
  }
  return terms;
}

}  // namespace octo
