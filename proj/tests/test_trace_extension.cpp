#include "doctest.h"
#include "support.hpp"

#include "octupolar/potential.hpp"
#include "octupolar/trace_extension.hpp"

using namespace octo;
using namespace testing_support;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

// Hand-written gradient of A1 x1 x3^2 + A2 x2 x1^2 + A3 x3 x2^2.
Eigen::Vector3d trace_grad(const TraceParams& p, const Eigen::Vector3d& x) {
  return {p.a1 * x[2] * x[2] + 2 * p.a2 * x[0] * x[1], p.a2 * x[0] * x[0] + 2 * p.a3 * x[1] * x[2],
          2 * p.a1 * x[0] * x[2] + p.a3 * x[1] * x[1]};
}

double tangential(const Eigen::Vector3d& g, const Eigen::Vector3d& x) { return (g - g.dot(x) * x).norm(); }

// Chart Hessian by central differences of a chart function.
template <typename F> Eigen::Matrix2d fd_hessian(F f, double x1, double x2, double h = 1e-4) {
  Eigen::Matrix2d m;
  m(0, 0) = (f(x1 + h, x2) - 2 * f(x1, x2) + f(x1 - h, x2)) / (h * h);
  m(1, 1) = (f(x1, x2 + h) - 2 * f(x1, x2) + f(x1, x2 - h)) / (h * h);
  m(0, 1) = m(1, 0) = (f(x1 + h, x2 + h) - f(x1 + h, x2 - h) - f(x1 - h, x2 + h) + f(x1 - h, x2 - h)) / (4 * h * h);
  return m;
}

// Kind from the eigenvalue signs of a nondegenerate chart Hessian.
PointKind kind_of(const Eigen::Matrix2d& h) {
  const Eigen::Vector2d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvalues();
  if (e[0] > 0) return PointKind::minimum;
  if (e[1] < 0) return PointKind::maximum;
  return PointKind::saddle;
}

}  // namespace

TEST_SUITE("trace_extension") {

TEST_CASE("trace tensor and potential") {
  Rng r(91);
  for (int n = 0; n < 50; ++n) {
    const TraceParams p{uniform(r, -1, 1), uniform(r, -1, 1), uniform(r, -1, 1)};
    const Eigen::Vector3d x = random_unit(r);
    const double direct = p.a1 * x[0] * x[2] * x[2] + p.a2 * x[1] * x[0] * x[0] + p.a3 * x[2] * x[1] * x[1];
    CHECK(trace_potential(p, x) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(eval_potential(trace_tensor(p), x) == doctest::Approx(direct).epsilon(1e-13));
    const SymTensor3<double> sym = SymTensor3<double>::from_tensor(trace_tensor(p));
    CHECK((3 * sym.gamma - Eigen::Vector3d(p.a1, p.a2, p.a3)).norm() < 1e-15);
    CHECK((sym.trace_coefficients() - Eigen::Vector3d(p.a1, p.a2, p.a3)).norm() < 1e-15);
  }
}

TEST_CASE("flip and cyclic covariance") {
  Rng r(92);
  for (int n = 0; n < 100; ++n) {
    const TraceParams p{uniform(r, -1, 1), uniform(r, -1, 1), uniform(r, -1, 1)};
    const Eigen::Vector3d x = random_unit(r);
    const TraceParams neg{-p.a1, -p.a2, -p.a3};
    CHECK(trace_potential(p, Eigen::Vector3d(-x)) == doctest::Approx(-trace_potential(p, x)));
    CHECK(trace_potential(neg, x) == doctest::Approx(-trace_potential(p, x)));
    // shift every index by one in both x and A
    const Eigen::Vector3d xs(x[2], x[0], x[1]);
    const TraceParams ps{p.a3, p.a1, p.a2};
    CHECK(trace_potential(ps, xs) == doctest::Approx(trace_potential(p, x)).epsilon(1e-14));
  }
}

TEST_CASE("chart derivatives match finite differences") {
  Rng r(93);
  for (int n = 0; n < 50; ++n) {
    const TraceParams p = TraceParams::from_mu(uniform(r, -3, 3), uniform(r, 0.5, 2));
    const double x1 = uniform(r, -0.6, 0.6), x2 = uniform(r, -0.6, 0.6);
    auto f = [&](double a, double b) { return trace_chart_value(p, a, b); };
    const double h = 1e-6;
    const Eigen::Vector2d g = trace_chart_gradient(p, x1, x2);
    CHECK(g[0] == doctest::Approx((f(x1 + h, x2) - f(x1 - h, x2)) / (2 * h)).epsilon(1e-7));
    CHECK(g[1] == doctest::Approx((f(x1, x2 + h) - f(x1, x2 - h)) / (2 * h)).epsilon(1e-7));
    const Eigen::Matrix2d H = trace_chart_hessian(p, x1, x2);
    CHECK((H - fd_hessian(f, x1, x2)).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("critical points p1..p5") {
  SUBCASE("mu = 1") {
    const TraceReport rep = trace_critical_points(TraceParams::from_mu(1));
    const auto* p2 = rep.find("p2");
    const auto* p3 = rep.find("p3");
    REQUIRE(p2);
    REQUIRE(p3);
    CHECK(p2->x1 == 0.0);
    CHECK(p2->x2 == doctest::Approx(-std::sqrt(2.0 / 3)).epsilon(1e-15));
    CHECK(p3->x2 == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-15));
    CHECK(rep.points.size() == 5);
  }
  SUBCASE("every listed point is critical and p4, p5 sit on the ellipse") {
    for (double mu : {-1.4, -1.0, -0.3, 0.2, 0.9, 1.41, 2.0, -3.0}) {
      for (double a2 : {1.0, -0.7}) {
        const TraceParams p = TraceParams::from_mu(mu, a2);
        const TraceReport rep = trace_critical_points(p);
        for (const auto& q : rep.points) {
          CHECK(tangential(trace_grad(p, q.x()), q.x()) < 1e-13);
          CHECK(q.value == doctest::Approx(trace_potential(p, q.x())).epsilon(1e-13));
          CHECK(q.x()[2] > 0);  // no critical point on the equator for mu != 0
          if (q.label == "p4" || q.label == "p5")
            CHECK(0.75 * q.x1 * q.x1 + 1.5 * q.x2 * q.x2 == doctest::Approx(1.0).epsilon(1e-14));
        }
        const bool has45 = rep.find("p4") != nullptr;
        CHECK(has45 == (std::abs(mu) < kSqrt2));
        if (has45) CHECK(rep.find("p4")->x2 * mu > 0);  // half-ellipse on the side of mu
        CHECK(rep.index_sum() == 2);
      }
    }
  }
  SUBCASE("coalescence at |mu| = sqrt 2") {
    const TraceReport up = trace_critical_points(TraceParams::from_mu(kSqrt2));
    CHECK(up.find("p4") == nullptr);
    CHECK(up.find("p3")->multiplicity == 2);
    CHECK(up.index_sum() == 2);
    const TraceReport down = trace_critical_points(TraceParams::from_mu(-kSqrt2));
    CHECK(down.find("p2")->multiplicity == 2);
    // the closed-form position of p4 at xi(+-sqrt 2) is the host
    CHECK(xi_of_mu(kSqrt2) == doctest::Approx(kPi / 2).epsilon(1e-15));
    const double xi = xi_of_mu(-kSqrt2);
    CHECK(std::abs(2 / kSqrt3 * std::cos(xi)) < 1e-9);
    CHECK(std::sqrt(2.0 / 3) * std::sin(xi) == doctest::Approx(-std::sqrt(2.0 / 3)).epsilon(1e-12));
    // approaching from inside the window, p4 closes in on p3
    const double d = std::hypot(trace_critical_points(TraceParams::from_mu(kSqrt2 - 1e-8)).find("p4")->x1,
                                trace_critical_points(TraceParams::from_mu(kSqrt2 - 1e-8)).find("p4")->x2 - std::sqrt(2.0 / 3));
    CHECK(d < 1e-3);
  }
  SUBCASE("mu = 0") {
    const TraceReport rep = trace_critical_points(TraceParams::from_mu(0));
    CHECK(rep.meridian_continuum);
    for (const char* l : {"p1", "p2", "p3"}) CHECK(rep.find(l)->on_continuum);
    // the isolated points are the equatorial maxima
    const auto* p4 = rep.find("p4");
    REQUIRE(p4);
    CHECK(p4->kind == PointKind::maximum);
    CHECK(p4->value == doctest::Approx(2 / (3 * kSqrt3)).epsilon(1e-14));
  }
  SUBCASE("a2 = 0") {
    const TraceReport rep = trace_critical_points({0, 0, 1});
    CHECK(rep.meridian_continuum);
    CHECK(rep.equator_saddles);
    for (const char* l : {"p2", "p3"}) {
      const auto* q = rep.find(l);
      REQUIRE(q);
      CHECK_FALSE(q->on_continuum);
      CHECK(q->kind == PointKind::maximum);
      CHECK(std::abs(q->x2) == doctest::Approx(std::sqrt(2.0 / 3)));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(trace_critical_points({0.5, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(trace_critical_points({0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(xi_of_mu(0), std::domain_error);
    CHECK_THROWS_AS(xi_of_mu(1.5), std::domain_error);
  }
}

TEST_CASE("critical values") {
  auto v = trace_critical_values(TraceParams::from_mu(1));
  CHECK(v["p1"] == 0.0);
  CHECK(v["p2"] == doctest::Approx(2 / (3 * kSqrt3)).epsilon(1e-15));
  CHECK(v["p3"] == doctest::Approx(2 / (3 * kSqrt3)).epsilon(1e-15));
  CHECK(v["p4"] == doctest::Approx(4.0 / 9).epsilon(1e-15));
  CHECK(v["p5"] == doctest::Approx(4.0 / 9).epsilon(1e-15));
  CHECK(trace_critical_values(TraceParams::from_mu(0))["p1"] == 0.0);
  // closed forms agree with the potential at the located points, any a2
  for (double mu : {-1.3, -0.5, 0.5, 1.3})
    for (double a2 : {1.0, 2.5, -1.0}) {
      const TraceParams p = TraceParams::from_mu(mu, a2);
      const auto vals = trace_critical_values(p);
      for (const auto& q : trace_critical_points(p).points)
        CHECK(vals.at(q.label) == doctest::Approx(trace_potential(p, q.x())).epsilon(1e-12));
    }
}

TEST_CASE("classification matches the index table") {
  // index of p2..p5 on mu < -sqrt2, (-sqrt2, 0), (0, sqrt2), > sqrt2
  struct Row {
    double mu;
    int p2, p3, p45;
  };
  for (const Row row : {Row{-2, 1, 1, 0}, Row{-1, -1, 1, 1}, Row{-0.5, -1, 1, 1}, Row{0.5, 1, -1, 1}, Row{1, 1, -1, 1},
                        Row{2, 1, 1, 0}}) {
    const TraceParams p = TraceParams::from_mu(row.mu);
    const auto cls = trace_classify(p);
    CAPTURE(row.mu);
    CHECK(cls.at("p2").second == row.p2);
    CHECK(cls.at("p3").second == row.p3);
    if (row.p45) {
      CHECK(cls.at("p4").second == 1);
      CHECK(cls.at("p5").second == 1);
      CHECK(cls.at("p4").first == (row.mu > 0 ? PointKind::maximum : PointKind::minimum));
    } else {
      CHECK(cls.count("p4") == 0);
    }
    // p1 carries whatever Poincare-Hopf leaves over
    CHECK(cls.at("p1").first == PointKind::degenerate_saddle);
    CHECK(cls.at("p1").second == -1);
    // kinds of the nondegenerate points from a finite-difference chart Hessian
    const TraceReport rep = trace_critical_points(p);
    for (const auto& q : rep.points) {
      if (q.label == "p1") continue;
      auto f = [&](double a, double b) { return trace_chart_value(p, a, b); };
      CHECK(q.kind == kind_of(fd_hessian(f, q.x1, q.x2)));
    }
  }
  // p2 is a maximum for mu > 0 and a minimum below -sqrt 2, as its chart
  // eigenvalues -4 sqrt3 mu and -sqrt(2/3)(2 + sqrt2 mu) say
  CHECK(trace_classify(TraceParams::from_mu(1)).at("p2").first == PointKind::maximum);
  CHECK(trace_classify(TraceParams::from_mu(-2)).at("p2").first == PointKind::minimum);
  CHECK(trace_classify(TraceParams::from_mu(-1)).at("p2").first == PointKind::saddle);
  CHECK(trace_classify(TraceParams::from_mu(1)).at("p3").first == PointKind::saddle);
  CHECK(trace_classify(TraceParams::from_mu(3)).at("p3").first == PointKind::maximum);
  CHECK(trace_classify(TraceParams::from_mu(-1)).at("p3").first == PointKind::minimum);
  CHECK(trace_classify(TraceParams::from_mu(-1)).at("p4").first == PointKind::minimum);
}

TEST_CASE("chart eigenvalues at p1..p3") {
  for (double mu : {-2.5, -1.0, -0.3, 0.4, 1.2, 3.0}) {
    const TraceParams p = TraceParams::from_mu(mu);
    const TraceReport rep = trace_critical_points(p);
    auto sorted = [](double a, double b) { return Eigen::Vector2d(std::min(a, b), std::max(a, b)); };
    const Eigen::Vector2d e1 = sorted(0, 2 * mu);
    const Eigen::Vector2d e2 = sorted(-4 * kSqrt3 * mu, -std::sqrt(2.0 / 3) * (2 + kSqrt2 * mu));
    const Eigen::Vector2d e3 = sorted(-4 * kSqrt3 * mu, std::sqrt(2.0 / 3) * (2 - kSqrt2 * mu));
    CAPTURE(mu);
    CHECK((rep.find("p1")->hessian_eigs - e1).norm() < 1e-12);
    CHECK((rep.find("p2")->hessian_eigs - e2).norm() < 1e-12);
    CHECK((rep.find("p3")->hessian_eigs - e3).norm() < 1e-12);
  }
}

TEST_CASE("full symmetric potential") {
  Rng r(94);
  for (int n = 0; n < 50; ++n) {
    SymFullParams s;
    s.alpha0 = uniform(r, -1, 1);
    for (int i = 0; i < 3; ++i) {
      s.alpha[i] = uniform(r, -1, 1);
      s.beta[i] = uniform(r, -1, 1);
      s.A[i] = uniform(r, -1, 1);
    }
    const Eigen::Vector3d x = random_unit(r);
    CHECK(s.eval(x) == doctest::Approx(eval_potential(s.to_tensor(), x)).epsilon(1e-12));
    CHECK((s.to_sym().trace_coefficients() - s.A).norm() < 1e-14);
    // with A = 0 the traceless part is everything
    SymFullParams z = s;
    z.A.setZero();
    CHECK(max_abs_diff(z.to_tensor(), z.traceless_part().to_tensor()) < 1e-15);
  }
}

TEST_CASE("tetrahedral constraints") {
  const auto verts = tetrahedral_vertices();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(verts[i].dot(verts[j]) == doctest::Approx(-1.0 / 3).epsilon(1e-14));

  SUBCASE("four vertices stay critical in every mode") {
    Rng r(95);
    for (auto mode : {TetraMode::perturbative, TetraMode::oriented, TetraMode::nonperturbative})
      for (bool eq : {false, true})
        for (int n = 0; n < 10; ++n) {
          TetraFree f;
          f.alpha1 = uniform(r, -1, 1);
          f.alpha2 = uniform(r, -1, 1);
          f.alpha3 = uniform(r, -1, 1);
          f.beta3 = uniform(r, -1, 1);
          f.beta1 = uniform(r, -1, 1);
          f.epsilon = 0.1;
          f.equal_levels = eq;
          const TetraResult t = tetra_constraints(f, mode);
          const Tensor3d a = t.coeffs.to_tensor();
          for (const auto& v : verts) CHECK(tangential(gradient(a, v), v) < 1e-12);
          if (eq) {
            CHECK(t.values[2] == doctest::Approx(t.values[1]).epsilon(1e-12));
            CHECK(t.values[3] == doctest::Approx(t.values[1]).epsilon(1e-12));
          }
          if (mode == TetraMode::oriented) {
            CHECK(std::abs(t.coeffs.alpha[0]) < 1e-15);
            CHECK(std::abs(t.coeffs.beta[0]) < 1e-15);
          }
        }
  }
  SUBCASE("perturbative levels") {
    for (double da2 : {1.0, -0.4})
      for (double da3 : {0.0, 0.7}) {
        TetraFree f;
        f.alpha2 = da2;
        f.alpha3 = da3;
        f.alpha1 = 0.5;  // dropped: equal levels need the oriented deltas
        f.epsilon = 0.01;
        f.equal_levels = true;
        const TetraResult t = tetra_constraints(f, TetraMode::perturbative);
        CHECK(t.values[0] == doctest::Approx(1 + f.epsilon * da3).epsilon(1e-14));
        for (int i = 1; i < 4; ++i)
          CHECK(t.values[i] == doctest::Approx(1 + f.epsilon * (8 * kSqrt2 / 9 * da2 + da3 / 9)).epsilon(1e-14));
      }
  }
  SUBCASE("A3 vanishes and the potential is tetrahedral") {
    TetraFree f;
    f.alpha2 = 1;
    f.alpha3 = kSqrt2;
    f.equal_levels = true;
    const TetraResult t = tetra_constraints(f, TetraMode::nonperturbative);
    CHECK(t.coeffs.A.norm() < 1e-14);
    Rng r(96);
    const SymFullParams tet = tetrahedral_params();
    for (int n = 0; n < 20; ++n) {
      const Eigen::Vector3d x = random_unit(r);
      CHECK(t.coeffs.eval(x) == doctest::Approx(kSqrt2 * tet.eval(x)).epsilon(1e-13));
    }
  }
  SUBCASE("vertex values") {
    TetraFree f;
    f.alpha2 = 1;
    f.alpha3 = 0;
    f.equal_levels = true;
    const TetraResult t = tetra_constraints(f, TetraMode::nonperturbative);
    CHECK(std::abs(t.values[0]) < 1e-15);
    for (int i = 1; i < 4; ++i) CHECK(t.values[i] == doctest::Approx(8 * kSqrt2 / 9).epsilon(1e-14));
  }
  SUBCASE("Hessian closed forms and the maxima condition") {
    Rng r(97);
    for (int n = 0; n < 30; ++n) {
      TetraFree f;
      f.alpha2 = uniform(r, -1, 1);
      f.alpha3 = uniform(r, -1, 1);
      f.equal_levels = true;
      const TetraResult t = tetra_constraints(f, TetraMode::nonperturbative);
      REQUIRE(t.hessian.has_value());
      auto north = [&](double a, double b) { return t.coeffs.eval(Eigen::Vector3d(a, b, std::sqrt(1 - a * a - b * b))); };
      auto south = [&](double a, double b) { return t.coeffs.eval(Eigen::Vector3d(a, b, -std::sqrt(1 - a * a - b * b))); };
      const Eigen::Vector2d e1 = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(fd_hessian(north, 0, 0)).eigenvalues();
      CHECK(e1[0] == doctest::Approx(t.hessian->p1).epsilon(1e-5).scale(1));
      CHECK(e1[1] == doctest::Approx(t.hessian->p1).epsilon(1e-5).scale(1));
      for (int i = 1; i < 4; ++i) {
        const Eigen::Vector2d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(fd_hessian(south, verts[i][0], verts[i][1])).eigenvalues();
        CHECK(e[0] == doctest::Approx(t.hessian->p234[0]).epsilon(1e-5).scale(1));
        CHECK(e[1] == doctest::Approx(t.hessian->p234[1]).epsilon(1e-5).scale(1));
      }
      const bool cond = f.alpha2 > 0 && f.alpha3 > -f.alpha2 / kSqrt2;
      CHECK(t.all_maxima == cond);
    }
  }
}

TEST_CASE("G-invariant slice") {
  Rng r(98);
  const auto group = pole_stabilizer();
  for (const auto& m : group) {
    CHECK((m * m.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-14);
    CHECK((m * Eigen::Vector3d::UnitZ() - Eigen::Vector3d::UnitZ()).norm() < 1e-15);
  }
  for (int n = 0; n < 5; ++n) {
    const double a2 = uniform(r, -1, 1), a3 = uniform(r, -1, 1);
    SymFullParams s;
    s.alpha0 = uniform(r, -1, 1);
    for (int i = 0; i < 3; ++i) s.alpha[i] = uniform(r, -1, 1), s.beta[i] = uniform(r, -1, 1), s.A[i] = uniform(r, -1, 1);
    const SymFullParams g = g_invariant_projection(s);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Vector3d x = random_unit(r);
      for (const auto& m : group) {
        CHECK(psi31_potential(a2, a3, Eigen::Vector3d(m * x)) == doctest::Approx(psi31_potential(a2, a3, x)).epsilon(1e-12));
        CHECK(g.eval(Eigen::Vector3d(m * x)) == doctest::Approx(g.eval(x)).epsilon(1e-12));
      }
    }
  }
}

}  // TEST_SUITE
