#pragma once

#include <vector>

namespace octo {

// Real polynomial, coefficients in ascending order: p(s) = sum c[i] s^i.
using Poly = std::vector<double>;

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
Poly poly_derivative(const Poly& a);
double poly_eval(const Poly& a, double s);
double poly_max_abs(const Poly& a);
// Quotient of a by (s - r); the remainder is discarded.
Poly poly_deflate(const Poly& a, double r);
// Drops leading coefficients with |c| <= rel_tol * max|c|.
Poly poly_trim(const Poly& a, double rel_tol);

struct RealRoot {
  double value;
  int multiplicity;
};

// All real roots of p with clustered multiplicities, via companion-matrix
// eigenvalues. Throws std::invalid_argument for the zero polynomial.
// Coefficients below snap * max|c| are treated as exact zeros first; this keeps
// exact multiple roots at s = 0 (cusp line) from splintering into an
// eps^(1/3)-wide complex cluster.
std::vector<RealRoot> real_roots(const Poly& p, double snap = 1e-13);

struct QuadraticRoots {
  std::vector<RealRoot> roots;
  bool identically_zero = false;  // a = b = c = 0: every t solves it
};

// Real roots of a t^2 + b t + c = 0. A vanishing leading coefficient degrades
// to the linear case; a near-zero discriminant yields one double root.
QuadraticRoots quadratic_roots(double a, double b, double c);

}  // namespace octo
