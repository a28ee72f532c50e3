#pragma once

#include "octupolar/tensor.hpp"

#include <vector>

namespace octo {

// A y y = lambda x,  x.A.y = lambda y, both unit. The variants (lambda, x, -y),
// (-lambda, -x, +-y) are implied; the stored one has lambda > 0 and y with its
// first significant component positive.
struct CEigenTriple {
  double lambda = 0;
  Eigen::Vector3d x, y;
};

// Piezoelectric symmetry A_ijk = A_ikj.
bool is_piezo_symmetric(const Tensor3d& t, double tol = 1e-10);

double curie_potential(const Tensor3d& t, const Eigen::Vector3d& x, const Eigen::Vector3d& y);
// max of the two equation residuals, infinity norm
double c_residual(const Tensor3d& t, const CEigenTriple& c);

// Multi-start alternating maximization from quasi-uniform y seeds, each result
// refined by Newton on the full system; a Newton run from every seed picks up
// saddle-type triples as well. Sorted by lambda descending.
// Throws std::invalid_argument on a symmetry violation or starts < 1.
std::vector<CEigenTriple> c_eigenpairs(const Tensor3d& t, int starts = 64);

struct RankOneTerm {
  CEigenTriple triple;
  double residual_norm = 0;  // Frobenius norm after subtracting this term
};

Tensor3d rank_one(const CEigenTriple& c);
RankOneTerm best_rank_one(const Tensor3d& t, int starts = 64);
// Incremental scheme: subtract the best rank-one term and repeat. Stops early
// once the remainder is below 1e-12 of the input norm.
std::vector<RankOneTerm> rank_one_deflation(const Tensor3d& t, int steps, int starts = 64);

}  // namespace octo
