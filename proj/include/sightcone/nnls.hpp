#ifndef SIGHTCONE_NNLS_HPP
#define SIGHTCONE_NNLS_HPP

#include "sightcone/geom.hpp"

#include <vector>

namespace sightcone {

struct NnlsResult {
    Vec x;            // coefficients, all >= 0
    double residual;  // |A x - b|
};

/// Lawson-Hanson active-set solver for min |A x - b| subject to x >= 0.
NnlsResult nnls(const Mat& A, const Vec& b, int max_iter = 0);

/// Feasibility of target = sum lambda_i * gens_i with lambda >= 0,
/// decided by the NNLS residual against tol.
bool in_conical_hull(const Vec& target, const std::vector<Vec>& gens,
                     double tol);

/// Convex-hull membership via the lift (p, 1): coefficients nonnegative and
/// summing to one.
bool in_convex_hull(const Vec& target, const std::vector<Vec>& points,
                    double tol);

} // namespace sightcone

#endif
