#pragma once

#include <Eigen/Dense>

#include "solidangle/lattice.hpp"

namespace solidangle {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Absolute tolerance for comparisons of angles against pi/3, pi/2, 2pi/3;
// double-precision arccos error is far below this.
inline constexpr double kAngleTol = 1e-9;

struct VertexAngles {
    double t12;
    double t13;
    double t23;
};

struct MinimaRatios {
    double k12;
    double k23;
    double k13;  // k12 * k23, computed as the product so the identity is exact
};

struct SignFlips {
    int s2 = 1;
    int s3 = 1;
};

// Minima-attaining ordered basis with signs normalized into the window
// pi/3 <= t12, t13 <= pi/2, pi/3 <= t23 <= 2pi/3, t23 minimal among the
// valid sign choices.
struct ReducedBasis {
    Eigen::Matrix3d gram;   // Gram of the normalized basis; diagonal = minima
    VertexAngles angles;
    MinimaRatios ratios;
    SignFlips flips;
    CoeffMat witnesses;     // columns: witness coefficients before sign flips
};

// t_ij = arccos(g_ij / sqrt(g_ii g_jj)); no normalization applied.
VertexAngles vertex_angles(const Eigen::Matrix3d& gram);

// True iff all three angles lie in [pi/3 - tol, 2pi/3 + tol].
bool check_pairwise_angle_bounds(const VertexAngles& angles, double tol = kAngleTol);

MinimaRatios minima_ratios(double lambda1, double lambda2, double lambda3);

template <class S>
MinimaRatios minima_ratios(const SuccessiveMinima<S>& minima) {
    return minima_ratios(minima.lambda(0), minima.lambda(1), minima.lambda(2));
}

namespace detail {
// Sign search over the four (+/-x2, +/-x3) assignments on a witness Gram
// already converted to double. Valid assignments satisfy the angle window
// within tol; among them the (t23, t13, t12) tuple is minimized, first
// assignment wins exact ties (so no-flip is preferred).
ReducedBasis normalize_from_witness_gram(const Eigen::Matrix3d& h, const MinimaRatios& ratios,
                                         const CoeffMat& witnesses, double tol = kAngleTol);
}  // namespace detail

template <class S>
ReducedBasis normalize_minimal_basis(const GramMat<S>& gram, double tol = kAngleTol) {
    const SuccessiveMinima<S> minima = successive_minima(gram);
    const GramMat<S> h = witness_gram(gram, minima.witnesses);
    return detail::normalize_from_witness_gram(to_double_gram(h), minima_ratios(minima),
                                               minima.witnesses, tol);
}

}  // namespace solidangle
