#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>

#include "solidangle/reduction.hpp"

namespace solidangle {

// Normalized solid angles divide by 4*pi, the full sphere.
struct SolidAngle {
    double normalized;
    double steradians;
};

// Quarter-angle parameters of the vertex-angle triple: alpha = (t12+t13)/4,
// beta = (t12-t13)/4, c = t23/4.
struct HalfAngleParams {
    double alpha;
    double beta;
    double c;
};

struct MonteCarloEstimate {
    SolidAngle estimate;
    double stderr_value;  // sqrt(p(1-p)/samples)
    std::size_t samples;
};

HalfAngleParams half_angle_params(const VertexAngles& angles);

// L'Huilier's theorem: tan^2(E/4) as the product of four quarter-angle
// tangents; here the spherical triangle's sides equal the vertex angles
// because the vertices are unit vectors.
SolidAngle lhuilier_solid_angle(const VertexAngles& angles);

// Closed-form vector route (Van Oosterom & Strackee): embeds the three
// unit-normalized basis vectors in R^3 and evaluates
// tan(E/2) = |u1 . (u2 x u3)| / (1 + u1.u2 + u1.u3 + u2.u3)
// with the atan2 branch, so E lands in (0, 2pi) even when the
// denominator is negative.
SolidAngle oosterom_solid_angle(const Eigen::Matrix3d& gram);

// Fraction of isotropic random directions falling inside the simplicial
// cone of the three basis vectors; that fraction is the normalized solid
// angle. Deterministic for a fixed seed.
MonteCarloEstimate monte_carlo_solid_angle(const Eigen::Matrix3d& gram, std::size_t samples,
                                           std::uint64_t seed);

// Area (steradians) of the spherical triangle cut by the unit-normalized
// basis vectors; identical to the solid angle in steradians.
double spherical_triangle_area(const Eigen::Matrix3d& gram);

}  // namespace solidangle
