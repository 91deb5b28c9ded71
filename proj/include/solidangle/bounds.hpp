#pragma once

#include <optional>

#include "solidangle/solid_angle.hpp"

namespace solidangle {

// Sharp normalized bounds for the solid angle of a normalized minimal
// basis. The lower constant is atan(tan^{3/2}(pi/12)) / pi, attained by
// the face-centered cubic lattice; the upper is one octant, attained by
// the cubic lattice Z^3.
inline constexpr double kOmegaLowerWr = 0.04386991402295545;
inline constexpr double kOmegaUpper = 0.125;
inline constexpr double kMinTriangleAreaSr = 0.5512855984325308;  // 4*pi * lower

enum class Branch {
    WrCondition,  // cos t23 >= cos t12 + cos t13 - 1 holds
    NonWr,        // it fails; lower bound depends on the minima ratios
};

struct NuParam {
    double nu;  // radians
};

struct BoundReport {
    Branch branch;
    SolidAngle omega;
    double lower;
    double upper;  // always 0.125
    bool within_bounds;
    VertexAngles angles;
    MinimaRatios ratios;
    std::optional<double> nu;  // present only in the NonWr branch
    SignFlips flips;
};

// Cosine-form comparison of t23 <= arccos(cos t12 + cos t13 - 1); avoids
// arccos at the boundary. Equality within 1e-12 counts as satisfied.
bool wr_condition(const VertexAngles& angles);

// nu = (1/4) arccos((1/2)(2 k12 k23 cos t12 + 2 k12 cos t13
//                           - k12^2 k23 - k23)).
// Arguments outside [-1,1] by <= 1e-12 are clamped silently; larger
// excursions indicate inconsistent inputs and raise DomainError.
NuParam nu_param(const MinimaRatios& ratios, const VertexAngles& angles);

// 4*nu; tighter-than-2pi/3 upper bound on t23 in the NonWr branch.
// BranchMismatch if the WR-type condition actually holds.
double theta23_kbound(const MinimaRatios& ratios, const VertexAngles& angles);

// (1/pi) atan(tan nu * sqrt((1 - 3 tan^2 nu)/(3 - tan^2 nu))); zero at
// nu = pi/6, positive below it. DomainError for nu outside (0, pi/6].
double lower_bound_non_wr(const NuParam& nu);

BoundReport classify_from_reduced(const ReducedBasis& rb);

// Full pipeline: normalize the minimal basis, compute the solid angle by
// L'Huilier with a cross-check against the vector formula, pick the
// branch, and fill in the applicable bounds.
template <class S>
BoundReport classify_and_bound(const GramMat<S>& gram) {
    return classify_from_reduced(normalize_minimal_basis(gram));
}

}  // namespace solidangle
