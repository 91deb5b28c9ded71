#include "solidangle/solid_angle.hpp"

#include <cmath>
#include <string>

#include "solidangle/rng.hpp"

namespace solidangle {

namespace {

constexpr double kFourPi = 4.0 * kPi;

SolidAngle validated(double steradians) {
    SolidAngle omega{steradians / kFourPi, steradians};
    // A cone over three independent vectors fits in a half-space, so the
    // normalized measure must land in (0, 1/2); report violations instead
    // of assuming them impossible.
    if (!(omega.normalized > 0.0) || !(omega.normalized < 0.5))
        throw DegenerateTriangle("solid angle " + std::to_string(omega.normalized) +
                                 " outside (0, 1/2)");
    return omega;
}

// Unit-diagonal rescaling of a Gram matrix.
Eigen::Matrix3d unit_gram(const Eigen::Matrix3d& g) {
    Eigen::Vector3d inv_norm = g.diagonal().cwiseSqrt().cwiseInverse();
    return inv_norm.asDiagonal() * g * inv_norm.asDiagonal();
}

}  // namespace

HalfAngleParams half_angle_params(const VertexAngles& v) {
    return {(v.t12 + v.t13) / 4.0, (v.t12 - v.t13) / 4.0, v.t23 / 4.0};
}

SolidAngle lhuilier_solid_angle(const VertexAngles& v) {
    const auto [alpha, beta, c] = half_angle_params(v);
    const double f1 = std::tan(alpha + c);
    const double f2 = std::tan(alpha - c);
    const double f3 = std::tan(c + beta);
    const double f4 = std::tan(c - beta);
    for (double f : {f1, f2, f3, f4}) {
        if (!(f > 0.0))
            throw DegenerateTriangle("flat or impossible spherical triangle (factor " +
                                     std::to_string(f) + ")");
    }
    const double tan_sq = f1 * f2 * f3 * f4;
    return validated(4.0 * std::atan(std::sqrt(tan_sq)));
}

SolidAngle oosterom_solid_angle(const Eigen::Matrix3d& gram) {
    if (!is_positive_definite<double>(gram))
        throw SingularBasis("gram matrix is not positive definite");
    const Eigen::Matrix3d u = unit_gram(gram);
    // |u1 . (u2 x u3)| = sqrt(det) of the unit Gram.
    const double det = u.determinant();
    const double triple = std::sqrt(std::max(det, 0.0));
    if (triple <= 1e-14) throw DegenerateTriangle("triple product vanishes");
    const double denom = 1.0 + u(0, 1) + u(0, 2) + u(1, 2);
    return validated(2.0 * std::atan2(triple, denom));
}

MonteCarloEstimate monte_carlo_solid_angle(const Eigen::Matrix3d& gram, std::size_t samples,
                                           std::uint64_t seed) {
    if (samples < 1000) throw DomainError("need at least 1000 samples");
    const Eigen::Matrix3d u = unit_gram(gram);
    Eigen::LLT<Eigen::Matrix3d> llt(u);
    if (llt.info() != Eigen::Success)
        throw SingularBasis("gram matrix is not positive definite");
    // Columns of L^T are the embedded unit vectors; invert once, then a
    // direction d lies in the cone iff all cone coordinates of d are
    // nonnegative. Isotropy of the Gaussian makes normalization redundant.
    const Eigen::Matrix3d embedding = llt.matrixL().transpose();
    const Eigen::Matrix3d to_cone = embedding.inverse();

    Rng rng(seed);
    std::size_t inside = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        Eigen::Vector3d d(rng.normal(), rng.normal(), rng.normal());
        const Eigen::Vector3d x = to_cone * d;
        // Boundary hits count as inside; measure zero, so unbiased.
        if (x(0) >= -1e-15 && x(1) >= -1e-15 && x(2) >= -1e-15) ++inside;
    }
    const double p = static_cast<double>(inside) / static_cast<double>(samples);
    MonteCarloEstimate est;
    est.estimate = {p, p * kFourPi};
    est.stderr_value = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.samples = samples;
    return est;
}

double spherical_triangle_area(const Eigen::Matrix3d& gram) {
    return oosterom_solid_angle(gram).steradians;
}

}  // namespace solidangle
