#include "solidangle/bounds.hpp"

#include <cmath>
#include <string>

namespace solidangle {

namespace {
constexpr double kClampTol = 1e-12;
}

bool wr_condition(const VertexAngles& v) {
    return std::cos(v.t23) >= std::cos(v.t12) + std::cos(v.t13) - 1.0 - kClampTol;
}

NuParam nu_param(const MinimaRatios& r, const VertexAngles& v) {
    double arg = 0.5 * (2.0 * r.k12 * r.k23 * std::cos(v.t12) + 2.0 * r.k12 * std::cos(v.t13) -
                        r.k12 * r.k12 * r.k23 - r.k23);
    if (std::abs(arg) > 1.0) {
        const double excess = std::abs(arg) - 1.0;
        if (excess > kClampTol)
            throw DomainError("arccos argument exceeds [-1,1] by " + std::to_string(excess));
        arg = arg > 0.0 ? 1.0 : -1.0;
    }
    return {0.25 * std::acos(arg)};
}

double theta23_kbound(const MinimaRatios& r, const VertexAngles& v) {
    if (wr_condition(v))
        throw BranchMismatch("theta23_kbound requires the non-WR branch to be active");
    return 4.0 * nu_param(r, v).nu;
}

double lower_bound_non_wr(const NuParam& nu) {
    if (!(nu.nu > 0.0)) throw DomainError("nu must be positive");
    if (nu.nu > kPi / 6.0 + kClampTol)
        throw DomainError("nu exceeds pi/6, the non-WR lower bound does not apply");
    const double t = std::tan(nu.nu);
    // The radicand hits exactly 0 at nu = pi/6; absorb rounding.
    const double radicand = std::max((1.0 - 3.0 * t * t) / (3.0 - t * t), 0.0);
    return std::atan(t * std::sqrt(radicand)) / kPi;
}

BoundReport classify_from_reduced(const ReducedBasis& rb) {
    const SolidAngle omega = lhuilier_solid_angle(rb.angles);
    const SolidAngle check = oosterom_solid_angle(rb.gram);
    if (std::abs(omega.normalized - check.normalized) > 1e-8)
        throw CrossOracleMismatch("solid-angle routes disagree: " +
                                  std::to_string(omega.normalized) + " vs " +
                                  std::to_string(check.normalized));

    BoundReport report;
    report.omega = omega;
    report.angles = rb.angles;
    report.ratios = rb.ratios;
    report.flips = rb.flips;
    report.upper = kOmegaUpper;
    if (wr_condition(rb.angles)) {
        report.branch = Branch::WrCondition;
        report.lower = kOmegaLowerWr;
    } else {
        report.branch = Branch::NonWr;
        const NuParam nu = nu_param(rb.ratios, rb.angles);
        report.nu = nu.nu;
        report.lower = lower_bound_non_wr(nu);
    }
    report.within_bounds = report.lower - 1e-9 <= omega.normalized &&
                           omega.normalized <= report.upper + 1e-9;
    return report;
}

}  // namespace solidangle
