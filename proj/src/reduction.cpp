#include "solidangle/reduction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

namespace solidangle {

namespace {

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

}  // namespace

VertexAngles vertex_angles(const Eigen::Matrix3d& gram) {
    const double n1 = std::sqrt(gram(0, 0));
    const double n2 = std::sqrt(gram(1, 1));
    const double n3 = std::sqrt(gram(2, 2));
    return {clamped_acos(gram(0, 1) / (n1 * n2)), clamped_acos(gram(0, 2) / (n1 * n3)),
            clamped_acos(gram(1, 2) / (n2 * n3))};
}

bool check_pairwise_angle_bounds(const VertexAngles& angles, double tol) {
    const double lo = kPi / 3.0 - tol;
    const double hi = 2.0 * kPi / 3.0 + tol;
    for (double t : {angles.t12, angles.t13, angles.t23}) {
        if (t < lo || t > hi) return false;
    }
    return true;
}

MinimaRatios minima_ratios(double lambda1, double lambda2, double lambda3) {
    MinimaRatios r;
    r.k12 = lambda1 / lambda2;
    r.k23 = lambda2 / lambda3;
    r.k13 = r.k12 * r.k23;
    return r;
}

namespace detail {

ReducedBasis normalize_from_witness_gram(const Eigen::Matrix3d& h, const MinimaRatios& ratios,
                                         const CoeffMat& witnesses, double tol) {
    struct Candidate {
        VertexAngles angles;
        SignFlips flips;
    };
    const Candidate* best = nullptr;
    std::array<Candidate, 4> cands;
    int n = 0;
    // No-flip assignment first, so exact ties keep the input unchanged.
    for (const auto [s2, s3] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
        const double n1 = std::sqrt(h(0, 0)), n2 = std::sqrt(h(1, 1)), n3 = std::sqrt(h(2, 2));
        VertexAngles a{clamped_acos(s2 * h(0, 1) / (n1 * n2)),
                       clamped_acos(s3 * h(0, 2) / (n1 * n3)),
                       clamped_acos(s2 * s3 * h(1, 2) / (n2 * n3))};
        const bool valid = a.t12 >= kPi / 3 - tol && a.t12 <= kPi / 2 + tol &&
                           a.t13 >= kPi / 3 - tol && a.t13 <= kPi / 2 + tol &&
                           a.t23 >= kPi / 3 - tol && a.t23 <= 2 * kPi / 3 + tol;
        if (!valid) continue;
        cands[static_cast<std::size_t>(n)] = {a, {s2, s3}};
        const Candidate& c = cands[static_cast<std::size_t>(n)];
        ++n;
        if (best == nullptr ||
            std::tie(c.angles.t23, c.angles.t13, c.angles.t12) <
                std::tie(best->angles.t23, best->angles.t13, best->angles.t12)) {
            best = &c;
        }
    }
    if (best == nullptr)
        throw NormalizationFailure("no sign assignment satisfies the angle window");

    ReducedBasis rb;
    Eigen::Vector3d d(1.0, best->flips.s2, best->flips.s3);
    rb.gram = d.asDiagonal() * h * d.asDiagonal();
    rb.angles = best->angles;
    rb.ratios = ratios;
    rb.flips = best->flips;
    rb.witnesses = witnesses;
    return rb;
}

}  // namespace detail

}  // namespace solidangle
