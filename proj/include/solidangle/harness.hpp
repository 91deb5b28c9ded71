#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "solidangle/bounds.hpp"

namespace solidangle {

enum class LatticeKind {
    UniformBasis,  // uniform real entries, ill-conditioned draws rejected
    WrRejection,   // known well-rounded bases + length-preserving direction noise
    NearFcc,       // fcc basis + additive entry noise
    NearCubic,     // identity basis + additive entry noise
    IntegerSmall,  // integer entries, for the exact path
};

struct LatticeModel {
    LatticeKind kind = LatticeKind::UniformBasis;
    int dimension = 3;          // ambient N >= 3
    double entry_range = 1.0;   // uniform models: entries in [-range, range]
    long long int_range = 4;    // IntegerSmall: entries in [-int_range, int_range]
    double perturbation = 0.1;  // noise scale; 0 reproduces the base lattice exactly
};

// Deterministic in (model, seed, index).
Eigen::MatrixXd gen_lattice(const LatticeModel& model, std::uint64_t seed, std::uint64_t index);

struct Violation {
    std::string lattice;    // reproduction descriptor
    std::string invariant;  // which check failed
    double margin;          // signed distance past the tolerance
};

struct VerificationReport {
    std::string name;
    std::size_t population = 0;
    std::uint64_t seed = 0;
    std::vector<Violation> violations;
    // Extremes of the tracked quantity (normalized solid angle for the
    // bound checks, steradian triangle area for the area check).
    std::string extreme_name;
    double min_value = 0.0;
    double max_value = 0.0;
    std::string min_witness;    // descriptor of the item attaining min_value
    std::size_t evaluations = 0;
    std::size_t skipped = 0;    // empty grid cells / rejected draws
    std::size_t branch_wr = 0;  // classification tallies (population checks)
    std::size_t branch_non_wr = 0;
};

// Classification + branch-appropriate bound invariants over a generated
// population; pairwise witness-angle window and a 1% Monte Carlo
// subsample are checked as well. Items are independent and may be
// processed in parallel (SOLIDANGLE_THREADS caps the worker count); the
// merged report does not depend on scheduling.
VerificationReport verify_theorem_main3(const LatticeModel& model, std::size_t n,
                                        std::uint64_t seed);

// Minimal spherical-triangle areas over a well-rounded population. The
// population is seeded with the exact fcc and cubic lattices (indices 0
// and 1), the remainder comes from the WrRejection generator. Every
// linearly independent triple of minimal vectors, in all sign classes up
// to global negation, must span at least the fcc triangle area.
VerificationReport verify_sp_area(std::size_t n, std::uint64_t seed);

// Monotonicity grid scans of F(z; x, y) = tan(a+c) tan(a-c) tan(c+b) tan(c-b)
// with a = (x+y)/4, b = (x-y)/4, c = z/4, plus two closed-form envelope
// scans:
//   A: x, y in [pi/3, pi/2], z in [pi/3, min(2pi/3, acos(cos x + cos y - 1))],
//      F nondecreasing in z;
//   B: same (x, y), z in [acos(-1 + cos x + cos y), 2pi/3] where nonempty
//      (empty cells counted as skipped), F nonincreasing in z;
//   C: x in [pi/2, 2pi/3], y in [pi/3, x], z in [x, 2pi/3], F nondecreasing
//      in z (point intervals skipped);
//   D: envelope tan(3pi/8 - x/4 + y/4) tan(pi/8 - x/4 - y/4) tan^2(pi/8 + y/4)
//      nonincreasing in x over x in [0, pi/3], y in [-pi/6, pi/6];
//   E: the same envelope at x = 0, nondecreasing in y over [-pi/6, pi/6].
enum class ScanDomain { A, B, C, D, E };

VerificationReport scan_monotonicity(ScanDomain domain, int grid = 64);

// Grams of all linearly independent 3-subsets of the canonical half of
// the minimal vector set.
std::vector<Eigen::Matrix3d> all_minimal_triples(const Eigen::Matrix3d& gram);

// Worker count: min(SOLIDANGLE_THREADS, hardware_concurrency), at least 1.
unsigned harness_thread_count();

const char* to_string(LatticeKind kind);

}  // namespace solidangle
