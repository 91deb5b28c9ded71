#include "solidangle/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "solidangle/rng.hpp"

namespace solidangle {

namespace {

constexpr std::uint64_t kRejectionCap = 100'000;

Eigen::Matrix3d base_matrix(int which) {
    Eigen::Matrix3d b;
    switch (which) {
        case 0:  // fcc: minimal basis of A3, all minima sqrt(2)
            b << 1, 0, 1,
                 1, 1, 0,
                 0, 1, 1;
            break;
        case 1:  // bcc-type: all minima sqrt(3)
            b << 1, 1, -1,
                 1, -1, 1,
                 -1, 1, 1;
            break;
        default:  // cubic
            b = Eigen::Matrix3d::Identity();
            break;
    }
    return b;
}

Eigen::MatrixXd embed(const Eigen::Matrix3d& b, int dimension) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dimension, 3);
    out.topRows(3) = b;
    return out;
}

bool gram_ok(const Eigen::MatrixXd& basis, double max_condition) {
    Eigen::Matrix3d g = basis.transpose() * basis;
    if (!is_positive_definite<double>(g)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(g, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues()(0);
    const double hi = eig.eigenvalues()(2);
    return lo > 0.0 && hi / lo <= max_condition;
}

// Direction-only noise: rotate each column by a Gaussian component
// orthogonal to it and restore the original length, so the candidate
// minima stay exactly equal.
void perturb_directions(Eigen::MatrixXd& basis, double scale, Rng& rng) {
    for (int c = 0; c < 3; ++c) {
        Eigen::VectorXd v = basis.col(c);
        const double len = v.norm();
        Eigen::VectorXd u = v / len;
        Eigen::VectorXd w(v.size());
        for (int r = 0; r < w.size(); ++r) w(r) = rng.normal();
        w -= w.dot(u) * u;
        Eigen::VectorXd dir = u + scale * w;
        basis.col(c) = len * dir / dir.norm();
    }
}

std::string describe(const LatticeModel& model, std::uint64_t seed, std::uint64_t index) {
    std::ostringstream os;
    os << "model=" << to_string(model.kind) << " dim=" << model.dimension << " seed=" << seed
       << " index=" << index;
    return os.str();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<unsigned>(harness_thread_count(),
                                                static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct ItemOutcome {
    std::vector<Violation> violations;
    double omega = 0.0;
    Branch branch = Branch::WrCondition;
};

ItemOutcome check_lattice(const LatticeModel& model, std::uint64_t seed, std::uint64_t index) {
    ItemOutcome out;
    const std::string id = describe(model, seed, index);
    auto flag = [&](const char* invariant, double margin) {
        out.violations.push_back({id, invariant, margin});
    };

    const Eigen::MatrixXd basis = gen_lattice(model, seed, index);
    const Eigen::Matrix3d gram = gram_from_basis<double>(BasisMat<double>(basis));
    const SuccessiveMinima<double> minima = successive_minima<double>(gram);
    const Eigen::Matrix3d h = witness_gram<double>(gram, minima.witnesses);

    // Pairwise witness angles, before any sign normalization.
    const VertexAngles raw = vertex_angles(h);
    for (double t : {raw.t12, raw.t13, raw.t23}) {
        const double past = std::max(kPi / 3 - kAngleTol - t, t - 2 * kPi / 3 - kAngleTol);
        if (past > 0.0) flag("pair-angle-window", past);
    }

    const ReducedBasis rb =
        detail::normalize_from_witness_gram(h, minima_ratios(minima), minima.witnesses);
    const BoundReport report = classify_from_reduced(rb);
    out.omega = report.omega.normalized;
    out.branch = report.branch;

    if (report.omega.normalized > kOmegaUpper + 1e-9)
        flag("upper-bound", report.omega.normalized - kOmegaUpper - 1e-9);

    const HalfAngleParams hap = half_angle_params(report.angles);
    if (report.branch == Branch::WrCondition) {
        if (report.omega.normalized < kOmegaLowerWr - 1e-9)
            flag("wr-lower-bound", kOmegaLowerWr - 1e-9 - report.omega.normalized);
        // Product bound at the frozen quarter-angle c = pi/12.
        const double lhs = std::tan(hap.alpha + kPi / 12) * std::tan(hap.alpha - kPi / 12) *
                           std::tan(kPi / 12 + hap.beta) * std::tan(kPi / 12 - hap.beta);
        const double rhs = std::pow(std::tan(report.omega.steradians / 4.0), 2);
        if (rhs < lhs - 1e-12) flag("fixed-angle-product-bound", lhs - 1e-12 - rhs);
    } else {
        if (is_well_rounded<double>(gram, 1e-9)) flag("non-wr-branch-on-wr-lattice", 1.0);
        const double kbound = theta23_kbound(report.ratios, report.angles);
        if (report.angles.t23 > kbound + 1e-9)
            flag("kbound-theta23", report.angles.t23 - kbound - 1e-9);
        if (kbound >= 2 * kPi / 3 + 1e-9) flag("kbound-window", kbound - 2 * kPi / 3);
        if (report.omega.normalized < report.lower - 1e-9)
            flag("nu-lower-bound", report.lower - 1e-9 - report.omega.normalized);
    }

    // Monte Carlo cross-check on a 1% subsample.
    if (index % 100 == 0) {
        Eigen::Matrix3d unit;
        unit << 1.0, std::cos(report.angles.t12), std::cos(report.angles.t13),
                std::cos(report.angles.t12), 1.0, std::cos(report.angles.t23),
                std::cos(report.angles.t13), std::cos(report.angles.t23), 1.0;
        const MonteCarloEstimate mc =
            monte_carlo_solid_angle(unit, 100'000, mix_seed(seed, index, 0x6d63));
        const double err = std::abs(mc.estimate.normalized - report.omega.normalized);
        if (err > 4.0 * mc.stderr_value + 1e-12)
            flag("monte-carlo-consistency", err - 4.0 * mc.stderr_value);
    }
    return out;
}

}  // namespace

const char* to_string(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::UniformBasis: return "UNIFORM_BASIS";
        case LatticeKind::WrRejection: return "WR_REJECTION";
        case LatticeKind::NearFcc: return "NEAR_FCC";
        case LatticeKind::NearCubic: return "NEAR_CUBIC";
        case LatticeKind::IntegerSmall: return "INTEGER_SMALL";
    }
    return "?";
}

unsigned harness_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SOLIDANGLE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
    }
    return n;
}

Eigen::MatrixXd gen_lattice(const LatticeModel& model, std::uint64_t seed, std::uint64_t index) {
    if (model.dimension < 3) throw DomainError("ambient dimension must be at least 3");
    Rng rng(mix_seed(seed, index, static_cast<std::uint64_t>(model.kind)));
    const int n = model.dimension;

    switch (model.kind) {
        case LatticeKind::UniformBasis: {
            for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
                Eigen::MatrixXd b(n, 3);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < 3; ++c)
                        b(r, c) = rng.uniform(-model.entry_range, model.entry_range);
                if (gram_ok(b, 1e6)) return b;
            }
            throw RejectionOverflow("uniform basis rejection exceeded cap");
        }
        case LatticeKind::WrRejection: {
            for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
                const int which = static_cast<int>(rng.uniform_int(0, 2));
                Eigen::MatrixXd b = embed(base_matrix(which), n);
                if (model.perturbation > 0.0) perturb_directions(b, model.perturbation, rng);
                const Eigen::Matrix3d g = (b.transpose() * b).eval();
                if (!is_positive_definite<double>(g)) continue;
                if (is_well_rounded<double>(g, 1e-9)) return b;
            }
            throw RejectionOverflow("well-rounded rejection exceeded cap");
        }
        case LatticeKind::NearFcc:
        case LatticeKind::NearCubic: {
            const int which = model.kind == LatticeKind::NearFcc ? 0 : 2;
            for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
                Eigen::MatrixXd b = embed(base_matrix(which), n);
                if (model.perturbation > 0.0) {
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < 3; ++c) b(r, c) += model.perturbation * rng.normal();
                }
                if (is_positive_definite<double>((b.transpose() * b).eval())) return b;
            }
            throw RejectionOverflow("perturbed basis rejection exceeded cap");
        }
        case LatticeKind::IntegerSmall: {
            for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
                Eigen::MatrixXd b(n, 3);
                CoeffMat top;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < 3; ++c) {
                        const long long e = rng.uniform_int(-model.int_range, model.int_range);
                        b(r, c) = static_cast<double>(e);
                        if (r < 3) top(r, c) = e;
                    }
                if (n == 3) {
                    if (det3(top) != 0) return b;
                } else if (is_positive_definite<double>((b.transpose() * b).eval())) {
                    return b;
                }
            }
            throw RejectionOverflow("integer basis rejection exceeded cap");
        }
    }
    throw DomainError("unknown lattice model");
}

VerificationReport verify_theorem_main3(const LatticeModel& model, std::size_t n,
                                        std::uint64_t seed) {
    if (n < 1) throw DomainError("population size must be at least 1");
    std::vector<ItemOutcome> outcomes(n);
    parallel_for(n, [&](std::size_t i) {
        outcomes[i] = check_lattice(model, seed, static_cast<std::uint64_t>(i));
    });

    VerificationReport rep;
    rep.name = "main3";
    rep.population = n;
    rep.seed = seed;
    rep.extreme_name = "omega_normalized";
    rep.min_value = outcomes[0].omega;
    rep.max_value = outcomes[0].omega;
    rep.min_witness = describe(model, seed, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const ItemOutcome& o = outcomes[i];
        rep.violations.insert(rep.violations.end(), o.violations.begin(), o.violations.end());
        if (o.omega < rep.min_value) {
            rep.min_value = o.omega;
            rep.min_witness = describe(model, seed, i);
        }
        rep.max_value = std::max(rep.max_value, o.omega);
        (o.branch == Branch::WrCondition ? rep.branch_wr : rep.branch_non_wr) += 1;
        ++rep.evaluations;
    }
    return rep;
}

VerificationReport verify_sp_area(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("population size must be at least 1");
    LatticeModel wr_model;
    wr_model.kind = LatticeKind::WrRejection;

    struct AreaOutcome {
        std::vector<Violation> violations;
        double min_area = 0.0;
        double max_area = 0.0;
        std::string min_witness;
        std::size_t evaluations = 0;
    };
    std::vector<AreaOutcome> outcomes(n);

    parallel_for(n, [&](std::size_t i) {
        AreaOutcome& out = outcomes[i];
        Eigen::MatrixXd basis;
        std::string id;
        if (i == 0) {
            basis = embed(base_matrix(0), 3);
            id = "exact-fcc index=0";
        } else if (i == 1) {
            basis = embed(base_matrix(2), 3);
            id = "exact-cubic index=1";
        } else {
            basis = gen_lattice(wr_model, seed, static_cast<std::uint64_t>(i));
            id = describe(wr_model, seed, i);
        }
        Eigen::Matrix3d gram = gram_from_basis<double>(BasisMat<double>(basis));
        const SuccessiveMinima<double> minima = successive_minima<double>(gram);
        if (!is_well_rounded<double>(gram, 1e-9)) {
            out.violations.push_back({id, "population-not-well-rounded", 1.0});
            return;
        }
        gram /= minima.norm_sq[0];  // rescale minima to 1

        bool first = true;
        int triple_index = 0;
        for (const Eigen::Matrix3d& t : all_minimal_triples(gram)) {
            // Every sign class up to global negation is a distinct
            // lattice-minimal triangle.
            for (const auto [s2, s3] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
                const Eigen::Vector3d d(1.0, s2, s3);
                const double area =
                    spherical_triangle_area(d.asDiagonal() * t * d.asDiagonal());
                ++out.evaluations;
                std::ostringstream ctx;
                ctx << id << " triple=" << triple_index << " signs=(" << s2 << "," << s3 << ")";
                if (area < kMinTriangleAreaSr - 1e-9)
                    out.violations.push_back(
                        {ctx.str(), "triangle-area-lower-bound", kMinTriangleAreaSr - 1e-9 - area});
                if (first || area < out.min_area) {
                    out.min_area = area;
                    out.min_witness = ctx.str();
                }
                out.max_area = first ? area : std::max(out.max_area, area);
                first = false;
            }
            ++triple_index;
        }
    });

    VerificationReport rep;
    rep.name = "sparea";
    rep.population = n;
    rep.seed = seed;
    rep.extreme_name = "area_steradians";
    bool first = true;
    for (const AreaOutcome& o : outcomes) {
        rep.violations.insert(rep.violations.end(), o.violations.begin(), o.violations.end());
        rep.evaluations += o.evaluations;
        if (o.evaluations == 0) continue;
        if (first || o.min_area < rep.min_value) {
            rep.min_value = o.min_area;
            rep.min_witness = o.min_witness;
        }
        rep.max_value = first ? o.max_area : std::max(rep.max_value, o.max_area);
        first = false;
    }
    return rep;
}

namespace {

double scan_f(double x, double y, double z) {
    const double a = (x + y) / 4.0;
    const double b = (x - y) / 4.0;
    const double c = z / 4.0;
    return std::tan(a + c) * std::tan(a - c) * std::tan(c + b) * std::tan(c - b);
}

double envelope(double x, double y) {
    return std::tan(3 * kPi / 8 - x / 4 + y / 4) * std::tan(kPi / 8 - x / 4 - y / 4) *
           std::pow(std::tan(kPi / 8 + y / 4), 2);
}

double lerp_grid(double lo, double hi, int k, int grid) {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
}

}  // namespace

VerificationReport scan_monotonicity(ScanDomain domain, int grid) {
    if (grid < 16) throw DomainError("grid must have at least 16 points per axis");
    constexpr double kDiffTol = 1e-12;

    VerificationReport rep;
    rep.name = "scan";
    rep.population = static_cast<std::size_t>(grid);
    rep.extreme_name = "f_value";
    bool first = true;
    auto note_value = [&](double v, const std::string& where) {
        ++rep.evaluations;
        if (first || v < rep.min_value) {
            rep.min_value = v;
            rep.min_witness = where;
        }
        rep.max_value = first ? v : std::max(rep.max_value, v);
        first = false;
    };
    // direction +1: expect nondecreasing; -1: expect nonincreasing.
    auto check_line = [&](const std::vector<double>& vals, int direction,
                          const std::string& where) {
        for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
            const double diff = (vals[k + 1] - vals[k]) * direction;
            if (diff < -kDiffTol) {
                std::ostringstream ctx;
                ctx << where << " step=" << k;
                rep.violations.push_back({ctx.str(), "monotonicity", -diff - kDiffTol});
            }
        }
    };

    const double third = kPi / 3.0;
    const double half = kPi / 2.0;
    const double two_thirds = 2.0 * kPi / 3.0;

    switch (domain) {
        case ScanDomain::A:
        case ScanDomain::B: {
            for (int i = 0; i < grid; ++i) {
                const double x = lerp_grid(third, half, i, grid);
                for (int j = 0; j < grid; ++j) {
                    const double y = lerp_grid(third, half, j, grid);
                    const double corner = std::acos(std::clamp(std::cos(x) + std::cos(y) - 1.0,
                                                               -1.0, 1.0));
                    double zlo, zhi;
                    int direction;
                    if (domain == ScanDomain::A) {
                        zlo = third;
                        zhi = std::min(two_thirds, corner);
                        direction = 1;
                    } else {
                        zlo = corner;
                        zhi = two_thirds;
                        direction = -1;
                        if (zlo > zhi) {  // the Sage "Bad Domain" cell
                            ++rep.skipped;
                            continue;
                        }
                    }
                    std::ostringstream ctx;
                    ctx << "x=" << x << " y=" << y;
                    const std::string where = ctx.str();
                    std::vector<double> vals(static_cast<std::size_t>(grid));
                    for (int k = 0; k < grid; ++k) {
                        vals[static_cast<std::size_t>(k)] = scan_f(x, y, lerp_grid(zlo, zhi, k, grid));
                        note_value(vals[static_cast<std::size_t>(k)], where);
                    }
                    check_line(vals, direction, where);
                }
            }
            break;
        }
        case ScanDomain::C: {
            for (int i = 0; i < grid; ++i) {
                const double x = lerp_grid(half, two_thirds, i, grid);
                for (int j = 0; j < grid; ++j) {
                    const double y = lerp_grid(third, x, j, grid);
                    if (!(x < two_thirds)) {  // z-interval degenerates to a point
                        ++rep.skipped;
                        continue;
                    }
                    std::ostringstream ctx;
                    ctx << "x=" << x << " y=" << y;
                    const std::string where = ctx.str();
                    std::vector<double> vals(static_cast<std::size_t>(grid));
                    for (int k = 0; k < grid; ++k) {
                        vals[static_cast<std::size_t>(k)] =
                            scan_f(x, y, lerp_grid(x, two_thirds, k, grid));
                        note_value(vals[static_cast<std::size_t>(k)], where);
                    }
                    check_line(vals, 1, where);
                }
            }
            break;
        }
        case ScanDomain::D: {
            for (int j = 0; j < grid; ++j) {
                const double y = lerp_grid(-kPi / 6, kPi / 6, j, grid);
                std::ostringstream ctx;
                ctx << "y=" << y;
                const std::string where = ctx.str();
                std::vector<double> vals(static_cast<std::size_t>(grid));
                for (int i = 0; i < grid; ++i) {
                    vals[static_cast<std::size_t>(i)] = envelope(lerp_grid(0.0, third, i, grid), y);
                    note_value(vals[static_cast<std::size_t>(i)], where);
                }
                check_line(vals, -1, where);
            }
            break;
        }
        case ScanDomain::E: {
            std::vector<double> vals(static_cast<std::size_t>(grid));
            for (int j = 0; j < grid; ++j) {
                vals[static_cast<std::size_t>(j)] =
                    envelope(0.0, lerp_grid(-kPi / 6, kPi / 6, j, grid));
                note_value(vals[static_cast<std::size_t>(j)], "x=0");
            }
            check_line(vals, 1, "x=0");
            break;
        }
    }
    return rep;
}

std::vector<Eigen::Matrix3d> all_minimal_triples(const Eigen::Matrix3d& gram) {
    const MinimalVectorSet<double> set = minimal_vector_set<double>(gram);
    std::vector<Coeff> half;
    for (const Coeff& v : set.vectors) {
        if (canonical_sign(v) == v) half.push_back(v);
    }
    std::vector<Eigen::Matrix3d> triples;
    const std::size_t m = half.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                if (!independent_triple(half[i], half[j], half[k])) continue;
                CoeffMat w;
                w.col(0) = half[i];
                w.col(1) = half[j];
                w.col(2) = half[k];
                triples.push_back(witness_gram<double>(gram, w));
            }
        }
    }
    return triples;
}

}  // namespace solidangle
