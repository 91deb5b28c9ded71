#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <vector>

#include "solidangle/errors.hpp"
#include "solidangle/rational.hpp"

namespace solidangle {

// Rank-3 lattice in R^N, columns of an N x 3 matrix. Scalar is `double`
// or `Rational`; the rational instantiation is exact end-to-end (the
// enumeration below never takes a square root).
template <class S>
using BasisMat = Eigen::Matrix<S, Eigen::Dynamic, 3>;

template <class S>
using GramMat = Eigen::Matrix<S, 3, 3>;

// Integer coefficients of a lattice vector w.r.t. the basis at hand.
using Coeff = Eigen::Matrix<long long, 3, 1>;
using CoeffMat = Eigen::Matrix<long long, 3, 3>;

template <class S>
struct ShortVector {
    Coeff coeffs;
    S norm_sq;
};

template <class S>
struct SuccessiveMinima {
    std::array<S, 3> norm_sq;  // lambda_i^2, ascending
    CoeffMat witnesses;        // columns attain the minima and form a basis

    double lambda(int i) const { return std::sqrt(to_double(norm_sq[static_cast<std::size_t>(i)])); }
};

template <class S>
struct MinimalVectorSet {
    S norm_sq;                  // lambda_1^2
    std::vector<Coeff> vectors; // closed under negation, even cardinality
};

// ---------------------------------------------------------------------------
// Small exact helpers

inline long long det3(const CoeffMat& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline bool independent_pair(const Coeff& a, const Coeff& b) {
    return a(1) * b(2) - a(2) * b(1) != 0 || a(2) * b(0) - a(0) * b(2) != 0 ||
           a(0) * b(1) - a(1) * b(0) != 0;
}

inline bool independent_triple(const Coeff& a, const Coeff& b, const Coeff& c) {
    CoeffMat m;
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    return det3(m) != 0;
}

// First nonzero coefficient positive.
inline Coeff canonical_sign(Coeff a) {
    for (int i = 0; i < 3; ++i) {
        if (a(i) != 0) {
            if (a(i) < 0) a = -a;
            break;
        }
    }
    return a;
}

inline bool lex_greater(const Coeff& a, const Coeff& b) {
    for (int i = 0; i < 3; ++i) {
        if (a(i) != b(i)) return a(i) > b(i);
    }
    return false;
}

// Total order used for all deterministic outputs: norm ascending, ties by
// lexicographically largest canonical coefficient vector first.
template <class S>
bool canonical_before(const ShortVector<S>& a, const ShortVector<S>& b) {
    if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
    return lex_greater(a.coeffs, b.coeffs);
}

template <class S>
S norm_sq(const GramMat<S>& g, const Coeff& a) {
    S acc(0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) acc += S(a(i)) * g(i, j) * S(a(j));
    }
    return acc;
}

inline long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }

inline long long floor_ll(const Rational& x) {
    BigInt num = numerator(x);
    BigInt den = denominator(x);  // canonical: den > 0
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q.template convert_to<long long>();
}

// Leading principal minors all positive. Float inputs get a relative gate
// so near-singular Grams are rejected as degenerate rather than enumerated.
template <class S>
bool is_positive_definite(const GramMat<S>& g) {
    const S m1 = g(0, 0);
    const S m2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const S m3 = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
                 g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
                 g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
    if constexpr (std::is_floating_point_v<S>) {
        const S tol = S(1e-12);
        return m1 > 0 && m2 > tol * g(0, 0) * g(1, 1) && m3 > tol * g(0, 0) * g(1, 1) * g(2, 2);
    } else {
        return m1 > 0 && m2 > 0 && m3 > 0;
    }
}

// ---------------------------------------------------------------------------
// gram_from_basis

// Products are written out by hand: Eigen's scalar-promotion machinery
// trips over boost 1.74's byte-container trait for multiprecision
// scalars, and a 3-column product is trivial anyway.
template <class S>
GramMat<S> gram_from_basis(const BasisMat<S>& basis) {
    if (basis.rows() < 3) throw DomainError("ambient dimension must be at least 3");
    GramMat<S> g;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            S acc(0);
            for (Eigen::Index r = 0; r < basis.rows(); ++r) acc += basis(r, i) * basis(r, j);
            g(i, j) = acc;
            g(j, i) = acc;
        }
    }
    if (!is_positive_definite(g)) throw SingularBasis("basis columns are linearly dependent");
    return g;
}

// ---------------------------------------------------------------------------
// Pairwise size reduction (Lagrange sweeps until stable)

template <class S>
struct PairwiseReduced {
    GramMat<S> gram;     // Gram of the reduced basis
    CoeffMat transform;  // reduced basis = original basis * transform, det = +/-1
};

template <class S>
PairwiseReduced<S> pairwise_reduce(GramMat<S> g) {
    CoeffMat u = CoeffMat::Identity();
    bool changed = true;
    int sweeps = 0;
    while (changed) {
        if (++sweeps > 10000) throw Error("internal: pairwise reduction did not stabilize");
        changed = false;
        for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < 3; ++i) {
                if (i == j) continue;
                const long long q = round_nearest(g(i, j) / g(i, i));
                if (q == 0) continue;
                const S new_jj = g(j, j) - S(q) * (S(2) * g(i, j) - S(q) * g(i, i));
                if (!(new_jj < g(j, j))) continue;  // apply only on strict progress
                // x_j <- x_j - q x_i
                for (int k = 0; k < 3; ++k) {
                    if (k == j) continue;
                    g(k, j) -= S(q) * g(k, i);
                    g(j, k) = g(k, j);
                }
                g(j, j) = new_jj;
                u.col(j) -= q * u.col(i);
                changed = true;
            }
        }
    }
    // Sort columns by squared length, ascending; stable for determinism.
    std::array<int, 3> perm{0, 1, 2};
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return g(a, a) < g(b, b); });
    GramMat<S> gs;
    CoeffMat us;
    for (int i = 0; i < 3; ++i) {
        us.col(i) = u.col(perm[static_cast<std::size_t>(i)]);
        for (int j = 0; j < 3; ++j)
            gs(i, j) = g(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return {gs, us};
}

// ---------------------------------------------------------------------------
// Complete enumeration of short vectors

namespace detail {

template <class S>
struct Ldl3 {
    std::array<S, 3> d;  // pivots
    S l10, l20, l21;     // unit lower-triangular factors
};

template <class S>
Ldl3<S> ldl3(const GramMat<S>& g) {
    Ldl3<S> f;
    f.d[0] = g(0, 0);
    f.l10 = g(0, 1) / f.d[0];
    f.l20 = g(0, 2) / f.d[0];
    f.d[1] = g(1, 1) - f.l10 * f.l10 * f.d[0];
    f.l21 = (g(1, 2) - f.l20 * f.l10 * f.d[0]) / f.d[1];
    f.d[2] = g(2, 2) - f.l20 * f.l20 * f.d[0] - f.l21 * f.l21 * f.d[1];
    return f;
}

}  // namespace detail

// Every nonzero lattice vector with squared norm <= radius_sq, one
// representative per +/- pair (first nonzero coefficient positive),
// sorted by (norm, canonical order). Complete: the input is size-reduced
// first and coefficient ranges come from the LDL^T pivots, so no vector
// inside the radius is missed.
template <class S>
std::vector<ShortVector<S>> enumerate_short_vectors(const GramMat<S>& gram, const S& radius_sq,
                                                    std::size_t cap = 10'000'000) {
    if (!is_positive_definite(gram)) throw SingularBasis("gram matrix is not positive definite");
    if (!(radius_sq > S(0))) throw DomainError("radius_sq must be positive");

    const PairwiseReduced<S> red = pairwise_reduce<S>(gram);
    const detail::Ldl3<S> f = detail::ldl3(red.gram);

    // Node-count estimate before doing any work.
    double estimate = 1.0;
    for (int i = 0; i < 3; ++i)
        estimate *= 2.0 * std::sqrt(to_double(radius_sq) / to_double(f.d[i])) + 1.0;
    if (estimate > static_cast<double>(cap))
        throw RadiusTooLarge("predicted enumeration count " + std::to_string(estimate) +
                             " exceeds cap " + std::to_string(cap));

    // Slack keeps float pruning a superset; candidates are re-checked
    // against the original Gram below. Exact path needs none.
    S budget = radius_sq;
    if constexpr (std::is_floating_point_v<S>) budget += S(1e-9) * radius_sq;

    std::vector<ShortVector<S>> out;
    std::size_t visited = 0;

    // w2 = a2, w1 = a1 + l21 a2, w0 = a0 + l10 a1 + l20 a2;
    // Q = d0 w0^2 + d1 w1^2 + d2 w2^2. Enumerate the half-space with the
    // last nonzero coefficient positive; signs are canonicalized after
    // mapping back through the reduction transform.
    auto emit = [&](long long a0, long long a1, long long a2) {
        if (++visited > cap) throw RadiusTooLarge("enumeration exceeded cap");
        Coeff a;
        a << a0, a1, a2;
        Coeff orig = canonical_sign(Coeff(red.transform * a));
        S n = norm_sq(gram, orig);
        if (n <= radius_sq && n > S(0)) out.push_back({orig, n});
    };

    auto scan_a0 = [&](long long a1, long long a2, const S& rem, bool zero_prefix) {
        const S c0 = -(f.l10 * S(a1) + f.l20 * S(a2));
        const long long base = zero_prefix ? 0 : floor_ll(c0);
        if (!zero_prefix) {
            for (long long a0 = base;; --a0) {
                const S w = S(a0) - c0;
                const S q = f.d[0] * w * w;
                if (!(q <= rem)) break;
                emit(a0, a1, a2);
            }
        }
        for (long long a0 = base + 1;; ++a0) {
            const S w = S(a0) - c0;
            const S q = f.d[0] * w * w;
            if (!(q <= rem)) break;
            emit(a0, a1, a2);
        }
    };

    auto scan_a1 = [&](long long a2, const S& rem, bool zero_prefix) {
        const S c1 = -(f.l21 * S(a2));
        const long long base = zero_prefix ? 0 : floor_ll(c1);
        if (!zero_prefix) {
            for (long long a1 = base;; --a1) {
                const S w = S(a1) - c1;
                const S q = f.d[1] * w * w;
                if (!(q <= rem)) break;
                scan_a0(a1, a2, rem - q, false);
            }
            for (long long a1 = base + 1;; ++a1) {
                const S w = S(a1) - c1;
                const S q = f.d[1] * w * w;
                if (!(q <= rem)) break;
                scan_a0(a1, a2, rem - q, false);
            }
        } else {
            // a2 == 0: keep a1 >= 0; a1 == 0 forces a0 >= 1.
            scan_a0(0, a2, rem, true);
            for (long long a1 = 1;; ++a1) {
                const S q = f.d[1] * S(a1) * S(a1);
                if (!(q <= rem)) break;
                scan_a0(a1, a2, rem - q, false);
            }
        }
    };

    for (long long a2 = 0;; ++a2) {
        const S q = f.d[2] * S(a2) * S(a2);
        if (!(q <= budget)) break;
        scan_a1(a2, budget - q, a2 == 0);
    }

    std::sort(out.begin(), out.end(), canonical_before<S>);
    return out;
}

// ---------------------------------------------------------------------------
// Successive minima and friends

template <class S>
SuccessiveMinima<S> successive_minima(const GramMat<S>& gram) {
    if (!is_positive_definite(gram)) throw SingularBasis("gram matrix is not positive definite");
    const PairwiseReduced<S> red = pairwise_reduce<S>(gram);
    // Radii to try: the reduced diagonal entries, smallest first. The
    // largest one always contains three independent vectors (the reduced
    // basis itself), so the loop terminates.
    std::array<S, 3> radii{red.gram(0, 0), red.gram(1, 1), red.gram(2, 2)};
    std::sort(radii.begin(), radii.end());

    std::vector<Coeff> picked;
    std::vector<S> norms;
    for (const S& radius : radii) {
        picked.clear();
        norms.clear();
        for (const ShortVector<S>& sv : enumerate_short_vectors(gram, radius)) {
            bool ok = false;
            switch (picked.size()) {
                case 0: ok = true; break;
                case 1: ok = independent_pair(picked[0], sv.coeffs); break;
                case 2: ok = independent_triple(picked[0], picked[1], sv.coeffs); break;
                default: break;
            }
            if (ok) {
                picked.push_back(sv.coeffs);
                norms.push_back(sv.norm_sq);
            }
            if (picked.size() == 3) break;
        }
        if (picked.size() == 3) break;
    }
    if (picked.size() != 3) throw Error("internal: fewer than three independent vectors found");

    SuccessiveMinima<S> m;
    for (int i = 0; i < 3; ++i) {
        m.witnesses.col(i) = picked[static_cast<std::size_t>(i)];
        m.norm_sq[static_cast<std::size_t>(i)] = norms[static_cast<std::size_t>(i)];
    }
    // Rank-3 guarantee: minima-attaining independent vectors form a basis.
    if (std::llabs(det3(m.witnesses)) != 1)
        throw Error("internal: minima witnesses do not form a basis");
    return m;
}

template <class S>
MinimalVectorSet<S> minimal_vector_set(const GramMat<S>& gram) {
    const SuccessiveMinima<S> m = successive_minima(gram);
    const S lambda1_sq = m.norm_sq[0];
    S radius = lambda1_sq;
    if constexpr (std::is_floating_point_v<S>) radius += S(1e-9) * lambda1_sq;

    MinimalVectorSet<S> set;
    set.norm_sq = lambda1_sq;
    for (const ShortVector<S>& sv : enumerate_short_vectors(gram, radius)) {
        bool minimal;
        if constexpr (std::is_floating_point_v<S>) {
            minimal = std::abs(to_double(sv.norm_sq) - to_double(lambda1_sq)) <=
                      1e-9 * to_double(lambda1_sq);
        } else {
            minimal = sv.norm_sq == lambda1_sq;
        }
        if (minimal) {
            set.vectors.push_back(sv.coeffs);
            set.vectors.push_back(-sv.coeffs);
        }
    }
    return set;
}

// lambda_3 / lambda_1 <= 1 + rel_tol. rel_tol = 0 demands exact equality
// and is meaningful for the Rational instantiation.
template <class S>
bool is_well_rounded(const GramMat<S>& gram, double rel_tol) {
    if (rel_tol < 0) throw DomainError("rel_tol must be nonnegative");
    const SuccessiveMinima<S> m = successive_minima(gram);
    if (rel_tol == 0) return m.norm_sq[2] == m.norm_sq[0];
    return m.lambda(2) <= m.lambda(0) * (1.0 + rel_tol);
}

// Gram matrix of the witness basis, exact in S.
template <class S>
GramMat<S> witness_gram(const GramMat<S>& gram, const CoeffMat& witnesses) {
    GramMat<S> h;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            S acc(0);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    acc += S(witnesses(a, i)) * gram(a, b) * S(witnesses(b, j));
            h(i, j) = acc;
            h(j, i) = acc;
        }
    }
    return h;
}

template <class S>
Eigen::Matrix3d to_double_gram(const GramMat<S>& g) {
    Eigen::Matrix3d d;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d(i, j) = to_double(g(i, j));
    return d;
}

}  // namespace solidangle
