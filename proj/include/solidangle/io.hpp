#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "solidangle/bounds.hpp"
#include "solidangle/harness.hpp"

namespace solidangle {

using Json = nlohmann::ordered_json;

// Lattice input, either exact (all entries integer or p/q literals) or
// double precision. The double mirror is always populated.
struct GramInput {
    bool exact = false;
    GramMat<Rational> gram_q;
    Eigen::Matrix3d gram_d = Eigen::Matrix3d::Zero();
    // Present when the input was a basis file rather than a Gram matrix.
    bool has_basis = false;
    Eigen::MatrixXd basis_d;
};

// Basis text format: line 1 is "N 3"; the next 3 lines hold one basis
// vector each as N whitespace-separated decimals or rational literals p/q.
GramInput parse_basis_text(std::istream& in);

// {"gram": [[...],[...],[...]]}; exact when every entry is a JSON integer.
GramInput parse_gram_json(std::istream& in);

// Inline Gram "g11,g12,g13;g21,g22,g23;g31,g32,g33".
GramInput parse_gram_inline(const std::string& text);

void write_basis_text(std::ostream& out, const Eigen::MatrixXd& basis, bool integer_entries);

Json to_json(const VertexAngles& angles);
Json to_json(const MinimaRatios& ratios);
Json to_json(const SolidAngle& omega);
Json to_json(const ReducedBasis& rb);
Json to_json(const BoundReport& report);
Json to_json(const VerificationReport& report);

std::string format_table(const VerificationReport& report);
std::string format_table(const BoundReport& report);

const char* to_string(Branch branch);
LatticeKind lattice_kind_from_string(const std::string& name);
ScanDomain scan_domain_from_string(const std::string& name);

}  // namespace solidangle
