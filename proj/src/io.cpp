#include "solidangle/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace solidangle {

namespace {

bool is_exact_token(const std::string& token) {
    return token.find_first_of(".eE") == std::string::npos ||
           token.find('/') != std::string::npos;
}

double parse_double_token(const std::string& token) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw ParseError("invalid number '" + token + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + token + "'");
    }
}

// Shortest round-trip decimal form, at most 17 significant digits.
std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void validate_gram(GramInput& in) {
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (in.exact) {
                if (in.gram_q(i, j) != in.gram_q(j, i))
                    throw ParseError("gram matrix is not symmetric");
            } else if (in.gram_d(i, j) != in.gram_d(j, i)) {
                throw ParseError("gram matrix is not symmetric");
            }
        }
    }
    const bool pd = in.exact ? is_positive_definite<Rational>(in.gram_q)
                             : is_positive_definite<double>(in.gram_d);
    if (!pd) throw SingularBasis("gram matrix is not positive definite");
}

}  // namespace

GramInput parse_basis_text(std::istream& in) {
    long long n = 0, r = 0;
    if (!(in >> n >> r)) throw ParseError("missing 'N 3' header line");
    if (r != 3) throw ParseError("rank must be 3");
    if (n < 3) throw ParseError("ambient dimension must be at least 3");
    if (n > 4096) throw ParseError("ambient dimension too large");

    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(3 * n));
    for (long long k = 0; k < 3 * n; ++k) {
        std::string t;
        if (!(in >> t)) throw ParseError("expected 3 basis vectors with " + std::to_string(n) +
                                         " entries each");
        tokens.push_back(t);
    }

    GramInput out;
    out.exact = std::all_of(tokens.begin(), tokens.end(),
                            [](const std::string& t) { return is_exact_token(t); });
    out.has_basis = true;
    out.basis_d.resize(n, 3);
    BasisMat<Rational> basis_q;
    if (out.exact) basis_q.resize(n, 3);
    // File rows are basis vectors; they become matrix columns.
    for (long long v = 0; v < 3; ++v) {
        for (long long e = 0; e < n; ++e) {
            const std::string& t = tokens[static_cast<std::size_t>(v * n + e)];
            if (out.exact) {
                const Rational q = parse_rational(t);
                basis_q(e, v) = q;
                out.basis_d(e, v) = to_double(q);
            } else {
                out.basis_d(e, v) = parse_double_token(t);
            }
        }
    }
    if (out.exact) {
        out.gram_q = gram_from_basis<Rational>(basis_q);
        out.gram_d = to_double_gram(out.gram_q);
    } else {
        out.gram_d = gram_from_basis<double>(BasisMat<double>(out.basis_d));
    }
    return out;
}

GramInput parse_gram_json(std::istream& in) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("gram") || !j["gram"].is_array() || j["gram"].size() != 3)
        throw ParseError("expected {\"gram\": [[...],[...],[...]]}");
    GramInput out;
    out.exact = true;
    for (int i = 0; i < 3; ++i) {
        const Json& row = j["gram"][static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 3) throw ParseError("gram rows must have 3 entries");
        for (int k = 0; k < 3; ++k) {
            const Json& cell = row[static_cast<std::size_t>(k)];
            if (!cell.is_number()) throw ParseError("gram entries must be numbers");
            if (!cell.is_number_integer()) out.exact = false;
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            const Json& cell = j["gram"][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            out.gram_d(i, k) = cell.get<double>();
            if (out.exact) out.gram_q(i, k) = Rational(cell.get<long long>());
        }
    }
    validate_gram(out);
    return out;
}

GramInput parse_gram_inline(const std::string& text) {
    std::vector<std::vector<std::string>> rows(1);
    std::string token;
    auto push_token = [&] {
        if (!token.empty()) {
            rows.back().push_back(token);
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ';') {
            push_token();
            rows.emplace_back();
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            push_token();
        } else {
            token.push_back(c);
        }
    }
    push_token();
    if (rows.size() != 3 || rows[0].size() != 3 || rows[1].size() != 3 || rows[2].size() != 3)
        throw ParseError("inline gram must be 3 rows of 3 entries, rows separated by ';'");

    GramInput out;
    out.exact = true;
    for (const auto& row : rows)
        for (const auto& t : row) out.exact = out.exact && is_exact_token(t);
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            const std::string& t = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (out.exact) {
                out.gram_q(i, k) = parse_rational(t);
                out.gram_d(i, k) = to_double(out.gram_q(i, k));
            } else {
                out.gram_d(i, k) = parse_double_token(t);
            }
        }
    }
    validate_gram(out);
    return out;
}

void write_basis_text(std::ostream& out, const Eigen::MatrixXd& basis, bool integer_entries) {
    out << basis.rows() << " " << basis.cols() << "\n";
    for (int v = 0; v < basis.cols(); ++v) {
        for (int e = 0; e < basis.rows(); ++e) {
            if (e > 0) out << " ";
            if (integer_entries) {
                out << static_cast<long long>(std::llround(basis(e, v)));
            } else {
                out << format_double(basis(e, v));
            }
        }
        out << "\n";
    }
}

Json to_json(const VertexAngles& a) {
    return Json{{"t12", a.t12}, {"t13", a.t13}, {"t23", a.t23}};
}

Json to_json(const MinimaRatios& r) {
    return Json{{"k12", r.k12}, {"k23", r.k23}, {"k13", r.k13}};
}

Json to_json(const SolidAngle& omega) {
    return Json{{"normalized", omega.normalized}, {"steradians", omega.steradians}};
}

Json to_json(const ReducedBasis& rb) {
    Json gram = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 3; ++j) row.push_back(rb.gram(i, j));
        gram.push_back(row);
    }
    return Json{{"gram", gram},
                {"angles", to_json(rb.angles)},
                {"ratios", to_json(rb.ratios)},
                {"flips", Json::array({rb.flips.s2, rb.flips.s3})}};
}

Json to_json(const BoundReport& report) {
    Json j{{"branch", to_string(report.branch)},
           {"omega", to_json(report.omega)},
           {"lower", report.lower},
           {"upper", report.upper},
           {"within_bounds", report.within_bounds}};
    Json details{{"angles", to_json(report.angles)},
                 {"ratios", to_json(report.ratios)},
                 {"flips", Json::array({report.flips.s2, report.flips.s3})}};
    if (report.nu) details["nu"] = *report.nu;
    j["details"] = details;
    return j;
}

Json to_json(const VerificationReport& report) {
    Json violations = Json::array();
    for (const Violation& v : report.violations) {
        violations.push_back(
            Json{{"lattice", v.lattice}, {"invariant", v.invariant}, {"margin", v.margin}});
    }
    Json j{{"name", report.name},
           {"population", report.population},
           {"seed", report.seed},
           {"violations", violations},
           {"extremes", Json{{"name", report.extreme_name},
                             {"min", report.min_value},
                             {"max", report.max_value},
                             {"min_witness", report.min_witness}}},
           {"evaluations", report.evaluations},
           {"skipped", report.skipped}};
    if (report.branch_wr + report.branch_non_wr > 0) {
        j["branches"] = Json{{"wr_condition", report.branch_wr}, {"non_wr", report.branch_non_wr}};
    }
    return j;
}

std::string format_table(const VerificationReport& report) {
    std::ostringstream os;
    os << "report        : " << report.name << "\n"
       << "population    : " << report.population << "\n"
       << "seed          : " << report.seed << "\n"
       << "evaluations   : " << report.evaluations << "\n"
       << "skipped       : " << report.skipped << "\n"
       << report.extreme_name << " min : " << format_double(report.min_value) << "  ("
       << report.min_witness << ")\n"
       << report.extreme_name << " max : " << format_double(report.max_value) << "\n";
    if (report.branch_wr + report.branch_non_wr > 0) {
        os << "branches      : wr_condition=" << report.branch_wr
           << " non_wr=" << report.branch_non_wr << "\n";
    }
    os << "violations    : " << report.violations.size() << "\n";
    for (const Violation& v : report.violations) {
        os << "  " << v.invariant << "  margin=" << format_double(v.margin) << "  [" << v.lattice
           << "]\n";
    }
    return os.str();
}

std::string format_table(const BoundReport& report) {
    std::ostringstream os;
    os << "branch        : " << to_string(report.branch) << "\n"
       << "omega         : " << format_double(report.omega.normalized) << " (normalized), "
       << format_double(report.omega.steradians) << " sr\n"
       << "lower bound   : " << format_double(report.lower) << "\n"
       << "upper bound   : " << format_double(report.upper) << "\n"
       << "within bounds : " << (report.within_bounds ? "yes" : "no") << "\n"
       << "angles        : t12=" << format_double(report.angles.t12)
       << " t13=" << format_double(report.angles.t13)
       << " t23=" << format_double(report.angles.t23) << "\n"
       << "ratios        : k12=" << format_double(report.ratios.k12)
       << " k23=" << format_double(report.ratios.k23)
       << " k13=" << format_double(report.ratios.k13) << "\n";
    if (report.nu) os << "nu            : " << format_double(*report.nu) << "\n";
    return os.str();
}

const char* to_string(Branch branch) {
    return branch == Branch::WrCondition ? "WR_CONDITION" : "NON_WR";
}

LatticeKind lattice_kind_from_string(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "UNIFORM_BASIS" || up == "UNIFORM") return LatticeKind::UniformBasis;
    if (up == "WR_REJECTION" || up == "WR") return LatticeKind::WrRejection;
    if (up == "NEAR_FCC") return LatticeKind::NearFcc;
    if (up == "NEAR_CUBIC") return LatticeKind::NearCubic;
    if (up == "INTEGER_SMALL" || up == "INTEGER") return LatticeKind::IntegerSmall;
    throw ParseError("unknown lattice model '" + name + "'");
}

ScanDomain scan_domain_from_string(const std::string& name) {
    if (name.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(name[0]))) {
            case 'A': return ScanDomain::A;
            case 'B': return ScanDomain::B;
            case 'C': return ScanDomain::C;
            case 'D': return ScanDomain::D;
            case 'E': return ScanDomain::E;
            default: break;
        }
    }
    throw ParseError("unknown scan domain '" + name + "' (expected A..E)");
}

}  // namespace solidangle
