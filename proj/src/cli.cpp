#include "solidangle/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "solidangle/io.hpp"

namespace solidangle::cli {

namespace {

struct InputSpec {
    std::string path;
    std::string inline_gram;
};

void add_input_options(CLI::App* cmd, InputSpec& spec) {
    auto* file = cmd->add_option("basis", spec.path,
                                 "basis text file ('N 3' header) or gram JSON file");
    auto* inl = cmd->add_option("--gram", spec.inline_gram,
                                "inline gram matrix \"g11,g12,g13;g21,g22,g23;g31,g32,g33\"");
    file->excludes(inl);
}

GramInput load_input(const InputSpec& spec) {
    if (!spec.inline_gram.empty()) return parse_gram_inline(spec.inline_gram);
    if (spec.path.empty()) throw ParseError("no input: give a basis file or --gram");
    std::ifstream in(spec.path);
    if (!in) throw ParseError("cannot open '" + spec.path + "'");
    // Gram JSON files start with '{'; everything else is basis text.
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        in.get();
        c = in.peek();
    }
    if (c == '{') return parse_gram_json(in);
    return parse_basis_text(in);
}

struct ModelOptions {
    std::string model = "WR_REJECTION";
    int dimension = 3;
    double entry_range = 1.0;
    long long int_range = 4;
    double perturbation = 0.1;

    LatticeModel build() const {
        LatticeModel m;
        m.kind = lattice_kind_from_string(model);
        m.dimension = dimension;
        m.entry_range = entry_range;
        m.int_range = int_range;
        m.perturbation = perturbation;
        return m;
    }
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
    cmd->add_option("--model", opts.model,
                    "UNIFORM_BASIS | WR_REJECTION | NEAR_FCC | NEAR_CUBIC | INTEGER_SMALL")
        ->capture_default_str();
    cmd->add_option("--dim", opts.dimension, "ambient dimension N")->capture_default_str();
    cmd->add_option("--range", opts.entry_range, "entry range for UNIFORM_BASIS")
        ->capture_default_str();
    cmd->add_option("--int-range", opts.int_range, "entry range for INTEGER_SMALL")
        ->capture_default_str();
    cmd->add_option("--perturbation", opts.perturbation, "noise scale (0 = exact base)")
        ->capture_default_str();
}

void emit(std::ostream& out, const Json& j, const std::string& format,
          const std::string& table) {
    if (format == "table") {
        out << table;
    } else {
        out << j.dump() << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimal bases, vertex angles and solid angles of rank-3 lattices"};
    app.require_subcommand(1);
    // Let --format appear after the subcommand as well.
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "json | table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    InputSpec reduce_in, angles_in, omega_in, classify_in;
    double angle_tol = kAngleTol;

    auto* reduce_cmd = app.add_subcommand("reduce", "normalized minimal basis of a lattice");
    add_input_options(reduce_cmd, reduce_in);
    reduce_cmd->add_option("--angle-tol", angle_tol, "angle-window tolerance (radians)")
        ->capture_default_str();

    auto* angles_cmd = app.add_subcommand("angles", "vertex angles of the basis as given");
    add_input_options(angles_cmd, angles_in);

    auto* omega_cmd = app.add_subcommand("omega", "solid angle of the basis as given");
    add_input_options(omega_cmd, omega_in);
    std::string method = "lhuilier";
    std::string units = "normalized";
    std::size_t samples = 1'000'000;
    std::uint64_t mc_seed = 0;
    omega_cmd->add_option("--method", method, "lhuilier | oosterom | mc")
        ->check(CLI::IsMember({"lhuilier", "oosterom", "mc"}))
        ->capture_default_str();
    omega_cmd->add_option("--units", units, "normalized | steradians (table output)")
        ->check(CLI::IsMember({"normalized", "steradians"}))
        ->capture_default_str();
    omega_cmd->add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
    omega_cmd->add_option("--seed", mc_seed, "Monte Carlo seed")->capture_default_str();

    auto* classify_cmd = app.add_subcommand("classify", "solid-angle bound report for a lattice");
    add_input_options(classify_cmd, classify_in);

    auto* verify_cmd = app.add_subcommand("verify", "population checks: main3 | sparea");
    std::string which_verify;
    verify_cmd->add_option("which", which_verify, "main3 | sparea")
        ->required()
        ->check(CLI::IsMember({"main3", "sparea"}));
    ModelOptions verify_model;
    add_model_options(verify_cmd, verify_model);
    std::size_t verify_n = 1000;
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("--n", verify_n, "population size")->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "population seed")->capture_default_str();

    auto* scan_cmd = app.add_subcommand("scan", "monotonicity grid scan over domain A..E");
    std::string domain;
    int grid = 64;
    scan_cmd->add_option("domain", domain, "A | B | C | D | E")->required();
    scan_cmd->add_option("--grid", grid, "points per axis")->capture_default_str();

    auto* gen_cmd = app.add_subcommand("gen", "generate a basis file from a lattice model");
    ModelOptions gen_model;
    add_model_options(gen_cmd, gen_model);
    std::uint64_t gen_seed = 0;
    std::uint64_t gen_index = 0;
    std::string gen_out;
    gen_cmd->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("--index", gen_index, "population index")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "output path (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (reduce_cmd->parsed()) {
            const GramInput in = load_input(reduce_in);
            const ReducedBasis rb = in.exact ? normalize_minimal_basis<Rational>(in.gram_q, angle_tol)
                                             : normalize_minimal_basis<double>(in.gram_d, angle_tol);
            std::ostringstream table;
            table << "angles : t12=" << rb.angles.t12 << " t13=" << rb.angles.t13
                  << " t23=" << rb.angles.t23 << "\nflips  : [" << rb.flips.s2 << ", "
                  << rb.flips.s3 << "]\n";
            emit(out, to_json(rb), format, table.str());
        } else if (angles_cmd->parsed()) {
            const GramInput in = load_input(angles_in);
            const VertexAngles a = vertex_angles(in.gram_d);
            std::ostringstream table;
            table << "t12 : " << a.t12 << "\nt13 : " << a.t13 << "\nt23 : " << a.t23 << "\n";
            emit(out, to_json(a), format, table.str());
        } else if (omega_cmd->parsed()) {
            const GramInput in = load_input(omega_in);
            Json j;
            SolidAngle value{};
            if (method == "lhuilier") {
                value = lhuilier_solid_angle(vertex_angles(in.gram_d));
                j = to_json(value);
            } else if (method == "oosterom") {
                value = oosterom_solid_angle(in.gram_d);
                j = to_json(value);
            } else {
                const MonteCarloEstimate mc = monte_carlo_solid_angle(in.gram_d, samples, mc_seed);
                value = mc.estimate;
                j = to_json(mc.estimate);
                j["stderr"] = mc.stderr_value;
                j["samples"] = mc.samples;
            }
            std::ostringstream table;
            if (units == "steradians") {
                table << value.steradians << " sr\n";
            } else {
                table << value.normalized << "\n";
            }
            emit(out, j, format, table.str());
        } else if (classify_cmd->parsed()) {
            const GramInput in = load_input(classify_in);
            const BoundReport report = in.exact ? classify_and_bound<Rational>(in.gram_q)
                                                : classify_and_bound<double>(in.gram_d);
            emit(out, to_json(report), format, format_table(report));
        } else if (verify_cmd->parsed()) {
            VerificationReport report;
            if (which_verify == "main3") {
                report = verify_theorem_main3(verify_model.build(), verify_n, verify_seed);
            } else {
                report = verify_sp_area(verify_n, verify_seed);
            }
            emit(out, to_json(report), format, format_table(report));
            return report.violations.empty() ? 0 : 1;
        } else if (scan_cmd->parsed()) {
            const VerificationReport report =
                scan_monotonicity(scan_domain_from_string(domain), grid);
            emit(out, to_json(report), format, format_table(report));
            return report.violations.empty() ? 0 : 1;
        } else if (gen_cmd->parsed()) {
            const Eigen::MatrixXd basis = gen_lattice(gen_model.build(), gen_seed, gen_index);
            bool integral = true;
            for (int r = 0; r < basis.rows() && integral; ++r)
                for (int c = 0; c < 3 && integral; ++c)
                    integral = basis(r, c) == std::round(basis(r, c));
            if (gen_out.empty()) {
                write_basis_text(out, basis, integral);
            } else {
                std::ofstream file(gen_out);
                if (!file) throw ParseError("cannot write '" + gen_out + "'");
                write_basis_text(file, basis, integral);
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace solidangle::cli
