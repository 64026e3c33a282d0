/**
 * exm — exact measure/integration kernel, command-line front end.
 *
 * Exit codes: 0 success (and, for `check`, no failing entry); 1 a check
 * suite reported a failure; 2 malformed input (files, literals, flags
 * that violate a documented precondition).
 */

#include "CLI11.hpp"
#include "exmeasure/completion.hpp"
#include "exmeasure/ground_set.hpp"
#include "exmeasure/pairing.hpp"
#include "exmeasure/premeasure.hpp"
#include "exmeasure/simple_function.hpp"
#include "exmeasure/space_io.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_check(const std::string& path, const std::string& suite, const exm::CheckConfig& config) {
    const exm::SpacePtr space = exm::space_from_json(slurp(path));
    exm::Report combined;
    combined.suite = suite;
    if (suite == "algebra" || suite == "all")
        combined.merge(exm::check_complemented_algebra(space->ground()));
    if (suite == "pms" || suite == "all") combined.merge(exm::check_pms(space, config));
    if (suite == "pis-simple" || suite == "all")
        combined.merge(exm::check_pis_simple(space, config));
    if (suite == "pis-complete" || suite == "all")
        combined.merge(exm::check_pis_completion(space, config));
    std::cout << combined.to_json_string() << "\n";
    return combined.ok() ? 0 : 1;
}

int run_integrate(const std::string& path, const std::string& simple_literal,
                  const std::string& rep_literal, long precision) {
    const exm::SpacePtr space = exm::space_from_json(slurp(path));
    if (!simple_literal.empty()) {
        const exm::SimpleFunction v = exm::simple_from_json(space, simple_literal);
        std::cout << exm::print_rational(integral(v)) << "\n";
        return 0;
    }
    const exm::Representation a = exm::rep_from_json(space, rep_literal);
    if (a.support_hint)
        std::cout << exm::print_rational(exm::integral_exact(a)) << "\n";
    else
        std::cout << exm::print_real(exm::integral_rep(a), precision) << "\n";
    return 0;
}

int run_norm(const std::string& path, const std::string& rep_literal, long precision) {
    const exm::SpacePtr space = exm::space_from_json(slurp(path));
    const exm::Representation a = exm::rep_from_json(space, rep_literal);
    if (a.support_hint)
        std::cout << exm::print_rational(exm::norm1_exact(a)) << "\n";
    else
        std::cout << exm::print_real(exm::norm1(a), precision) << "\n";
    return 0;
}

int run_pair(const std::vector<std::int64_t>& values, bool inverse) {
    if (inverse) {
        if (values.size() != 1)
            throw std::invalid_argument("pair --inverse takes exactly one position");
        const auto [n, k] = exm::unpair1(values[0]);
        std::cout << "(" << n << "," << k << ")\n";
        return 0;
    }
    if (values.size() != 2) throw std::invalid_argument("pair takes two indices n k");
    std::cout << exm::pair1(values[0], values[1]) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pre-measure spaces, simple functions, and their completion"};
    app.require_subcommand(1);

    std::string check_file, suite = "all";
    long precision = 16;
    std::uint64_t seed = 1;
    int max_ground = 4;
    auto* check = app.add_subcommand("check", "run axiom suites against a space description");
    check->add_option("space_file", check_file, "JSON space description")->required();
    check->add_option("--suite", suite, "pms | pis-simple | pis-complete | algebra | all")
        ->check(CLI::IsMember({"pms", "pis-simple", "pis-complete", "algebra", "all"}));
    check->add_option("--precision", precision, "bounded checks run at radius 2^-precision");
    check->add_option("--seed", seed, "PRNG seed for sampled invariants");
    check->add_option("--max-ground", max_ground, "refuse exhaustive sweeps beyond this size");

    std::string int_file, int_simple, int_rep;
    long int_precision = 16;
    auto* integrate = app.add_subcommand("integrate", "integrate a simple function or a stream");
    integrate->add_option("space_file", int_file, "JSON space description")->required();
    integrate->add_option("--simple", int_simple, "simple-function literal");
    integrate->add_option("--rep", int_rep, "representation literal");
    integrate->add_option("--precision", int_precision, "radius for approximate results");

    std::string norm_file, norm_rep;
    long norm_precision = 16;
    auto* norm = app.add_subcommand("norm", "1-norm of a representation");
    norm->add_option("space_file", norm_file, "JSON space description")->required();
    norm->add_option("--rep", norm_rep, "representation literal")->required();
    norm->add_option("--precision", norm_precision, "radius for approximate results");

    std::vector<std::int64_t> pair_values;
    bool pair_inverse = false;
    auto* pair = app.add_subcommand("pair", "diagonal enumeration of index pairs (1-based)");
    pair->add_option("values", pair_values, "n k (or a single position with --inverse)")
        ->expected(1, 2);
    pair->add_flag("--inverse", pair_inverse, "decode a position back to its pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage problems share the parse-error exit code; --help stays 0
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) {
            exm::CheckConfig config;
            config.precision = precision;
            config.seed = seed;
            config.max_ground = max_ground;
            return run_check(check_file, suite, config);
        }
        if (*integrate) {
            if (int_simple.empty() == int_rep.empty())
                throw std::invalid_argument("integrate needs exactly one of --simple / --rep");
            return run_integrate(int_file, int_simple, int_rep, int_precision);
        }
        if (*norm) return run_norm(norm_file, norm_rep, norm_precision);
        if (*pair) return run_pair(pair_values, pair_inverse);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
