#pragma once

/**
 * @file report.hpp
 * Structured pass/fail reporting for the axiom checkers.
 *
 * Results are plain data: every entry carries an id, a status, and an
 * optional counterexample as key/value pairs (exact rationals rendered
 * as strings, never floats). Reports serialize to deterministic JSON --
 * same inputs and seed give byte-identical output, which the CLI relies
 * on. JSON handling itself lives in the .cpp to keep this header light.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace exm {

struct CheckEntry {
    enum class Status { pass, sampled_pass, fail };
    std::string id;
    Status status = Status::pass;
    std::string detail;  // short human-readable note ("256 pairs", ...)
    std::vector<std::pair<std::string, std::string>> counterexample;
};

struct Report {
    std::string suite;
    std::vector<CheckEntry> entries;

    bool ok() const;

    void add_pass(std::string id, std::string detail = "");
    void add_sampled(std::string id, std::string detail = "");
    void add_fail(std::string id, std::string detail,
                  std::vector<std::pair<std::string, std::string>> counterexample = {});
    /// Append another report's entries, ids prefixed with its suite name.
    void merge(const Report& other);

    /// Deterministic JSON rendering (stable key order, 2-space indent).
    std::string to_json_string() const;
    /// One line: "<suite>: N checks, M failed".
    std::string summary() const;
};

/// Inverse of Report::to_json_string. Throws std::invalid_argument on
/// malformed input. to_json_string . from . to_json_string is identity.
Report report_from_json_string(const std::string& text);

/// Knobs shared by all checkers. Defaults match the CLI defaults.
struct CheckConfig {
    long precision = 16;      ///< bounded checks run at radius 2^-precision
    std::uint64_t seed = 1;   ///< PRNG seed for sampled invariants
    int max_ground = 4;       ///< exhaustive sweeps refuse larger ground sets
    int samples = 200;        ///< instances per sampled invariant
};

}  // namespace exm
