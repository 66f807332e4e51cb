#pragma once

/**
 * @file cli.hpp
 * @brief Command model and dispatch behind the gaussdens executable.
 *
 * Argument parsing lives in tools/; this layer takes an already-parsed
 * Command, runs it and writes the report, so it can be driven from tests.
 *
 * Exit codes: 0 success, 1 engine error (or a failed check/oracle run),
 * 2 parse or validation error, 3 non-convergent estimate under --strict.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gaussdens::cli {

enum class Format { table, csv, json };

struct Command {
    std::string subcommand;  ///< exact | estimate | compare | sweep | oracle | check
    std::string expression;  ///< unused by check

    std::optional<std::vector<double>> schedule;
    std::optional<double> eps;
    std::optional<std::uint64_t> budget;
    std::optional<int> degree;
    std::optional<Format> format;  ///< unset: inferred from --out, else table
    std::string out;               ///< empty writes to stdout
    bool strict = false;
    unsigned workers = 0;

    std::optional<std::int64_t> side;  ///< oracle box side
    bool exact_only = false;           ///< check: skip estimator rows
};

/// "k0..k1" gives 1 + 0.5 * 2^-k for k = k0..k1; otherwise a comma list of s values.
std::vector<double> parse_schedule(std::string_view text);

Format parse_format(std::string_view text);

/// Applies one key=value setting; keys mirror the long flag names.
void apply_setting(Command& cmd, std::string_view key, std::string_view value);

/// Reads key=value lines; blank lines and lines starting with '#' are skipped.
void apply_config_file(Command& cmd, const std::string& path);

/// Second file of the estimate CSV pair: "x.csv" -> "x.summary.csv".
std::string summary_path(const std::string& out);

/// Schedule used by sweep when none is given: 1 + 0.5 * 2^(-j/4), j = 0..24.
std::vector<double> dense_schedule();

int run(const Command& cmd, std::ostream& out, std::ostream& err);

}  // namespace gaussdens::cli
