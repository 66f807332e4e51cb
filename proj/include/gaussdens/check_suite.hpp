#pragma once

/**
 * @file check_suite.hpp
 * @brief Invariant suite over the golden corpus, as run by `gaussdens check`.
 *
 * Rows come out in a fixed order and every number is printed with 17
 * significant digits, so the CSV is byte-identical across runs and worker
 * counts. No timings go into the report.
 */

#include "gaussdens/estimator.hpp"

#include <string>
#include <vector>

namespace gaussdens {

struct CheckRow {
    std::string check;    ///< e.g. "exact", "round-trip", "translation"
    std::string subject;  ///< corpus name, plus a variant suffix
    std::string expected;
    std::string observed;
    std::string tolerance;  ///< empty for exact comparisons
    bool pass = false;
};

struct CheckOptions {
    EstimatorConfig estimator;
    unsigned workers = 0;
    /// Skip the estimator-based rows (exact and oracle rows only).
    bool exact_only = false;
};

std::vector<CheckRow> run_check_suite(const CheckOptions& options);

/// Header "check,subject,expected,observed,tolerance,pass" plus one line per row.
std::string check_rows_csv(const std::vector<CheckRow>& rows);

}  // namespace gaussdens
