#pragma once

// Small CSV helpers shared by the report writers.

#include <string>
#include <string_view>
#include <vector>

namespace gaussdens {

/// %.17g, so that a double survives a text round trip.
std::string format_double(double v);

/// Quotes a field when it holds a comma, quote or newline.
std::string csv_field(std::string_view v);

/// Comma-joined fields, each passed through csv_field; no trailing newline.
std::string csv_join(const std::vector<std::string>& fields);

}  // namespace gaussdens
