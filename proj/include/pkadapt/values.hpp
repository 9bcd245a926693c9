#pragma once

#include <optional>
#include <string>

namespace pkadapt {

enum class ValueQualifier { exact, below_loq, range_midpoint, missing };

// One parsed measurement cell. "12.3 ± 4.5" keeps the spread in error_sd;
// "<0.5" reports the limit with below_loq; "1.2–3.4" reports the midpoint.
struct ParsedValue {
  double value = 0.0;  // NaN when missing
  std::optional<double> error_sd;
  ValueQualifier qualifier = ValueQualifier::missing;
};

// Accepts plain numbers (decimal comma allowed, thousands separators
// rejected), "a ± b" / "a +/- b", "<x", en-dash or hyphen ranges, and the
// missing markers ND / NA / N/A / empty. Throws std::invalid_argument with
// the raw text on anything else.
ParsedValue parse_value(const std::string& cell);

// True when the cell parses to a non-missing value.
bool is_numeric_cell(const std::string& cell);

std::string to_string(ValueQualifier q);

}  // namespace pkadapt
