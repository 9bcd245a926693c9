#include "pkadapt/values.hpp"

#include "pkadapt/io_util.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pkadapt {

namespace {

const char* kPlusMinusUtf8 = "\xc2\xb1";  // U+00B1
const char* kEnDashUtf8 = "\xe2\x80\x93";  // U+2013

// Strict number parse with decimal-comma support. A cell mixing ',' and '.'
// or holding several commas reads as thousands grouping and is rejected.
std::optional<double> parse_number(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) return std::nullopt;
  const std::size_t commas = static_cast<std::size_t>(
      std::count(text.begin(), text.end(), ','));
  if (commas > 0) {
    if (commas > 1 || text.find('.') != std::string::npos) {
      return std::nullopt;  // thousands separators are ambiguous
    }
    text[text.find(',')] = '.';
  }
  return parse_double(text);
}

std::optional<std::size_t> find_token(const std::string& s, const char* token) {
  const auto pos = s.find(token);
  return pos == std::string::npos ? std::nullopt : std::optional<std::size_t>(pos);
}

// Range separator: en dash anywhere, or a hyphen that is neither leading
// nor part of an exponent ("1.2e-3").
std::optional<std::pair<std::size_t, std::size_t>> find_range_separator(const std::string& s) {
  if (auto pos = find_token(s, kEnDashUtf8)) {
    return std::make_pair(*pos, *pos + 3);
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] != '-') continue;
    const char prev = s[i - 1];
    if (prev == 'e' || prev == 'E') continue;
    return std::make_pair(i, i + 1);
  }
  return std::nullopt;
}

[[noreturn]] void fail(const std::string& cell) {
  throw std::invalid_argument("unparseable value cell: '" + cell + "'");
}

}  // namespace

ParsedValue parse_value(const std::string& cell) {
  const std::string text = trim(cell);
  ParsedValue out;

  const std::string lowered = to_lower(text);
  if (text.empty() || lowered == "nd" || lowered == "na" || lowered == "n/a") {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.qualifier = ValueQualifier::missing;
    return out;
  }

  if (text.front() == '<') {
    const auto v = parse_number(text.substr(1));
    if (!v) fail(cell);
    out.value = *v;
    out.qualifier = ValueQualifier::below_loq;
    return out;
  }

  // "a ± b" or "a +/- b"
  std::size_t pm_pos = std::string::npos, pm_len = 0;
  if (auto pos = find_token(text, kPlusMinusUtf8)) {
    pm_pos = *pos;
    pm_len = 2;
  } else if (auto pos2 = find_token(text, "+/-")) {
    pm_pos = *pos2;
    pm_len = 3;
  }
  if (pm_pos != std::string::npos) {
    const auto v = parse_number(text.substr(0, pm_pos));
    const auto sd = parse_number(text.substr(pm_pos + pm_len));
    if (!v || !sd || *sd < 0.0) fail(cell);
    out.value = *v;
    out.error_sd = *sd;
    out.qualifier = ValueQualifier::exact;
    return out;
  }

  if (const auto plain = parse_number(text)) {
    out.value = *plain;
    out.qualifier = ValueQualifier::exact;
    return out;
  }

  if (auto sep = find_range_separator(text)) {
    const auto lo = parse_number(text.substr(0, sep->first));
    const auto hi = parse_number(text.substr(sep->second));
    if (lo && hi) {
      out.value = 0.5 * (*lo + *hi);
      out.qualifier = ValueQualifier::range_midpoint;
      return out;
    }
  }

  fail(cell);
}

bool is_numeric_cell(const std::string& cell) {
  try {
    return parse_value(cell).qualifier != ValueQualifier::missing;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string to_string(ValueQualifier q) {
  switch (q) {
    case ValueQualifier::exact: return "exact";
    case ValueQualifier::below_loq: return "below_loq";
    case ValueQualifier::range_midpoint: return "range_midpoint";
    case ValueQualifier::missing: return "missing";
  }
  return "missing";
}

}  // namespace pkadapt
