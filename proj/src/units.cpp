#include "pkadapt/units.hpp"

#include <cmath>
#include <cstdlib>

namespace pkadapt {

UnitParseError::UnitParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}

namespace {

struct BaseInfo {
  const char* symbol;
  BaseDimension dimension;
  double canonical_scale;  // scale of the unprefixed base to the canonical unit
};

// Longest symbols first so "min"/"mol" win over the prefix reading of 'm'.
// Canonical units: mg (mass), L (volume), h (time), mol (amount), kg (body mass).
constexpr BaseInfo kBases[] = {
    {"min", BaseDimension::time, 1.0 / 60.0},
    {"mol", BaseDimension::amount, 1.0},
    {"g", BaseDimension::mass, 1000.0},
    {"L", BaseDimension::volume, 1.0},
    {"l", BaseDimension::volume, 1.0},
    {"h", BaseDimension::time, 1.0},
    {"s", BaseDimension::time, 1.0 / 3600.0},
    {"d", BaseDimension::time, 24.0},
};

struct PrefixInfo {
  const char* symbol;
  int power;
};

constexpr PrefixInfo kPrefixes[] = {
    {"\xc2\xb5", -6},  // U+00B5 MICRO SIGN
    {"\xce\xbc", -6},  // U+03BC GREEK SMALL MU
    {"k", 3},
    {"m", -3},
    {"u", -6},
    {"n", -9},
};

bool starts_with(const std::string& s, std::size_t pos, const char* token) {
  const std::size_t len = std::char_traits<char>::length(token);
  return s.compare(pos, len, token) == 0;
}

double apply_power_of_ten(double scale, int power) {
  return scale * std::pow(10.0, power);
}

struct RawTerm {
  BaseDimension dimension;
  bool gram_based = false;
  bool is_kg = false;
  int prefix_power = 0;
  double scale = 1.0;  // prefixed base scale to its canonical unit, exponent +1
  int exponent = 1;    // as written, before slash negation
  std::size_t offset = 0;
};

RawTerm parse_term(const std::string& text, std::size_t begin, std::size_t end) {
  RawTerm term;
  term.offset = begin;
  std::size_t pos = begin;

  int prefix_power = 0;
  const char* prefix_symbol = nullptr;
  const BaseInfo* base = nullptr;

  // Prefer the bare-base reading; "min" must not parse as m+in.
  for (const auto& b : kBases) {
    if (starts_with(text, pos, b.symbol)) {
      base = &b;
      pos += std::char_traits<char>::length(b.symbol);
      break;
    }
  }
  if (base == nullptr) {
    for (const auto& p : kPrefixes) {
      if (starts_with(text, pos, p.symbol)) {
        const std::size_t after = pos + std::char_traits<char>::length(p.symbol);
        for (const auto& b : kBases) {
          if (starts_with(text, after, b.symbol)) {
            prefix_power = p.power;
            prefix_symbol = p.symbol;
            base = &b;
            pos = after + std::char_traits<char>::length(b.symbol);
            break;
          }
        }
        if (base != nullptr) break;
      }
    }
  }
  if (base == nullptr) {
    throw UnitParseError("unrecognized unit token '" + text.substr(begin, end - begin) + "'",
                         begin);
  }

  // Optional exponent: '^'? int
  int exponent = 1;
  if (pos < end) {
    std::size_t epos = pos;
    if (text[epos] == '^') ++epos;
    if (epos >= end) {
      throw UnitParseError("missing exponent after '^'", pos);
    }
    char* parsed_end = nullptr;
    const long value = std::strtol(text.c_str() + epos, &parsed_end, 10);
    const std::size_t consumed = static_cast<std::size_t>(parsed_end - text.c_str());
    if (parsed_end == text.c_str() + epos || consumed != end) {
      throw UnitParseError("unrecognized unit token '" + text.substr(begin, end - begin) + "'",
                           pos);
    }
    if (value == 0) {
      throw UnitParseError("zero exponent", epos);
    }
    exponent = static_cast<int>(value);
  }

  term.dimension = base->dimension;
  term.gram_based = base->dimension == BaseDimension::mass;
  term.is_kg = term.gram_based && prefix_symbol != nullptr && prefix_symbol[0] == 'k';
  term.prefix_power = prefix_power;
  term.scale = apply_power_of_ten(base->canonical_scale, prefix_power);
  term.exponent = exponent;
  return term;
}

}  // namespace

UnitExpression parse_unit(const std::string& text) {
  if (text.empty()) {
    throw UnitParseError("empty unit", 0);
  }
  UnitExpression expr;
  int slashes_seen = 0;
  bool next_negated = false;
  std::size_t i = 0;
  bool expect_term = true;

  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (expect_term) {
      // Collect the term up to the next separator or space.
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '/' && text[j] != '*' && text[j] != '.' &&
             !starts_with(text, j, "\xc2\xb7")) {
        ++j;
      }
      if (j == i) {
        throw UnitParseError("expected unit term", i);
      }
      RawTerm term = parse_term(text, i, j);
      int exponent = next_negated ? -term.exponent : term.exponent;

      BaseDimension dim = term.dimension;
      if (term.gram_based) {
        // Body mass: gram term after the second '/', or kg in a denominator.
        const bool after_second_slash = next_negated && slashes_seen >= 2;
        const bool kg_denominator = term.is_kg && exponent < 0;
        if (after_second_slash || kg_denominator) {
          dim = BaseDimension::body_mass;
          // Rebase from mg to kg: shift the unprefixed-gram scale by 10^-6.
          term.scale = apply_power_of_ten(term.scale, -6);
        }
      }

      UnitFactor factor;
      factor.dimension = dim;
      factor.si_prefix_power = term.prefix_power;
      factor.exponent = exponent;
      expr.factors.push_back(factor);

      double contribution = 1.0;
      const int abs_exp = exponent < 0 ? -exponent : exponent;
      for (int e = 0; e < abs_exp; ++e) contribution *= term.scale;
      if (exponent < 0) {
        expr.scale_to_canonical /= contribution;
      } else {
        expr.scale_to_canonical *= contribution;
      }

      i = j;
      expect_term = false;
      next_negated = false;
    } else {
      if (text[i] == '/') {
        ++slashes_seen;
        next_negated = true;
        ++i;
      } else if (text[i] == '*' || text[i] == '.') {
        ++i;
      } else if (starts_with(text, i, "\xc2\xb7")) {
        i += 2;
      } else {
        throw UnitParseError("expected separator", i);
      }
      expect_term = true;
    }
  }
  if (expect_term) {
    throw UnitParseError("dangling separator", text.size());
  }
  return expr;
}

std::map<BaseDimension, int> UnitExpression::canonical_dimensions() const {
  std::map<BaseDimension, int> dims;
  for (const auto& f : factors) {
    dims[f.dimension] += f.exponent;
  }
  for (auto it = dims.begin(); it != dims.end();) {
    if (it->second == 0) {
      it = dims.erase(it);
    } else {
      ++it;
    }
  }
  return dims;
}

bool UnitExpression::same_dimensions(const UnitExpression& other) const {
  return canonical_dimensions() == other.canonical_dimensions();
}

bool operator==(const UnitExpression& a, const UnitExpression& b) {
  if (!a.same_dimensions(b)) return false;
  const double hi = std::max(std::abs(a.scale_to_canonical), std::abs(b.scale_to_canonical));
  return std::abs(a.scale_to_canonical - b.scale_to_canonical) <= 1e-12 * hi;
}

UnitExpression canonical_unit(ParameterKind kind) {
  return parse_unit(canonical_unit_symbol(kind));
}

std::string canonical_unit_symbol(ParameterKind kind) {
  switch (kind) {
    case ParameterKind::Cmax: return "mg/L";
    case ParameterKind::AUC: return "mg\xc2\xb7h/L";
    case ParameterKind::HalfLife:
    case ParameterKind::Tmax:
    case ParameterKind::MRT: return "h";
    case ParameterKind::CL: return "L/h/kg";
    case ParameterKind::Vd: return "L/kg";
    case ParameterKind::K_rate: return "h-1";
    case ParameterKind::Other: break;
  }
  throw std::runtime_error("no canonical unit for parameter kind 'Other'");
}

std::string unit_to_string(const UnitExpression& expr) {
  static const std::map<BaseDimension, std::string> symbols = {
      {BaseDimension::mass, "mg"},
      {BaseDimension::volume, "L"},
      {BaseDimension::time, "h"},
      {BaseDimension::amount, "mol"},
      {BaseDimension::body_mass, "kg"},
  };
  const auto dims = expr.canonical_dimensions();
  std::string out;
  for (const auto& [dim, exp] : dims) {
    if (exp <= 0) continue;
    if (!out.empty()) out += "\xc2\xb7";
    out += symbols.at(dim);
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  for (const auto& [dim, exp] : dims) {
    if (exp >= 0) continue;
    if (out.empty()) {
      // No numerator: render the first denominator with a negative exponent.
      out += symbols.at(dim) + std::to_string(exp);
      continue;
    }
    out += "/" + symbols.at(dim);
    if (exp < -1) out += "^" + std::to_string(-exp);
  }
  return out;
}

SiValue to_si(double value, const UnitExpression& unit, ParameterKind kind) {
  const UnitExpression target = canonical_unit(kind);
  if (!unit.same_dimensions(target)) {
    throw std::runtime_error("incompatible dimension: unit " + unit_to_string(unit) +
                             " cannot express " + to_string(kind) + " (" +
                             canonical_unit_symbol(kind) + ")");
  }
  return SiValue{value * unit.scale_to_canonical, canonical_unit_symbol(kind)};
}

std::string to_string(BaseDimension d) {
  switch (d) {
    case BaseDimension::mass: return "mass";
    case BaseDimension::volume: return "volume";
    case BaseDimension::time: return "time";
    case BaseDimension::amount: return "amount";
    case BaseDimension::body_mass: return "body_mass";
  }
  return "mass";
}

std::string to_string(ParameterKind k) {
  switch (k) {
    case ParameterKind::Cmax: return "Cmax";
    case ParameterKind::Tmax: return "Tmax";
    case ParameterKind::AUC: return "AUC";
    case ParameterKind::HalfLife: return "HalfLife";
    case ParameterKind::CL: return "CL";
    case ParameterKind::Vd: return "Vd";
    case ParameterKind::MRT: return "MRT";
    case ParameterKind::K_rate: return "K_rate";
    case ParameterKind::Other: return "Other";
  }
  return "Other";
}

}  // namespace pkadapt
