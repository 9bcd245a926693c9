#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkadapt {

enum class BaseDimension { mass, volume, time, amount, body_mass };

enum class ParameterKind { Cmax, Tmax, AUC, HalfLife, CL, Vd, MRT, K_rate, Other };

// One parsed unit term before canonicalization.
struct UnitFactor {
  BaseDimension dimension;
  int si_prefix_power = 0;  // power of ten applied by the prefix
  int exponent = 1;         // signed, nonzero
};

// Parsed unit with its exact conversion factor to the canonical system
// (mg, L, h, mol, kg body mass).
struct UnitExpression {
  std::vector<UnitFactor> factors;
  double scale_to_canonical = 1.0;

  // Dimension signature: merged exponents keyed by dimension, sorted.
  std::map<BaseDimension, int> canonical_dimensions() const;
  bool same_dimensions(const UnitExpression& other) const;
};

bool operator==(const UnitExpression& a, const UnitExpression& b);

// Thrown on unrecognized unit text; carries the byte offset of the
// offending token.
class UnitParseError : public std::runtime_error {
 public:
  UnitParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar: unit := term (('/' | '·' | '*' | '.') term)*
//          term := prefix? base ('^'? int)?
// Bases: g, L, h, min, s, d (day), mol. Prefixes: k, m, µ (u), n.
// Each '/' negates the exponent of the term that follows it, so
// "mL/min/kg" reads mL · min^-1 · kg^-1. A gram-based term is body mass
// when it appears after the second '/' or is "kg" in a denominator.
UnitExpression parse_unit(const std::string& text);

// Canonical unit and exact scale for each tracked parameter kind.
UnitExpression canonical_unit(ParameterKind kind);
std::string canonical_unit_symbol(ParameterKind kind);

// Render an expression in canonical spellings (e.g. "mg·h/L").
std::string unit_to_string(const UnitExpression& expr);

// value expressed in the canonical unit of the parameter kind. Throws
// std::runtime_error("incompatible dimension ...") when the unit's
// dimension signature does not match the kind's.
struct SiValue {
  double value;
  std::string unit_symbol;
};
SiValue to_si(double value, const UnitExpression& unit, ParameterKind kind);

std::string to_string(BaseDimension d);
std::string to_string(ParameterKind k);

}  // namespace pkadapt
