#pragma once

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "vpth/errors.hpp"

namespace vpth::units {

// Natural atomic units: hbar = e^2 = k_B = c = M = 1.  The conversion
// constants are quoted to four significant digits; no higher precision is
// claimed.
struct UnitConstants {
  double energy_unit_eV = 27.21;        // 2 Ryd
  double temperature_unit_K = 3.16e5;
  double length_unit_cm = 0.53e-8;      // Bohr radius
  double field_unit_T = 2.35e5;
  double field_unit_G = 2.35e9;         // field_unit_T * 1e4
};

inline constexpr UnitConstants kUnits{};

enum class Dimension { energy, temperature, length, field };

struct PhysicalQuantity {
  double value = 0.0;
  std::string_view unit;  // canonical unit: eV, K, cm, T
};

inline double conversion_constant(Dimension kind) {
  switch (kind) {
    case Dimension::energy: return kUnits.energy_unit_eV;
    case Dimension::temperature: return kUnits.temperature_unit_K;
    case Dimension::length: return kUnits.length_unit_cm;
    case Dimension::field: return kUnits.field_unit_T;
  }
  throw DomainError("unknown unit dimension");
}

inline std::string_view canonical_unit(Dimension kind) {
  switch (kind) {
    case Dimension::energy: return "eV";
    case Dimension::temperature: return "K";
    case Dimension::length: return "cm";
    case Dimension::field: return "T";
  }
  throw DomainError("unknown unit dimension");
}

inline PhysicalQuantity natural_to_physical(double value, Dimension kind) {
  return {value * conversion_constant(kind), canonical_unit(kind)};
}

inline double physical_to_natural(double value, Dimension kind) {
  if (!std::isfinite(value)) throw DomainError("physical_to_natural: value not finite");
  return value / conversion_constant(kind);
}

inline Dimension dimension_from_name(std::string_view name) {
  if (name == "energy") return Dimension::energy;
  if (name == "temperature") return Dimension::temperature;
  if (name == "length") return Dimension::length;
  if (name == "field") return Dimension::field;
  throw DomainError("unknown unit dimension '" + std::string(name) + "'");
}

struct ParsedQuantity {
  double physical_value = 0.0;
  double natural_value = 0.0;
  Dimension kind = Dimension::energy;
  std::string unit;
};

// Parses "2.35e14G", "27.21eV", "3.16e5K", "0.53e-8cm", "1e5T".
// Gauss values are converted through field_unit_G.
inline ParsedQuantity parse_quantity(std::string_view text) {
  std::size_t split = text.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(text[split - 1])))
    --split;
  // keep a trailing exponent letter with the number ("1e5" has no suffix)
  const std::string_view suffix = text.substr(split);
  const std::string number(text.substr(0, split));
  if (suffix.empty()) throw ParseError("missing unit suffix in '" + std::string(text) + "'");
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(number, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad numeric value in '" + std::string(text) + "'");
  }
  if (pos != number.size()) throw ParseError("bad numeric value in '" + std::string(text) + "'");

  ParsedQuantity out;
  out.physical_value = v;
  out.unit = std::string(suffix);
  if (suffix == "eV") {
    out.kind = Dimension::energy;
    out.natural_value = v / kUnits.energy_unit_eV;
  } else if (suffix == "K") {
    out.kind = Dimension::temperature;
    out.natural_value = v / kUnits.temperature_unit_K;
  } else if (suffix == "cm") {
    out.kind = Dimension::length;
    out.natural_value = v / kUnits.length_unit_cm;
  } else if (suffix == "T") {
    out.kind = Dimension::field;
    out.natural_value = v / kUnits.field_unit_T;
  } else if (suffix == "G") {
    out.kind = Dimension::field;
    out.natural_value = v / kUnits.field_unit_G;
  } else {
    throw ParseError("unknown unit suffix '" + std::string(suffix) + "'");
  }
  return out;
}

} // namespace vpth::units
