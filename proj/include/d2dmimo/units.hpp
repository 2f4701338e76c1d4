// SPDX-License-Identifier: Apache-2.0
//
// Conversions between the presentation units (dBm, dB, km^-2) and the SI
// units used everywhere inside the library.
#pragma once

#include <cmath>
#include <string>

#include "d2dmimo/errors.hpp"

namespace d2dmimo::units {

inline constexpr double kSquareMetresPerSquareKm = 1.0e6;

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watt_to_dbm(double watt) {
  if (!(watt > 0.0)) {
    throw DomainError("power must be > 0 W for dBm conversion, got " + std::to_string(watt));
  }
  return 10.0 * std::log10(watt) + 30.0;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) {
  if (!(linear > 0.0)) {
    throw DomainError("ratio must be > 0 for dB conversion, got " + std::to_string(linear));
  }
  return 10.0 * std::log10(linear);
}

// densities
inline constexpr double per_km2_to_per_m2(double v) { return v / kSquareMetresPerSquareKm; }
inline constexpr double per_m2_to_per_km2(double v) { return v * kSquareMetresPerSquareKm; }

// area spectral efficiency, bits/s/Hz per area
inline constexpr double ase_per_km2_to_per_m2(double v) { return v / kSquareMetresPerSquareKm; }
inline constexpr double ase_per_m2_to_per_km2(double v) { return v * kSquareMetresPerSquareKm; }

}  // namespace d2dmimo::units
