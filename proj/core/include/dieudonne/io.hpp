#pragma once

#include <string>
#include <vector>

#include "dieudonne/isocrystal.hpp"

namespace dieudonne {

/// Base-p digits of every power-basis coefficient of a (reduced) element, little-endian,
/// trailing zeros dropped. The element is read modulo p^prec.
std::vector<std::vector<int>> element_digits(const WittRing& ring, const Elem& a, int prec);
/// Inverse of element_digits; digits at positions >= N are dropped. FormatError on a
/// digit outside [0, p) or more than m coefficients.
Elem element_from_digits(const WittRing& ring, const std::vector<std::vector<int>>& digits);

struct LoadOptions {
  /// Absolute precision to read the module at; 0 keeps the "N" of the document.
  int precision = 0;
};

/// Parses a module document (see docs/formats.md). FormatError on malformed input,
/// ConwayError for unsupported (p, m), ArgumentError when the basis is not F, V-stable.
DieudonneModule load_module(const std::string& json_text, const LoadOptions& options = {});
DieudonneModule load_module_file(const std::string& path, const LoadOptions& options = {});

struct SaveOptions {
  int indent = 2;
  /// Write entries whose coefficients have centered lifts below 2^62 as signed integers.
  /// Such a file reads the same at any precision, so use it for modules that are exact
  /// (e.g. built from Teichmüller data), not for values only known modulo p^N.
  bool small_integers = false;
};

/// Writes the module; load_module(save_module(M)) == M for either entry form.
std::string save_module(const DieudonneModule& M, const SaveOptions& options = {});

}  // namespace dieudonne
