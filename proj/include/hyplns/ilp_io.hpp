#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyplns/ilp.hpp"

namespace hyplns {

enum class FileFormat { Canonical, Mps };

FileFormat format_from_string(const std::string& name);

// Canonical structured-text format, version "hyplns-ilp/1". Write -> read is
// the identity on valid instances.
void write_canonical(const IlpInstance& instance, const std::string& path);
IlpInstance read_canonical(const std::string& path);

// MPS subset model: the instance plus any per-variable fixings encoded as
// equal bounds in the BOUNDS section.
struct MpsModel {
  IlpInstance instance;
  std::vector<std::optional<std::uint8_t>> fixed;
  std::string name;
};

// Fixed-format MPS writer (NAME/OBJSENSE/ROWS/COLUMNS/RHS/BOUNDS/ENDATA).
// All variables are marked integer with bounds [0,1]; entries of `fixed`
// become FX bounds. Column names are x<i>, row names r<j>.
void write_mps(const IlpInstance& instance, const std::string& path,
               const std::vector<std::optional<std::uint8_t>>& fixed = {},
               const std::string& name = "HYPLNS");

// Minimal reader for the subset above. Bounds outside {0,1} or non-integer
// columns raise UnsupportedDomainError.
MpsModel read_mps(const std::string& path);

IlpInstance read_instance(const std::string& path, FileFormat format);
void write_instance(const IlpInstance& instance, const std::string& path, FileFormat format);

}  // namespace hyplns
