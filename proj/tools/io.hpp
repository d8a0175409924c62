#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "phaseflow/field.hpp"

namespace phaseflow::io {

/// CSV with a header row, '.' decimal separator, scientific notation with
/// 17 significant digits. Optionally one leading "# generated ..." comment.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, bool timestamp_header);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& cells);
  void close();

 private:
  std::string buffer_;
  std::filesystem::path path_;
  bool closed_ = false;
};

std::string format_g17(double v);

/// Raw binary grid dump. Layout: 8-byte magic "PHFLD\0\0\1", little-endian
/// u32 D, u32 per-axis counts, f64 per-axis extents (min, max), then row-major
/// complex pairs (f64 re, f64 im). Phase fields carry 2D axes, position
/// wavefunctions D axes; readers disambiguate by total file length.
void write_field(const std::filesystem::path& path, const PhaseField& field);
void write_field(const std::filesystem::path& path, const PositionWavefunction& psi);

struct LoadedField {
  bool is_phase = false;
  PhaseField phase;
  PositionWavefunction position;
};

LoadedField read_field(const std::filesystem::path& path);

}  // namespace phaseflow::io
