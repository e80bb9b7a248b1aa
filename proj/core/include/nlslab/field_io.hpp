#pragma once

#include <filesystem>
#include <string>

#include "nlslab/field.hpp"

namespace nlslab {

/// Field dump: `<base>.json` sidecar
///   {n1, n2, n3, L1, L2, L3, dtype: "f64" | "c128", order: "(i1*n2+i2)*n3+i3"}
/// plus `<base>.bin`, a raw little-endian array of 8-byte reals (complex
/// values as interleaved re/im pairs). Planar grids are written with n3 = 1.
struct FieldFiles {
  std::filesystem::path header;
  std::filesystem::path data;
};

FieldFiles field_files(const std::filesystem::path& base);

FieldFiles write_field(const RealField& u, const std::filesystem::path& base);
FieldFiles write_field(const ComplexField& u, const std::filesystem::path& base);

/// Reads a dump written with dtype "f64". Throws std::runtime_error on a
/// malformed header, wrong dtype, or truncated data file.
RealField read_real_field(const std::filesystem::path& base);
/// Reads a "c128" dump; an "f64" dump is promoted to complex.
ComplexField read_complex_field(const std::filesystem::path& base);

}  // namespace nlslab
