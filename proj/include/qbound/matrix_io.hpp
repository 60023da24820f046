#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qbound/errors.hpp"
#include "qbound/matcore.hpp"

namespace qbound {

/// Malformed or unreadable input file; the message names the file and the
/// offending line or field.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parses {"dim": d, "re": [[...]], "im": [[...]]} (row-major). "im" may be
/// omitted for real matrices. `source` labels diagnostics.
ComplexMatrix parse_matrix_json(std::string_view text, std::string_view source);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// Serializes doubles in shortest round-trip form, so parsing the output
/// reproduces the matrix bit for bit.
std::string matrix_to_json(const ComplexMatrix& m);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace qbound
