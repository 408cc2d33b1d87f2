#pragma once

#include "lsl/functionals.hpp"

#include <json.hpp>

#include <iosfwd>

namespace lsl {

/// Parses {"kind":"sphere","n":2,"r":1.5} | {"kind":"cylinder","k":1,"n":3,
/// "r0":1.0,"half_length":10.0} | {"kind":"curve","points":[[x,y],...]}
/// (plus "plane" and "profile" for the CLI).
SurfaceDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json descriptor_to_json(const SurfaceDescriptor& desc);

/// Wraps nlohmann parsing with a line/column position on failure.
struct JsonParseError : std::runtime_error {
  int line = 0, column = 0;
  JsonParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};
nlohmann::json parse_json_text(const std::string& text);

nlohmann::json identity_report_to_json(const IdentityReport& report);

/// Floating-point formatting with 17 significant digits (golden-file stable).
std::string format_scalar(Scalar v);

/// One CSV row; scalars printed via format_scalar.
void write_csv_row(std::ostream& os, std::span<const std::string> cells);

}  // namespace lsl
