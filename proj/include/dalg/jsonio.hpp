#pragma once

#include <string>

#include "dalg/engine_common.hpp"
#include "dalg/engine_multi.hpp"

namespace dalg {

// Machine-readable result object:
//   status: "ok" | "not_found" | "error"
//   order:  integer (one independent variable) or array
//   degree, poly (ascii string), terms, options, elapsed_ms
std::string emit_json(const AdeResult& res);
std::string emit_json_not_found(const MultiOutcome& out, double elapsed_ms);
std::string emit_json_error(const std::string& message);

}  // namespace dalg
