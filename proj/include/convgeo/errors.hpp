// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace convgeo {

/// Error categories surfaced through the C API as status codes.
enum class Errc {
  invalid_argument,
  parse,
  ground_too_large,
  search_cap,
  dimension_cap,
  tolerance_inconclusive,
  degenerate_identical,
  infinite_contact,
  no_regular_direction,
  line_property_violated,
  alpha_too_large,
  non_convex_trace,
  shape_containment_failed,
  empty_subset,
  invalid_scale,
  oracle_violation,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace convgeo
