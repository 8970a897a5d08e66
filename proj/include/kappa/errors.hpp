#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kappa {

// Bad caller input (out-of-range index, empty seed, malformed parameter).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (e.g. quotient by a non-normal
// subgroup, omega1 of a non-p-group).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refusal: the requested computation is above a configured cap.
struct CapExceeded : std::runtime_error {
  std::uint64_t value;
  std::uint64_t cap;
  CapExceeded(const std::string& what_kind, std::uint64_t value_, std::uint64_t cap_)
      : std::runtime_error(what_kind + ": " + std::to_string(value_) +
                           " exceeds cap " + std::to_string(cap_)),
        value(value_),
        cap(cap_) {}
};

// A constructor was given parameters that do not define the requested group.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Descriptor / corpus / Cayley-file syntax error with position info.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

}  // namespace kappa
