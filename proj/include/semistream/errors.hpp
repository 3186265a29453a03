#pragma once

#include <stdexcept>
#include <string>

namespace semistream {

// Malformed user input: files, flags, parameter ranges. CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal guarantee; indicates a bug, not bad input. CLI exit code 3.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semistream
