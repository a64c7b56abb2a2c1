#pragma once

#include <stdexcept>
#include <string>

namespace gvtk {

// Malformed input or a violated operation precondition. The CLI maps these
// to exit status 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A structural invariant failed on data that passed validation (e.g. a
// supplied differential does not square to zero).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gvtk
