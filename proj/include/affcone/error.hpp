#pragma once

#include <stdexcept>
#include <string>

namespace affcone {

/// Malformed input or a violated precondition (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured work budget ran out before the computation finished
/// (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace affcone
