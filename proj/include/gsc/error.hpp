#pragma once

#include <stdexcept>
#include <string>

namespace gsc {

// Malformed input: bad files, unknown vertices, schema violations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input is well-formed but an operation's precondition does not hold
// (e.g. the word problem on a presentation that is not C'(1/6)).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size or search budget was exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gsc
