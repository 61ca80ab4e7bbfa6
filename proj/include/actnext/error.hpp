#pragma once

#include <stdexcept>
#include <string>

namespace actnext {

// Invalid input from a caller or the command line: bad flags, malformed
// files, violated preconditions. The CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transient failure (e.g. network). A retry of the same operation may
// succeed; partial progress is preserved by the caller where documented.
class RetriableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace actnext
