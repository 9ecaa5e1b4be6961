#pragma once

#include <stdexcept>
#include <string>

namespace latcount {

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point has a zero block, so the (u, s, xi) coordinates are undefined.
class ZeroBlockError : public std::domain_error {
 public:
  explicit ZeroBlockError(int block)
      : std::domain_error("block " + std::to_string(block) + " of the point is zero"),
        block_(block) {}
  int block() const noexcept { return block_; }

 private:
  int block_;
};

}  // namespace latcount
