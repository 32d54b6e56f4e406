#pragma once

#include <stdexcept>
#include <string>

namespace dimer {

// An input or intermediate object violates a mathematical invariant.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller asked for something the operation does not accept (bad id, wrong precondition).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dimer
