#pragma once
#include <stdexcept>
#include <string>

namespace repeatcode {

// Configuration that can never produce a working codec: bad parameters,
// wiring mismatches, infeasible searches. The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact computation would exceed the configured enumeration budget.
// No partial result is produced when this is thrown.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace repeatcode
