#pragma once

// Error taxonomy and the global memory budget for table-building operations.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested table or enumeration exceeds the configured memory budget
// or a hard enumeration cap. Never silently truncated.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

// An argument violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Growth fitting with fewer than three points.
class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

// A quadrature grid or lattice is too coarse for the requested computation.
class UnderResolved : public Error {
 public:
  using Error::Error;
};

// A search over an integer range found no admissible value.
class EmptyRange : public Error {
 public:
  using Error::Error;
};

// An internal numerical consistency check failed (e.g. a sum that must be
// real carries a large imaginary residual).
class NumericalCheckFailed : public Error {
 public:
  using Error::Error;
};

// Byte budget for in-memory counting tables. Default 2 GiB, overridable
// via the VLAB_BUDGET_BYTES environment variable or per call.
struct MemoryBudget {
  std::uint64_t bytes = std::uint64_t{2} << 30;

  static MemoryBudget from_env();
};

// Worker thread count: VLAB_THREADS if set, hardware concurrency otherwise.
int thread_count();

}  // namespace vlab
