#pragma once

#include <cstdint>
#include <stdexcept>

namespace prolim {

/// Raised when the process-wide count of elementary big-integer matrix
/// operations passes the limit in PROLIM_OP_BUDGET.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace budget {

/// Limit read from PROLIM_OP_BUDGET on first use; 0 means unlimited.
std::uint64_t limit();
std::uint64_t used();
/// Overrides the environment value (0 disables the guard).
void set_limit(std::uint64_t n);
void reset();
/// Records `n` operations; throws BudgetExceeded past the limit.
void charge(std::uint64_t n = 1);

}  // namespace budget
}  // namespace prolim
