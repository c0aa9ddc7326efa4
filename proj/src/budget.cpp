#include "prolim/budget.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace prolim::budget {
namespace {

std::uint64_t read_env() {
  const char* raw = std::getenv("PROLIM_OP_BUDGET");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    return 0;
  }
}

std::atomic<std::uint64_t>& limit_slot() {
  static std::atomic<std::uint64_t> value{read_env()};
  return value;
}

std::atomic<std::uint64_t> counter{0};

}  // namespace

std::uint64_t limit() { return limit_slot().load(std::memory_order_relaxed); }
std::uint64_t used() { return counter.load(std::memory_order_relaxed); }
void set_limit(std::uint64_t n) { limit_slot().store(n, std::memory_order_relaxed); }
void reset() { counter.store(0, std::memory_order_relaxed); }

void charge(std::uint64_t n) {
  const std::uint64_t total = counter.fetch_add(n, std::memory_order_relaxed) + n;
  const std::uint64_t cap = limit();
  if (cap != 0 && total > cap) {
    throw BudgetExceeded("big-integer operation budget exhausted: " + std::to_string(total) +
                         " operations used, limit " + std::to_string(cap) +
                         " (set PROLIM_OP_BUDGET to raise it)");
  }
}

}  // namespace prolim::budget
