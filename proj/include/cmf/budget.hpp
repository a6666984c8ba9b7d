#ifndef CMF_BUDGET_HPP
#define CMF_BUDGET_HPP

#include <chrono>

#include "cmf/errors.hpp"

namespace cmf {

// Wall-clock budget for long computations. A BudgetScope installs a
// deadline for the current thread; the inner loops of the engines call
// check_budget() and unwind with TimeBudgetExceeded once it has passed.
class BudgetScope {
 public:
  explicit BudgetScope(double seconds);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  bool had_prev_;
  std::chrono::steady_clock::time_point prev_;
};

void check_budget();
bool budget_active();
double budget_remaining_seconds();

}  // namespace cmf

#endif  // CMF_BUDGET_HPP
