#include "cmf/budget.hpp"

#include <string>

namespace cmf {

namespace {
thread_local bool t_active = false;
thread_local std::chrono::steady_clock::time_point t_deadline;
thread_local unsigned t_tick = 0;
}  // namespace

BudgetScope::BudgetScope(double seconds) : had_prev_(t_active), prev_(t_deadline) {
  auto d = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(seconds));
  // Nested scopes can only tighten the deadline.
  if (!t_active || d < t_deadline) t_deadline = d;
  t_active = true;
}

BudgetScope::~BudgetScope() {
  t_active = had_prev_;
  t_deadline = prev_;
}

void check_budget() {
  if (!t_active) return;
  if ((++t_tick & 63) != 0) return;
  if (std::chrono::steady_clock::now() > t_deadline)
    throw TimeBudgetExceeded("wall-clock budget exhausted");
}

bool budget_active() { return t_active; }

double budget_remaining_seconds() {
  if (!t_active) return 1e18;
  return std::chrono::duration<double>(t_deadline - std::chrono::steady_clock::now())
      .count();
}

}  // namespace cmf
