#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>

#include "ringlab/errors.hpp"

namespace ringlab {

/// Wall-clock budget shared by the operations of one command or sweep.
/// A zero budget means unlimited. check() is cheap enough to call from
/// inner loops every few thousand iterations.
class Budget {
 public:
  Budget() = default;

  explicit Budget(std::uint64_t budget_ms) {
    if (budget_ms > 0) {
      deadline_ = Clock::now() + std::chrono::milliseconds(budget_ms);
      limited_ = true;
    }
  }

  bool exhausted() const {
    return limited_ && Clock::now() > deadline_;
  }

  void check(const char* what) const {
    if (exhausted()) throw BudgetError(what);
  }

  static std::shared_ptr<const Budget> unlimited() {
    static auto b = std::make_shared<const Budget>();
    return b;
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point deadline_{};
  bool limited_ = false;
};

}  // namespace ringlab
