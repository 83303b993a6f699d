#include "formaltrip/llm/rate_limit.hpp"

#include <algorithm>
#include <thread>

#include "formaltrip/common/error.hpp"

namespace formaltrip::llm {

TokenBucket::TokenBucket(double per_minute, double burst)
    : rate_per_second_(per_minute / 60.0), burst_(burst), tokens_(burst), last_(Clock::now()) {
  if (!(per_minute > 0.0)) throw ConfigError("rate limit must be positive");
  if (!(burst >= 1.0)) throw ConfigError("token bucket burst must be at least 1");
}

void TokenBucket::refill(Clock::time_point now) {
  const double elapsed = std::chrono::duration<double>(now - last_).count();
  tokens_ = std::min(burst_, tokens_ + elapsed * rate_per_second_);
  last_ = now;
}

bool TokenBucket::try_acquire() {
  std::lock_guard lock(mutex_);
  refill(Clock::now());
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

void TokenBucket::acquire() {
  while (true) {
    double wait = 0.0;
    {
      std::lock_guard lock(mutex_);
      refill(Clock::now());
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = (1.0 - tokens_) / rate_per_second_;
    }
    std::this_thread::sleep_for(std::chrono::duration<double>(wait));
  }
}

}  // namespace formaltrip::llm
