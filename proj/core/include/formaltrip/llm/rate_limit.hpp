#pragma once

#include <chrono>
#include <mutex>

namespace formaltrip::llm {

/// Token bucket refilled at `per_minute` tokens per minute, holding at most `burst`.
class TokenBucket {
 public:
  explicit TokenBucket(double per_minute, double burst = 1.0);

  /// Blocks until a token is available and takes it.
  void acquire();
  /// Takes a token if one is available now.
  bool try_acquire();

 private:
  using Clock = std::chrono::steady_clock;

  void refill(Clock::time_point now);

  double rate_per_second_;
  double burst_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mutex_;
};

}  // namespace formaltrip::llm
