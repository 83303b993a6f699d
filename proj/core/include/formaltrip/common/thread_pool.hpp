#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace formaltrip {

/// Fixed set of worker threads draining a FIFO task queue.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t width);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  void submit(std::function<void()> task);
  /// Blocks until the queue is empty and every worker is idle.
  void wait_idle();

 private:
  void work();

  std::vector<std::thread> workers_;
  std::deque<std::function<void()>> tasks_;
  std::mutex mutex_;
  std::condition_variable ready_;
  std::condition_variable idle_;
  std::size_t busy_ = 0;
  bool stopping_ = false;
};

/// Hands results to `emit` in index order however they complete.
template <class T>
class OrderedEmitter {
 public:
  explicit OrderedEmitter(std::function<void(T)> emit) : emit_(std::move(emit)) {}

  void put(std::size_t index, T value) {
    std::lock_guard lock(mutex_);
    pending_.emplace(index, std::move(value));
    for (auto it = pending_.find(next_); it != pending_.end(); it = pending_.find(next_)) {
      emit_(std::move(it->second));
      pending_.erase(it);
      ++next_;
    }
  }

 private:
  std::function<void(T)> emit_;
  std::mutex mutex_;
  std::map<std::size_t, T> pending_;
  std::size_t next_ = 0;
};

}  // namespace formaltrip
