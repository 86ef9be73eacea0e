#pragma once

#include <atomic>
#include <cstddef>
#include <future>
#include <memory>
#include <vector>

namespace tableau2d::detail {

struct CancelToken {
  const CancelToken* parent = nullptr;
  std::atomic<bool> flag{false};

  bool cancelled() const { return flag.load(std::memory_order_relaxed) || (parent && parent->cancelled()); }
};

class JobBudget {
 public:
  explicit JobBudget(int jobs) : available_(jobs > 1 ? jobs - 1 : 0) {}
  bool try_acquire() {
    int a = available_.load();
    while (a > 0) {
      if (available_.compare_exchange_weak(a, a - 1)) return true;
    }
    return false;
  }
  void release() { available_.fetch_add(1); }

 private:
  std::atomic<int> available_;
};

// Runs the children of a split in order and stops after the first outcome for
// which `stops` holds. Extra children may run on other threads when the
// budget allows; the returned prefix is the same as in a sequential run.
template <class Outcome, class Fn, class Stop>
std::vector<Outcome> run_children(std::size_t k, JobBudget& budget, const CancelToken* parent, Fn&& fn,
                                  Stop&& stops) {
  std::vector<Outcome> out;
  std::vector<std::unique_ptr<CancelToken>> tokens;
  std::vector<std::future<Outcome>> futures(k);
  for (std::size_t i = 0; i < k; ++i) {
    tokens.push_back(std::make_unique<CancelToken>());
    tokens.back()->parent = parent;
  }
  for (std::size_t i = 1; i < k; ++i) {
    if (!budget.try_acquire()) break;
    futures[i] = std::async(std::launch::async, [&, i] {
      Outcome r = fn(i, tokens[i].get());
      budget.release();
      return r;
    });
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(futures[i].valid() ? futures[i].get() : fn(i, tokens[i].get()));
    if (stops(out.back())) {
      for (std::size_t j = i + 1; j < k; ++j) tokens[j]->flag = true;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (futures[j].valid()) futures[j].wait();
      }
      break;
    }
  }
  return out;
}

}  // namespace tableau2d::detail
