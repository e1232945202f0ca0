#include "slrlab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace slrlab {

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n1 = static_cast<double>(count_);
  const double n2 = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double n = n1 + n2;
  mean_ += delta * n2 / n;
  m2_ += other.m2_ + delta * delta * n1 * n2 / n;
  count_ += other.count_;
}

namespace {

std::atomic<unsigned> g_threads{0};

unsigned default_threads() {
  if (const char* env = std::getenv("SLRLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) {
    n = default_threads();
    g_threads.store(n);
  }
  return n;
}

void set_thread_count(unsigned n) { g_threads.store(n); }

void for_each_block(std::size_t total, std::size_t block, const RandomStream& root,
                    const std::function<void(std::size_t, std::size_t, std::size_t,
                                             RandomStream&)>& body) {
  if (total == 0) return;
  block = std::max<std::size_t>(block, 1);
  const std::size_t blocks = (total + block - 1) / block;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), blocks));

  auto run_block = [&](std::size_t b) {
    RandomStream stream = root.child(b);
    const std::size_t begin = b * block;
    body(b, begin, std::min(total, begin + block), stream);
  };

  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks) return;
        try {
          run_block(b);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(blocks);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

MomentEstimate monte_carlo_mean(std::size_t samples, const RandomStream& root,
                                const std::function<double(RandomStream&)>& draw) {
  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<RunningMoments> partial(blocks);
  for_each_block(samples, kMonteCarloBlock, root,
                 [&](std::size_t b, std::size_t begin, std::size_t end, RandomStream& rng) {
                   RunningMoments acc;
                   for (std::size_t i = begin; i < end; ++i) acc.add(draw(rng));
                   partial[b] = acc;
                 });
  RunningMoments total;
  for (const auto& p : partial) total.merge(p);
  return total.estimate(root.master_seed());
}

}  // namespace slrlab
