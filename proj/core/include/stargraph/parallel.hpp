// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stargraph
{

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index writes only its
// own output slot, so results are independent of scheduling. The first exception thrown
// by any task is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn &&fn)
{
  const auto workers =
      static_cast<std::size_t>(std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(count, 1)));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
    {
      fn(i);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
    {
      try
      {
        fn(i);
      }
      catch (...)
      {
        std::lock_guard lock(failure_mutex);
        if (!failure)
        {
          failure = std::current_exception();
        }
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back(worker);
  }
  pool.clear();
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

}  // namespace stargraph
